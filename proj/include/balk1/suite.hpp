#pragma once

// Plain-text identity suites:
//
//   # comment
//   let w = 1 + b*(a - b)
//   [unitary]
//   target = w* w - 1
//   ideal  = rel1            (rel1 | rel2 | none | p1; p2; ...)
//   bound  = 8               (optional, default 2 + deg(target))
//
// A matrix-valued target expands into one identity per entry, named name[i,j].

#include "balk1/starpoly.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace balk1::starpoly {

struct SuiteEntry {
    std::string name;
    std::string expression;
    StarPoly target;
    RelationIdeal ideal;
    int degree_bound = 0;
};

struct Suite {
    Definitions definitions;
    std::vector<SuiteEntry> entries;
};

/// Errors carry the 1-based line number in ParseError::position.
Suite parse_suite(std::string_view text);
Suite load_suite(const std::filesystem::path& path);
/// The built-in suite (data/default_suite.txt, compiled in).
std::string_view default_suite_text();

struct SuiteResult {
    std::string name;
    std::string ideal;
    int degree_bound = 0;
    bool certified = false;
    bool replay_ok = false;
    std::optional<MembershipCertificate> certificate;
    std::string error;  // set when ideal_member threw
    double seconds = 0;
};

struct SuiteReport {
    std::vector<SuiteResult> results;
    double seconds = 0;
    bool all_certified() const;
};

SuiteReport verify_identity_suite(const Suite& suite, const MembershipOptions& opts = {});

}  // namespace balk1::starpoly
