#include "balk1/suite.hpp"

#include "default_suite_data.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

namespace balk1::starpoly {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

RelationIdeal ideal_from(const std::string& name, const Definitions& defs) {
    if (name == "rel1") return rel1();
    if (name == "rel2") return rel2();
    if (name == "none" || name.empty()) return empty_ideal();
    RelationIdeal custom{"custom", {}, {circle_relation()}};
    std::stringstream ss(name);
    std::string piece;
    while (std::getline(ss, piece, ';')) {
        piece = trim(piece);
        if (!piece.empty()) custom.generators.push_back(parse(piece, defs));
    }
    return custom;
}

struct Stanza {
    std::string name;
    std::size_t line = 0;
    std::string target;
    std::string ideal = "none";
    std::optional<int> bound;
    std::size_t target_line = 0;
};

}  // namespace

Suite parse_suite(std::string_view text) {
    Suite suite;
    std::vector<Stanza> stanzas;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    auto fail = [&lineno](const std::string& msg) -> ParseError { return ParseError("suite: " + msg + " (line " + std::to_string(lineno) + ")", lineno); };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw fail("unterminated stanza header");
            stanzas.push_back({trim(std::string_view(line).substr(1, line.size() - 2)), lineno, {}, "none", {}, 0});
            if (stanzas.back().name.empty()) throw fail("empty stanza name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw fail("expected key = value");
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.rfind("let ", 0) == 0) {
            if (!stanzas.empty()) throw fail("definitions must precede the first stanza");
            std::string name = trim(std::string_view(key).substr(4));
            if (name.empty() || name == "a" || name == "b" || name == "s" || name == "c" || name == "i")
                throw fail("'" + name + "' cannot be redefined");
            try {
                suite.definitions[name] = parse_matrix(value, suite.definitions);
            } catch (const ParseError& e) {
                throw fail(e.what());
            }
            continue;
        }
        if (stanzas.empty()) throw fail("key outside a stanza");
        Stanza& st = stanzas.back();
        if (key == "target") {
            st.target = value;
            st.target_line = lineno;
        } else if (key == "ideal") {
            st.ideal = value;
        } else if (key == "bound") {
            int b = 0;
            const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), b);
            if (ec != std::errc() || end != value.data() + value.size() || b < 0)
                throw fail("bound must be a non-negative integer");
            st.bound = b;
        } else {
            throw fail("unknown key '" + key + "'");
        }
    }

    for (const Stanza& st : stanzas) {
        lineno = st.line;
        if (st.target.empty()) throw fail("stanza '" + st.name + "' has no target");
        lineno = st.target_line;
        PolyMatrix m;
        RelationIdeal ideal;
        try {
            m = parse_matrix(st.target, suite.definitions);
            ideal = ideal_from(st.ideal, suite.definitions);
        } catch (const ParseError& e) {
            throw fail("in stanza '" + st.name + "': " + e.what());
        }
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j) {
                SuiteEntry e;
                e.name = m.is_scalar() ? st.name
                                       : st.name + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
                e.expression = st.target;
                e.target = m(i, j);
                e.ideal = ideal;
                e.degree_bound = st.bound.value_or(2 + std::max(0, e.target.degree()));
                suite.entries.push_back(std::move(e));
            }
        }
    }
    return suite;
}

Suite load_suite(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open suite file " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_suite(ss.str());
}

std::string_view default_suite_text() { return kDefaultSuiteText; }

bool SuiteReport::all_certified() const {
    for (const auto& r : results)
        if (!r.certified || !r.replay_ok) return false;
    return true;
}

SuiteReport verify_identity_suite(const Suite& suite, const MembershipOptions& opts) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    SuiteReport report;
    report.results.resize(suite.entries.size());
    for (std::size_t k = 0; k < suite.entries.size(); ++k) {
        const SuiteEntry& e = suite.entries[k];
        SuiteResult& r = report.results[k];
        const auto t0 = clock::now();
        r.name = e.name;
        r.ideal = e.ideal.name;
        r.degree_bound = e.degree_bound;
        try {
            r.certificate = ideal_member(e.target, e.ideal, e.degree_bound, opts);
        } catch (const Error& ex) {
            r.error = ex.what();
        }
        r.certified = r.certificate.has_value();
        r.replay_ok = r.certified && replay(*r.certificate, e.ideal) ==
                                         reduce_central(e.target, e.ideal.central_relations);
        r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    }
    report.seconds = std::chrono::duration<double>(clock::now() - start).count();
    return report;
}

}  // namespace balk1::starpoly
