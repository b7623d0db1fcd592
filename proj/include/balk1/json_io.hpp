#pragma once

// JSON and CSV forms of the library's inputs and reports. Complex matrices are stored as
// {"re": [[...]], "im": [[...]]}, row major; a missing "im" means a real matrix. Readers
// throw IoError on malformed input.

#include "balk1/balanced.hpp"
#include "balk1/loops.hpp"
#include "balk1/opmodel.hpp"
#include "balk1/relindex.hpp"
#include "balk1/suite.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace balk1::io {

using nlohmann::json;
using numkern::CMatrix;

json to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

/// {"dim", "a", "b", "tol"}
json to_json(const balanced::BalancedPair& p);
balanced::BalancedPair pair_from_json(const json& j);

/// {"grid", "dim", "param": "glued-0-pi/2", "samples"}
json to_json(const loops::MatrixLoop& loop);
loops::MatrixLoop loop_from_json(const json& j);
/// {"sigma1", "sigma2", "tol"}
json to_json(const loops::LoopPair& lp);
loops::LoopPair loop_pair_from_json(const json& j);
/// {"plus", "minus"}; a bare loop pair is accepted as the plus component with the
/// constant pair (1, 1) on the minus side.
json to_json(const loops::SymbolPair& sp);
loops::SymbolPair symbol_pair_from_json(const json& j);

/// {"modes", "dim", "matrix"} with the dense matrix on modes -N..N.
json to_json(const opmodel::TruncOp& op);
opmodel::TruncOp trunc_op_from_json(const json& j);

json to_json(const starpoly::MembershipCertificate& cert, const starpoly::RelationIdeal& ideal);
json to_json(const starpoly::SuiteReport& report, const starpoly::Suite& suite);
json to_json(const balanced::BalanceReport& r);
json to_json(const balanced::PathReport& r);
json to_json(const opmodel::KBalanceReport& r);
json to_json(const opmodel::BlockReport& r);
json to_json(const relindex::IndexReport& r);

/// Columns p, q, analytic, topological, pass, max residue, error.
std::string sweep_csv(const std::vector<relindex::SweepRow>& rows);
/// Columns t, |det c|, arg det c for c = 1 + sigma2*(sigma1 - sigma2).
std::string det_c_csv(const loops::LoopPair& lp);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace balk1::io
