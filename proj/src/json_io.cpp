#include "balk1/json_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace balk1::io {

using numkern::Complex;

namespace {

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw IoError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw IoError(std::string("field \"") + key + "\": " + e.what());
    }
}

const json& sub(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw IoError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

json named(const std::vector<opmodel::NamedValue>& v) {
    json o = json::object();
    for (const auto& nv : v) o[nv.name] = nv.value;
    return o;
}

}  // namespace

json to_json(const CMatrix& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json rr = json::array(), ri = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ri.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    return {{"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j) {
    const auto re = field<std::vector<std::vector<double>>>(j, "re");
    const auto im = j.contains("im") ? field<std::vector<std::vector<double>>>(j, "im")
                                     : std::vector<std::vector<double>>(re.size(), std::vector<double>(
                                                                                       re.empty() ? 0 : re[0].size()));
    if (re.size() != im.size()) throw IoError("matrix: re and im differ in shape");
    const auto rows = static_cast<Eigen::Index>(re.size());
    const auto cols = rows ? static_cast<Eigen::Index>(re[0].size()) : 0;
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& a = re[static_cast<std::size_t>(r)];
        const auto& b = im[static_cast<std::size_t>(r)];
        if (static_cast<Eigen::Index>(a.size()) != cols || static_cast<Eigen::Index>(b.size()) != cols)
            throw IoError("matrix: ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = Complex(a[static_cast<std::size_t>(c)], b[static_cast<std::size_t>(c)]);
    }
    return m;
}

json to_json(const balanced::BalancedPair& p) {
    return {{"dim", p.a.rows()}, {"a", to_json(p.a)}, {"b", to_json(p.b)}, {"tol", p.tol}};
}

balanced::BalancedPair pair_from_json(const json& j) {
    balanced::BalancedPair p;
    p.a = matrix_from_json(sub(j, "a"));
    p.b = matrix_from_json(sub(j, "b"));
    p.tol = j.contains("tol") ? field<double>(j, "tol") : 1e-10;
    if (p.a.rows() != p.a.cols() || p.a.rows() != p.b.rows() || p.b.rows() != p.b.cols())
        throw IoError("pair: a and b must be square of one size");
    if (j.contains("dim") && field<long>(j, "dim") != p.a.rows()) throw IoError("pair: dim does not match a");
    if (!(p.tol > 0)) throw IoError("pair: tol must be positive");
    return p;
}

json to_json(const loops::MatrixLoop& loop) {
    json s = json::array();
    for (const auto& m : loop.samples) s.push_back(to_json(m));
    return {{"grid", loop.grid}, {"dim", loop.dim}, {"param", "glued-0-pi/2"}, {"samples", s}};
}

loops::MatrixLoop loop_from_json(const json& j) {
    loops::MatrixLoop loop;
    loop.grid = field<int>(j, "grid");
    if (j.contains("param") && field<std::string>(j, "param") != "glued-0-pi/2")
        throw IoError("loop: unsupported parameterization \"" + field<std::string>(j, "param") + "\"");
    const json& s = sub(j, "samples");
    if (!s.is_array() || static_cast<int>(s.size()) != loop.grid) throw IoError("loop: expected grid samples");
    for (const auto& m : s) loop.samples.push_back(matrix_from_json(m));
    if (loop.samples.empty()) throw IoError("loop: no samples");
    loop.dim = loop.samples.front().rows();
    for (const auto& m : loop.samples)
        if (m.rows() != loop.dim || m.cols() != loop.dim) throw IoError("loop: samples must be square of one size");
    return loop;
}

json to_json(const loops::LoopPair& lp) {
    return {{"sigma1", to_json(lp.sigma1)}, {"sigma2", to_json(lp.sigma2)}, {"tol", lp.tol}};
}

loops::LoopPair loop_pair_from_json(const json& j) {
    loops::LoopPair lp;
    lp.sigma1 = loop_from_json(sub(j, "sigma1"));
    lp.sigma2 = loop_from_json(sub(j, "sigma2"));
    lp.tol = j.contains("tol") ? field<double>(j, "tol") : 1e-10;
    if (lp.sigma1.grid != lp.sigma2.grid || lp.sigma1.dim != lp.sigma2.dim)
        throw IoError("loop pair: components differ in grid or dimension");
    return lp;
}

json to_json(const loops::SymbolPair& sp) { return {{"plus", to_json(sp.plus)}, {"minus", to_json(sp.minus)}}; }

loops::SymbolPair symbol_pair_from_json(const json& j) {
    loops::SymbolPair sp;
    if (j.contains("plus")) {
        sp.plus = loop_pair_from_json(sub(j, "plus"));
        sp.minus = loop_pair_from_json(sub(j, "minus"));
    } else {
        sp.plus = loop_pair_from_json(j);
        const CMatrix one = CMatrix::Identity(sp.plus.sigma1.dim, sp.plus.sigma1.dim);
        const int g = sp.plus.sigma1.grid;
        sp.minus = {loops::MatrixLoop::constant(one, g), loops::MatrixLoop::constant(one, g), sp.plus.tol};
    }
    if (sp.plus.sigma1.grid != sp.minus.sigma1.grid || sp.plus.sigma1.dim != sp.minus.sigma1.dim)
        throw IoError("symbol pair: components differ in grid or dimension");
    return sp;
}

json to_json(const opmodel::TruncOp& op) {
    return {{"modes", op.modes}, {"dim", op.dim}, {"matrix", to_json(op.dense())}};
}

opmodel::TruncOp trunc_op_from_json(const json& j) {
    try {
        return opmodel::TruncOp::from_dense(field<int>(j, "modes"), field<long>(j, "dim"),
                                            matrix_from_json(sub(j, "matrix")));
    } catch (const IoError&) {
        throw;
    } catch (const Error& e) {
        throw IoError(std::string("truncated operator: ") + e.what());
    }
}

json to_json(const starpoly::MembershipCertificate& cert, const starpoly::RelationIdeal& ideal) {
    json terms = json::array();
    for (const auto& t : cert.decomposition) {
        const auto& g = ideal.generators.at(t.generator);
        terms.push_back({{"coeff", t.coeff.str()},
                         {"left", t.left.str()},
                         {"generator", t.generator},
                         {"adjoint", t.adjoint},
                         {"relation", (t.adjoint ? g.adjoint() : g).str()},
                         {"right", t.right.str()}});
    }
    return {{"target", cert.target.str()}, {"degree_bound", cert.degree_bound}, {"terms", terms}};
}

json to_json(const starpoly::SuiteReport& report, const starpoly::Suite& suite) {
    json rs = json::array();
    for (std::size_t k = 0; k < report.results.size(); ++k) {
        const auto& r = report.results[k];
        json o = {{"name", r.name},
                  {"ideal", r.ideal},
                  {"degree_bound", r.degree_bound},
                  {"certified", r.certified},
                  {"replay_ok", r.replay_ok},
                  {"seconds", r.seconds}};
        if (k < suite.entries.size()) o["target"] = suite.entries[k].target.str();
        if (r.certificate && k < suite.entries.size()) o["certificate"] = to_json(*r.certificate, suite.entries[k].ideal);
        if (!r.error.empty()) o["error"] = r.error;
        rs.push_back(std::move(o));
    }
    return {{"all_certified", report.all_certified()}, {"seconds", report.seconds}, {"results", rs}};
}

json to_json(const balanced::BalanceReport& r) {
    json res = json::object();
    for (const auto& nv : r.named()) res[nv.name] = nv.value;
    return {{"tol", r.tol},
            {"norm_a", r.norm_a},
            {"norm_b", r.norm_b},
            {"contractions", r.contractions()},
            {"rel1", r.rel1_holds()},
            {"rel2", r.rel2_holds()},
            {"balanced", r.balanced()},
            {"max_residual", r.max_residual()},
            {"residuals", res}};
}

json to_json(const balanced::PathReport& r) {
    return {{"kind", std::string(balanced::to_string(r.kind))},
            {"grid", r.grid},
            {"max_residual", r.max_residual},
            {"worst_t", r.worst_t},
            {"pass", r.pass}};
}

json to_json(const opmodel::KBalanceReport& r) {
    json levels = json::array();
    for (std::size_t k = 0; k < r.cutoffs.size(); ++k)
        levels.push_back({{"M", r.cutoffs[k]}, {"max", r.max_at(k)}, {"residuals", named(r.table[k])}});
    return {{"tol", r.tol}, {"kbalanced", r.kbalanced}, {"cutoffs", levels}};
}

json to_json(const opmodel::BlockReport& r) {
    return {{"epsilon", r.epsilon}, {"degenerate", r.degenerate}, {"pass", r.pass}, {"max", r.max()},
            {"blocks", named(r.blocks)}};
}

json to_json(const relindex::IndexReport& r) {
    json levels = json::array();
    for (const auto& lv : r.levels) {
        json cands = json::array();
        for (const auto& c : lv.candidates)
            cands.push_back({{"name", c.name},
                             {"index", c.index},
                             {"svd", c.index_svd},
                             {"fedosov", c.index_fedosov},
                             {"residue_svd", c.residue_svd},
                             {"residue_fedosov", c.residue_fedosov}});
        json o = {{"modes", lv.modes},
                  {"tail_cutoff", lv.tail_cutoff},
                  {"quantize_roundtrip", lv.quantize_roundtrip},
                  {"kbalance_max", lv.kbalance_max},
                  {"theorem_H_max", lv.theorem_H_max},
                  {"split_rank", lv.split_rank},
                  {"correction_rank", lv.correction_rank},
                  {"global", lv.global},
                  {"candidate_defect", lv.candidate_defect},
                  {"candidates", cands}};
        if (lv.def_a) o["definition_A_restricted"] = *lv.def_a;
        if (lv.def_b) o["definition_B_restricted"] = *lv.def_b;
        if (lv.corollary) o["corollary"] = *lv.corollary;
        if (lv.swapped) o["swapped"] = *lv.swapped;
        levels.push_back(std::move(o));
    }
    return {{"analytic_svd", r.analytic_svd},
            {"analytic_fedosov", r.analytic_fedosov},
            {"topological", r.topological},
            {"verdict", r.pass ? "pass" : "fail"},
            {"failure", r.failure},
            {"residuals", named(r.residuals)},
            {"levels", levels}};
}

std::string sweep_csv(const std::vector<relindex::SweepRow>& rows) {
    std::ostringstream os;
    os << "p,q,analytic,topological,pass,max_residue,error\n";
    for (const auto& row : rows) {
        double residue = 0;
        for (const auto& lv : row.report.levels)
            for (const auto& c : lv.candidates) residue = std::max({residue, c.residue_svd, c.residue_fedosov});
        std::string err = row.error;
        for (char& ch : err)
            if (ch == ',' || ch == '\n') ch = ';';
        os << row.p << ',' << row.q << ',' << row.report.analytic_svd << ',' << row.report.topological << ','
           << (row.error.empty() && row.report.pass ? 1 : 0) << ',' << std::setprecision(6) << residue << ',' << err
           << '\n';
    }
    return os.str();
}

std::string det_c_csv(const loops::LoopPair& lp) {
    std::ostringstream os;
    os << "t,abs_det_c,arg_det_c\n" << std::setprecision(12);
    for (std::size_t k = 0; k < lp.sigma1.samples.size(); ++k) {
        const Complex d = balanced::make_c(lp.sigma1.samples[k], lp.sigma2.samples[k]).determinant();
        os << lp.sigma1.t(static_cast<int>(k)) << ',' << std::abs(d) << ',' << std::arg(d) << '\n';
    }
    return os.str();
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace balk1::io
