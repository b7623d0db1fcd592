#include "balk1/relindex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace balk1::relindex {

using Eigen::Index;
using numkern::Complex;
using numkern::opnorm;
using opmodel::TailCutoff;

namespace {

constexpr std::array<Half, 2> kHalves{Half::Plus, Half::Minus};

double weight_of(const CMatrix& w, const Eigen::Ref<const Eigen::VectorXcd>& v) { return (v.adjoint() * w * v)(0, 0).real(); }

void check_square(const CMatrix& F, const CMatrix* weight) {
    if (F.rows() != F.cols()) throw ShapeError("index engines need a square matrix");
    if (weight && (weight->rows() != F.rows() || weight->cols() != F.cols()))
        throw ShapeError("index weight does not match the operator");
}

}  // namespace

CMatrix leading_half_weight(Index n) {
    CMatrix w = CMatrix::Zero(n, n);
    for (Index i = 0; i < (n + 1) / 2; ++i) w(i, i) = 1;
    return w;
}

EngineResult fredholm_index_svd(const CMatrix& F, double threshold, const CMatrix* weight, double gap_factor) {
    check_square(F, weight);
    EngineResult r;
    if (F.size() == 0) return r;
    const CMatrix w = weight ? *weight : leading_half_weight(F.rows());
    const auto s = numkern::svd(F);
    double ker = 0, coker = 0;
    for (Index j = 0; j < s.sigma.size(); ++j) {
        const double sv = s.sigma(j);
        if (sv >= threshold && sv < gap_factor * threshold)
            throw SpectralGapError("fredholm_index_svd: singular value " + std::to_string(sv) +
                                       " inside the gap band [" + std::to_string(threshold) + ", " +
                                       std::to_string(gap_factor * threshold) + ")",
                                   sv);
        if (sv < threshold) {
            ker += weight_of(w, s.V.col(j));
            coker += weight_of(w, s.U.col(j));
        }
    }
    r.raw = ker - coker;
    r.index = static_cast<int>(std::lround(r.raw));
    r.residue = std::abs(r.raw - r.index);
    if (r.residue >= 0.2)
        throw PreconditionError("fredholm_index_svd: weighted count " + std::to_string(r.raw) +
                                " is not near an integer; kernel vectors reach the truncation boundary");
    return r;
}

EngineResult fredholm_index_fedosov(const CMatrix& F, int p, const CMatrix* weight, double residue_max,
                                    double defect_max) {
    check_square(F, weight);
    if (p < 1) throw PreconditionError("fredholm_index_fedosov: p must be at least 1");
    EngineResult r;
    if (F.size() == 0) return r;
    const CMatrix w = weight ? *weight : leading_half_weight(F.rows());
    const Index n = F.rows();
    const CMatrix one = CMatrix::Identity(n, n);
    const CMatrix d1 = one - F.adjoint() * F;
    const CMatrix d2 = one - F * F.adjoint();
    const auto sv = numkern::singular_values(F);
    // Both defects have norm max(1 - smin^2, smax^2 - 1).
    const double defect = std::max(1 - sv(sv.size() - 1) * sv(sv.size() - 1), sv(0) * sv(0) - 1);
    if (defect > defect_max)
        throw PreconditionError("fredholm_index_fedosov: defect norm " + std::to_string(defect) + " exceeds " +
                                std::to_string(defect_max));
    CMatrix p1 = d1, p2 = d2;
    for (int k = 1; k < p; ++k) {
        p1 = (p1 * d1).eval();
        p2 = (p2 * d2).eval();
    }
    // Tr(W X) = sum_ij W_ij X_ji.
    r.raw = (w.cwiseProduct((p1 - p2).transpose())).sum().real();
    r.index = static_cast<int>(std::lround(r.raw));
    r.residue = std::abs(r.raw - r.index);
    if (!(r.residue < residue_max))
        throw PreconditionError("fredholm_index_fedosov: trace " + std::to_string(r.raw) + " has residue " +
                                std::to_string(r.residue) + " (p or N too small)");
    return r;
}

CMatrix interior_weight(int modes, Index dim, Half half) {
    const Index nb = half == Half::Plus ? modes + 1 : modes;
    CMatrix w = CMatrix::Zero(nb * dim, nb * dim);
    for (Index j = 0; j < nb; ++j) {
        const int n = half == Half::Plus ? static_cast<int>(j) : static_cast<int>(j) - modes;
        if (2 * std::abs(n) <= modes)
            for (Index i = 0; i < dim; ++i) w(j * dim + i, j * dim + i) = 1;
    }
    return w;
}

Candidate index_of(std::string name, const std::array<CMatrix, 2>& F, const std::array<CMatrix, 2>& W,
                   const EngineOptions& opts) {
    Candidate c;
    c.name = std::move(name);
    for (std::size_t i = 0; i < 2; ++i) {
        if (F[i].size() == 0) continue;
        const auto s = fredholm_index_svd(F[i], opts.svd_threshold, &W[i], opts.gap_factor);
        const auto f = fredholm_index_fedosov(F[i], opts.fedosov_p, &W[i], opts.residue_max, opts.defect_max);
        c.index_svd += s.index;
        c.index_fedosov += f.index;
        c.residue_svd = std::max(c.residue_svd, s.residue);
        c.residue_fedosov = std::max(c.residue_fedosov, f.residue);
    }
    if (c.index_svd != c.index_fedosov)
        throw Error("index engines disagree on " + c.name + ": svd " + std::to_string(c.index_svd) + ", fedosov " +
                    std::to_string(c.index_fedosov));
    c.index = c.index_svd;
    return c;
}

std::string to_string(CTag tag) {
    switch (tag) {
        case CTag::ARestricted: return "A-restricted";
        case CTag::BRestricted: return "B-restricted";
        case CTag::Custom: return "custom";
    }
    return "?";
}

namespace {

// C as ambient x rank per half.
std::array<CMatrix, 2> c_operator(const TruncOp& A, const TruncOp& B, const ModeSplit& split, const CChoice& choice) {
    std::array<CMatrix, 2> c;
    for (Half h : kHalves) {
        const auto i = static_cast<std::size_t>(h);
        switch (choice.tag) {
            case CTag::ARestricted: c[i] = A.half(h) * split.basis[i]; break;
            case CTag::BRestricted: c[i] = B.half(h) * split.basis[i]; break;
            case CTag::Custom:
                if (!choice.op) throw PreconditionError("custom C choice without an operator");
                c[i] = (*choice.op)[i];
                if (c[i].rows() != A.half(h).rows() || c[i].cols() != split.basis[i].cols())
                    throw ShapeError("custom C must map H1 into the ambient space");
                break;
        }
    }
    return c;
}

std::array<CMatrix, 2> h1_weights(const ModeSplit& split, int modes, Index dim) {
    std::array<CMatrix, 2> w;
    for (Half h : kHalves) {
        const auto i = static_cast<std::size_t>(h);
        const CMatrix pi = interior_weight(modes, dim, h);
        w[i] = split.basis[i].adjoint() * pi * split.basis[i];
    }
    return w;
}

}  // namespace

CCheck check_c(const TruncOp& A, const TruncOp& B, const ModeSplit& split, const CChoice& choice, const TailCutoff& cut,
               double epsilon) {
    const auto c = c_operator(A, B, split, choice);
    CCheck r;
    r.epsilon = epsilon;
    std::array<double, 5> worst{};
    for (const TruncOp* X : {&A, &B}) {
        std::array<std::array<CMatrix, 2>, 4> y;
        for (Half h : kHalves) {
            const auto i = static_cast<std::size_t>(h);
            const CMatrix& v = split.basis[i];
            const CMatrix xv = X->half(h) * v;
            const CMatrix c1 = v.adjoint() * c[i], x1 = v.adjoint() * xv;
            // |C2 - X2| = |(1-P)(C - XV)|
            if (v.cols() > 0 && v.cols() < v.rows())
                worst[0] = std::max(worst[0], opnorm((c[i] - xv) - v * (c1 - x1)));
            const CMatrix one = CMatrix::Identity(v.cols(), v.cols());
            y[0][i] = c1.adjoint() * c1 - x1.adjoint() * x1;
            y[1][i] = c1 * c1.adjoint() - x1 * x1.adjoint();
            y[2][i] = (c1 - x1) * (one - x1.adjoint() * x1);
            y[3][i] = (c1 - x1).adjoint() * (one - x1 * x1.adjoint());
        }
        for (std::size_t k = 0; k < 4; ++k)
            worst[k + 1] = std::max(worst[k + 1], opmodel::tail_seminorm_on(y[k], split.basis, A.modes, A.dim, cut));
    }
    static constexpr std::array<const char*, 5> kNames = {"(C1) |C2 - X2|", "(C2) |C1*C1 - X1*X1|",
                                                          "(C2) |C1C1* - X1X1*|", "(C3) |(C1-X1)(1-X1*X1)|",
                                                          "(C3) |(C1-X1)*(1-X1X1*)|"};
    static constexpr std::array<double, 5> kFactor = {1, 2, 2, 4, 4};
    r.pass = true;
    for (std::size_t k = 0; k < 5; ++k) {
        r.residuals.push_back({kNames[k], worst[k]});
        if (!(worst[k] < kFactor[k] * epsilon)) r.pass = false;
    }
    return r;
}

RelIndex rel_index(const TruncOp& A, const TruncOp& B, const ModeSplit& split, const CChoice& choice,
                   const EngineOptions& opts) {
    const auto c = c_operator(A, B, split, choice);
    const auto w = h1_weights(split, A.modes, A.dim);
    std::array<CMatrix, 2> fa, fb;
    for (Half h : kHalves) {
        const auto i = static_cast<std::size_t>(h);
        fa[i] = c[i].adjoint() * A.half(h) * split.basis[i];
        fb[i] = c[i].adjoint() * B.half(h) * split.basis[i];
    }
    const std::string tag = to_string(choice.tag);
    RelIndex r;
    r.candidates.push_back(index_of("C*A|H1 (" + tag + ")", fa, w, opts));
    r.candidates.push_back(index_of("C*B|H1 (" + tag + ")", fb, w, opts));
    r.value = r.candidates[0].index - r.candidates[1].index;
    return r;
}

RelIndex rel_index_corollary(const TruncOp& A, const TruncOp& B, const ModeSplit& split, const EngineOptions& opts) {
    const auto w = h1_weights(split, A.modes, A.dim);
    std::array<CMatrix, 2> g;
    for (Half h : kHalves) {
        const auto i = static_cast<std::size_t>(h);
        const CMatrix& v = split.basis[i];
        const CMatrix a1 = v.adjoint() * A.half(h) * v;
        const CMatrix b1 = v.adjoint() * B.half(h) * v;
        g[i] = CMatrix::Identity(v.cols(), v.cols()) + b1.adjoint() * (a1 - b1);
    }
    RelIndex r;
    r.candidates.push_back(index_of("1 + B1*(A1-B1)", g, w, opts));
    r.value = r.candidates[0].index;
    return r;
}

RelIndex rel_index_global(const TruncOp& A, const TruncOp& B, const EngineOptions& opts) {
    std::array<CMatrix, 2> g, w;
    for (Half h : kHalves) {
        const auto i = static_cast<std::size_t>(h);
        const Index n = A.half(h).rows();
        g[i] = CMatrix::Identity(n, n) + B.half(h).adjoint() * (A.half(h) - B.half(h));
        w[i] = interior_weight(A.modes, A.dim, h);
    }
    RelIndex r;
    r.candidates.push_back(index_of("1 + B*(A-B)", g, w, opts));
    r.value = r.candidates[0].index;
    return r;
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        std::string what = e.what();
        const std::string prefix = std::string(name) + ": ";
        if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
        throw StageError(name, what);
    }
}

LevelReport run_level(const loops::SymbolPair& sp, int modes, const PipelineOptions& opts) {
    LevelReport lv;
    lv.modes = modes;
    lv.tail_cutoff = opts.tail_cutoff >= 0 ? opts.tail_cutoff : modes / 4;
    const TailCutoff cut{lv.tail_cutoff, -1};

    const auto q = stage("quantize", [&] { return opmodel::quantize(sp, modes, opts.quantize); });
    lv.quantize_roundtrip = q.report.roundtrip_error;
    const auto [A, B] = stage("clip", [&] {
        return std::pair{opmodel::clip_to_contraction(q.D1), opmodel::clip_to_contraction(q.D2)};
    });
    stage("kbalance", [&] {
        const auto kb = opmodel::kbalance_report(A, B, cut, opts.kbalance_tol, false);
        lv.kbalance_max = kb.max_at(0);
        if (!kb.kbalanced)
            throw Error("quantized pair not K-balanced: tail residual " + std::to_string(kb.max_at(kb.table.size() - 1)) +
                        " > " + std::to_string(opts.kbalance_tol));
    });
    const auto split = stage("split", [&] { return opmodel::splitting_projection(sp, A, B, opts.split, opts.quantize); });
    lv.split_rank = static_cast<int>(split.rank());
    lv.correction_rank = split.correction_rank;
    stage("theorem-H", [&] {
        const auto th = opmodel::verify_theorem_H(A, B, split, cut, opts.split.epsilon);
        lv.theorem_H_max = th.max();
        if (!th.pass)
            throw Error("block estimates fail: max " + std::to_string(th.max()) + " >= epsilon " +
                        std::to_string(opts.split.epsilon));
    });
    stage("index", [&] {
        const auto g = rel_index_global(A, B, opts.engines);
        lv.global = g.value;
        lv.candidates = g.candidates;
        {
            TruncOp G = B.adjoint() * (A - B);
            G = TruncOp::identity(modes, A.dim) + G;
            const TruncOp one = TruncOp::identity(modes, A.dim);
            lv.candidate_defect = std::max(opmodel::tail_seminorm(one - G.adjoint() * G, cut),
                                           opmodel::tail_seminorm(one - G * G.adjoint(), cut));
        }
        if (!opts.all_formulas) return;
        auto keep = [&](const RelIndex& r) {
            lv.candidates.insert(lv.candidates.end(), r.candidates.begin(), r.candidates.end());
            return r.value;
        };
        for (CTag tag : {CTag::ARestricted, CTag::BRestricted}) {
            const auto cc = check_c(A, B, split, {tag, {}}, cut, opts.split.epsilon);
            if (!cc.pass) throw Error("C choice " + to_string(tag) + " violates (C1)-(C3)");
        }
        lv.def_a = keep(rel_index(A, B, split, {CTag::ARestricted, {}}, opts.engines));
        lv.def_b = keep(rel_index(A, B, split, {CTag::BRestricted, {}}, opts.engines));
        lv.corollary = keep(rel_index_corollary(A, B, split, opts.engines));
        lv.swapped = keep(rel_index(B, A, split, {CTag::ARestricted, {}}, opts.engines));
    });
    return lv;
}

std::string coherence_failure(const LevelReport& lv) {
    std::ostringstream os;
    if (lv.def_a && *lv.def_a != lv.global) os << "definition (A-restricted) " << *lv.def_a << " != global " << lv.global << "; ";
    if (lv.def_b && *lv.def_b != lv.global) os << "definition (B-restricted) " << *lv.def_b << " != global " << lv.global << "; ";
    if (lv.corollary && *lv.corollary != lv.global) os << "corollary " << *lv.corollary << " != global " << lv.global << "; ";
    if (lv.swapped && *lv.swapped != -lv.global) os << "swapped pair " << *lv.swapped << " != -" << lv.global << "; ";
    return os.str();
}

}  // namespace

IndexReport verify_index_theorem(const loops::SymbolPair& sp, const PipelineOptions& opts) {
    IndexReport rep;
    stage("symbol", [&] {
        for (const auto* lp : {&sp.plus, &sp.minus}) {
            const double res = loops::max_balance_residual(*lp);
            if (res > 10 * lp->tol)
                throw PreconditionError("symbol pair not balanced (residual " + std::to_string(res) + ")");
        }
    });
    std::vector<int> sizes{opts.modes};
    if (opts.check_doubling) sizes.push_back(2 * opts.modes);
    for (int n : sizes) rep.levels.push_back(run_level(sp, n, opts));
    rep.topological = stage("topology", [&] { return loops::topo_index(sp).index; });

    const LevelReport& first = rep.levels.front();
    for (const auto& c : first.candidates)
        if (c.name == "1 + B*(A-B)") {
            rep.analytic_svd = c.index_svd;
            rep.analytic_fedosov = c.index_fedosov;
        }
    std::string fail;
    for (const auto& lv : rep.levels) {
        fail += coherence_failure(lv);
        rep.residuals.push_back({"candidate defect (N=" + std::to_string(lv.modes) + ")", lv.candidate_defect});
    }
    for (std::size_t k = 1; k < rep.levels.size(); ++k) {
        const auto& a = rep.levels[k - 1];
        const auto& b = rep.levels[k];
        const double delta = std::abs(a.global - b.global);
        rep.residuals.push_back(
            {"stabilization delta (N=" + std::to_string(a.modes) + " -> " + std::to_string(b.modes) + ")", delta});
        if (delta != 0) fail += "index changes from N=" + std::to_string(a.modes) + " to N=" + std::to_string(b.modes) + "; ";
        auto same = [](const std::optional<int>& x, const std::optional<int>& y) { return !x || !y || *x == *y; };
        if (!same(a.def_a, b.def_a) || !same(a.def_b, b.def_b) || !same(a.corollary, b.corollary) ||
            !same(a.swapped, b.swapped))
            fail += "a formula changes under doubling; ";
    }
    if (rep.analytic_svd != rep.analytic_fedosov) fail += "engines disagree; ";
    if (rep.analytic_svd != rep.topological)
        fail += "analytic " + std::to_string(rep.analytic_svd) + " != topological " + std::to_string(rep.topological) + "; ";
    rep.failure = fail;
    rep.pass = fail.empty();
    return rep;
}

std::vector<SweepRow> sweep(int p0, int p1, int q0, int q1, int grid, const PipelineOptions& opts, Exec exec) {
    if (p1 < p0 || q1 < q0) throw PreconditionError("sweep: empty range");
    std::vector<SweepRow> rows;
    for (int p = p0; p <= p1; ++p)
        for (int q = q0; q <= q1; ++q) rows.push_back({p, q, {}, {}});
    auto run = [&](std::size_t k) {
        auto& row = rows[k];
        try {
            row.report = verify_index_theorem(loops::circle_symbol_pair(row.p, row.q, grid), opts);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };
    const auto n = static_cast<long>(rows.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
        for (long k = 0; k < n; ++k) run(static_cast<std::size_t>(k));
    } else {
        for (long k = 0; k < n; ++k) run(static_cast<std::size_t>(k));
    }
    return rows;
}

}  // namespace balk1::relindex
