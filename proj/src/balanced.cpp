#include "balk1/balanced.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace balk1::balanced {

using numkern::identity;
using numkern::opnorm;

bool BalanceReport::rel1_holds() const {
    return std::all_of(rel1.begin(), rel1.end(), [this](double r) { return r <= tol; });
}

bool BalanceReport::rel2_holds() const {
    return std::all_of(rel2.begin(), rel2.end(), [this](double r) { return r <= 6 * tol; });
}

double BalanceReport::max_residual() const {
    double m = std::max(0.0, std::max(norm_a, norm_b) - 1.0);
    for (double r : rel1) m = std::max(m, r);
    for (double r : rel2) m = std::max(m, r);
    return m;
}

std::vector<NamedValue> BalanceReport::named() const {
    static const char* rel1_names[] = {"a*a-b*b", "aa*-bb*", "a(1-a*a)-b(1-b*b)", "(1-aa*)a-(1-bb*)b"};
    static const char* rel2_names[] = {"(a-b)(1-a*a)",   "(1-a*a)(a*-b*)", "(a-b)(1-b*b)",   "(1-b*b)(a*-b*)",
                                       "(a*-b*)(1-aa*)", "(1-aa*)(a-b)",   "(a*-b*)(1-bb*)", "(1-bb*)(a-b)"};
    std::vector<NamedValue> out;
    for (std::size_t k = 0; k < 4; ++k) out.push_back({rel1_names[k], rel1[k]});
    for (std::size_t k = 0; k < 8; ++k) out.push_back({rel2_names[k], rel2[k]});
    return out;
}

BalanceReport check_balanced(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows() != a.cols() || a.rows() != b.rows() || b.rows() != b.cols())
        throw ShapeError("check_balanced: a and b must be square of the same size");
    const CMatrix one = identity(a.rows());
    const CMatrix as = a.adjoint();
    const CMatrix bs = b.adjoint();
    const CMatrix da_r = one - as * a;  // 1 - a*a
    const CMatrix da_l = one - a * as;  // 1 - aa*
    const CMatrix db_r = one - bs * b;
    const CMatrix db_l = one - b * bs;
    const CMatrix d = a - b;
    const CMatrix ds = as - bs;

    BalanceReport r;
    r.tol = tol;
    r.norm_a = opnorm(a);
    r.norm_b = opnorm(b);
    r.rel1 = {opnorm(da_r - db_r), opnorm(da_l - db_l), opnorm(a * da_r - b * db_r), opnorm(da_l * a - db_l * b)};
    r.rel2 = {opnorm(d * da_r),  opnorm(da_r * ds), opnorm(d * db_r),  opnorm(db_r * ds),
              opnorm(ds * da_l), opnorm(da_l * d),  opnorm(ds * db_l), opnorm(db_l * d)};
    return r;
}

CMatrix make_c(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw ShapeError("make_c: a and b must be square of the same size");
    return identity(a.rows()) + b.adjoint() * (a - b);
}

double CPropertiesReport::max() const {
    double m = 0;
    for (const auto& r : residuals) m = std::max(m, r.value);
    return m;
}

CPropertiesReport verify_c_properties(const CMatrix& a, const CMatrix& b) {
    const CMatrix c = make_c(a, b);
    const CMatrix one = identity(a.rows());
    const CMatrix e = one + (a - b) * b.adjoint();
    const CMatrix bsb = b.adjoint() * b;
    CPropertiesReport r;
    r.residuals = {
        {"c*c-1", opnorm(c.adjoint() * c - one)},
        {"cc*-1", opnorm(c * c.adjoint() - one)},
        {"e*e-1 (e=1+(a-b)b*)", opnorm(e.adjoint() * e - one)},
        {"ee*-1 (e=1+(a-b)b*)", opnorm(e * e.adjoint() - one)},
        {"bc-a", opnorm(b * c - a)},
        {"[b*b,c]", opnorm(bsb * c - c * bsb)},
        {"(1-b*b)(c-1)", opnorm((one - bsb) * (c - one))},
        {"(c-1)(1-b*b)", opnorm((c - one) * (one - bsb))},
    };
    return r;
}

std::string_view to_string(PathKind kind) {
    switch (kind) {
        case PathKind::LinearTrivial: return "linear-trivial";
        case PathKind::Swap: return "swap";
        case PathKind::Adjoint: return "adjoint";
        case PathKind::IotaKappa: return "iota-kappa";
    }
    return "?";
}

PathKind path_kind_from_string(std::string_view name) {
    for (PathKind k : {PathKind::LinearTrivial, PathKind::Swap, PathKind::Adjoint, PathKind::IotaKappa})
        if (to_string(k) == name) return k;
    throw PreconditionError("unknown path kind '" + std::string(name) + "'");
}

CMatrix rotation(double t, Eigen::Index n) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    CMatrix u = CMatrix::Zero(2 * n, 2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        u(k, k) = c;
        u(k, n + k) = -s;
        u(n + k, k) = s;
        u(n + k, n + k) = c;
    }
    return u;
}

PathPoint homotopy_eval(PathKind kind, const CMatrix& a, const CMatrix& b, double t, double tol) {
    if (a.rows() != a.cols() || a.rows() != b.rows() || b.rows() != b.cols())
        throw ShapeError("homotopy_eval: a and b must be square of the same size");
    if (!(t >= 0 && t <= kPathEnd)) throw PreconditionError("homotopy_eval: t outside [0, pi/2]");
    using numkern::direct_sum;
    const Eigen::Index n = a.rows();
    const CMatrix one = identity(n);
    const CMatrix u = rotation(t, n);
    const CMatrix us = u.adjoint();
    switch (kind) {
        case PathKind::LinearTrivial: {
            if (opnorm(a - b) > tol) throw PreconditionError("linear-trivial path needs a = b");
            const double s = t / kPathEnd;
            return {s * a, s * a};
        }
        case PathKind::Swap: {
            const CMatrix ab = direct_sum(a, b);
            return {ab, us * ab * u};
        }
        case PathKind::Adjoint:
            return {direct_sum(a, one) * us * direct_sum(one, a.adjoint()) * u,
                    direct_sum(b, one) * us * direct_sum(one, b.adjoint()) * u};
        case PathKind::IotaKappa: {
            const CMatrix c = make_c(a, b);
            return {direct_sum(c, b), direct_sum(one, b) * us * direct_sum(one, c) * u};
        }
    }
    throw PreconditionError("homotopy_eval: unknown path kind");
}

PathReport validate_path(PathKind kind, const CMatrix& a, const CMatrix& b, int grid, double tol, Exec exec) {
    if (grid < 2) throw PreconditionError("validate_path: grid must be at least 2");
    std::vector<double> residual(static_cast<std::size_t>(grid));
    auto eval = [&](int k) {
        const double t = kPathEnd * k / (grid - 1);
        const PathPoint p = homotopy_eval(kind, a, b, t, tol);
        residual[static_cast<std::size_t>(k)] = check_balanced(p.A, p.B, tol).max_residual();
    };
    if (kind == PathKind::LinearTrivial) homotopy_eval(kind, a, b, 0.0, tol);  // base check outside the loop
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
        for (int k = 0; k < grid; ++k) eval(k);
    } else {
        for (int k = 0; k < grid; ++k) eval(k);
    }
    PathReport r{kind, grid, 0, 0, false};
    for (int k = 0; k < grid; ++k) {
        if (residual[static_cast<std::size_t>(k)] > r.max_residual) {
            r.max_residual = residual[static_cast<std::size_t>(k)];
            r.worst_t = kPathEnd * k / (grid - 1);
        }
    }
    r.pass = r.max_residual <= tol;
    return r;
}

namespace {

CMatrix support(const CMatrix& h, double threshold) {
    const CMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(sym);
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
        const double w = eig.eigenvalues()(k);
        if (w >= threshold && w <= 10 * threshold)
            throw SpectralGapError("finite_split: defect eigenvalue " + std::to_string(w) +
                                       " is too close to the support threshold",
                                   w);
    }
    return numkern::spectral_projection(sym, threshold);
}

double offblock(const CMatrix& c, const CMatrix& p) {
    const CMatrix q = identity(p.rows()) - p;
    return opnorm(q * c * q) + opnorm(p * c * q) + opnorm(q * c * p);
}

}  // namespace

FiniteSplit finite_split(const CMatrix& a, const CMatrix& b, double tol, double threshold) {
    if (a.rows() != a.cols() || a.rows() != b.rows() || b.rows() != b.cols())
        throw ShapeError("finite_split: a and b must be square of the same size");
    const CMatrix one = identity(a.rows());
    const CMatrix dr = one - a.adjoint() * a;
    const CMatrix dl = one - a * a.adjoint();
    const CMatrix d = a - b;
    FiniteSplit s;
    s.P1 = support(dr + dl, threshold);
    s.P_in = support(dr, threshold);
    s.P_out = support(dl, threshold);
    s.residual_defect_offblock = offblock(dr, s.P1) + offblock(dl, s.P1);
    s.residual_diff_onblock = opnorm(s.P1 * d) + opnorm(d * s.P1);
    s.residual_defect_offblock_two_sided = offblock(dr, s.P_in) + offblock(dl, s.P_out);
    s.residual_diff_onblock_two_sided = opnorm(d * s.P_in) + opnorm(s.P_out * d);
    s.bound = 10 * tol + threshold;
    return s;
}

Complex unitalization_f(Complex z, double delta) {
    const double theta = std::arg(z);
    const double x = std::abs(theta);
    const double flat = 2 * std::asin(delta / 4);  // |z - 1| = delta/2
    double psi;
    if (x <= flat)
        psi = 0;
    else if (x < 2 * flat)
        psi = x - flat * (1 - numkern::smooth_step((x - flat) / flat));
    else
        psi = x;
    return std::polar(1.0, theta < 0 ? -psi : psi);
}

double unitalization_g(Complex z, double delta) { return numkern::smooth_step(std::abs(z - 1.0) / (delta / 2)); }

BalancedPair unitalization_pair(const CMatrix& u, double delta) {
    if (!(delta > 0 && delta < 1.0 / 3)) throw PreconditionError("unitalization_pair: delta must lie in (0, 1/3)");
    const CMatrix a =
        numkern::func_calc_unitary(u, [delta](Complex z) { return unitalization_f(z, delta) * unitalization_g(z, delta); });
    const CMatrix b = numkern::func_calc_unitary(u, [delta](Complex z) { return Complex(unitalization_g(z, delta)); });
    return {a, b, 1e-8};
}

BalancedPair random_balanced_pair(Eigen::Index dim, std::uint64_t seed, int rank) {
    if (dim < 1) throw PreconditionError("random_balanced_pair: dim must be positive");
    std::mt19937_64 gen(seed);
    if (rank < 0) rank = static_cast<int>(std::uniform_int_distribution<Eigen::Index>(0, dim)(gen));
    if (rank > dim) throw PreconditionError("random_balanced_pair: rank exceeds dim");
    const Eigen::Index r = rank;
    const Eigen::Index k = dim - r;
    CMatrix x = numkern::random_gaussian(r, r, gen());
    if (r > 0) x *= 0.9 / opnorm(x);
    const CMatrix u = numkern::random_unitary(k, gen());
    const CMatrix v = numkern::random_unitary(k, gen());
    const CMatrix w1 = numkern::random_unitary(dim, gen());
    const CMatrix w2 = numkern::random_unitary(dim, gen());
    return {w1.adjoint() * numkern::direct_sum(x, u) * w2, w1.adjoint() * numkern::direct_sum(x, v) * w2, 1e-10};
}

}  // namespace balk1::balanced
