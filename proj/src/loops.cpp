#include "balk1/loops.hpp"

#include "balk1/balanced.hpp"

#include <algorithm>
#include <cmath>

namespace balk1::loops {

using numkern::opnorm;

double MatrixLoop::max_jump() const {
    double m = 0;
    for (std::size_t k = 0; k < samples.size(); ++k)
        m = std::max(m, opnorm(samples[(k + 1) % samples.size()] - samples[k]));
    return m;
}

MatrixLoop MatrixLoop::adjoint() const {
    MatrixLoop r = *this;
    for (auto& s : r.samples) s = s.adjoint().eval();
    return r;
}

MatrixLoop MatrixLoop::sample(const MatrixFunction& f, int grid, Exec exec) {
    if (grid < 2) throw PreconditionError("loop grid must be at least 2");
    MatrixLoop loop;
    loop.grid = grid;
    loop.samples.resize(static_cast<std::size_t>(grid));
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
        for (int k = 0; k < grid; ++k) loop.samples[static_cast<std::size_t>(k)] = f(kLoopEnd * k / grid);
    } else {
        for (int k = 0; k < grid; ++k) loop.samples[static_cast<std::size_t>(k)] = f(kLoopEnd * k / grid);
    }
    loop.dim = loop.samples.front().rows();
    for (const auto& s : loop.samples)
        if (s.rows() != loop.dim || s.cols() != loop.dim) throw ShapeError("loop samples must be square of one size");
    return loop;
}

MatrixLoop MatrixLoop::constant(const CMatrix& x, int grid) {
    if (grid < 2) throw PreconditionError("loop grid must be at least 2");
    if (x.rows() != x.cols()) throw ShapeError("loop samples must be square");
    return {grid, x.rows(), std::vector<CMatrix>(static_cast<std::size_t>(grid), x)};
}

double max_balance_residual(const LoopPair& lp, Exec exec) {
    if (lp.sigma1.grid != lp.sigma2.grid || lp.sigma1.dim != lp.sigma2.dim)
        throw ShapeError("loop pair components differ in grid or dimension");
    const int n = lp.sigma1.grid;
    std::vector<double> r(static_cast<std::size_t>(n));
    auto eval = [&](int k) {
        const auto i = static_cast<std::size_t>(k);
        r[i] = balanced::check_balanced(lp.sigma1.samples[i], lp.sigma2.samples[i], lp.tol).max_residual();
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
        for (int k = 0; k < n; ++k) eval(k);
    } else {
        for (int k = 0; k < n; ++k) eval(k);
    }
    return *std::max_element(r.begin(), r.end());
}

ScalarLoop turns(int p) {
    return [p](double t) { return std::polar(1.0, 4.0 * p * t); };
}

ScalarLoop default_gamma() {
    return [](double t) { return Complex(1.0 - std::sin(2 * t) / 2, 0.0); };
}

LoopPair example_4_1(const ScalarLoop& alpha, const ScalarLoop& beta, const ScalarLoop& gamma, int grid, double tol,
                     double jump_budget) {
    constexpr double kEndTol = 1e-9;
    for (double t : {0.0, kLoopEnd}) {
        if (std::abs(alpha(t) - 1.0) > kEndTol || std::abs(beta(t) - 1.0) > kEndTol ||
            std::abs(gamma(t) - 1.0) > kEndTol)
            throw PreconditionError("example_4_1: alpha, beta and gamma must equal 1 at t = 0 and t = pi/2");
    }
    for (int k = 0; k < grid; ++k) {
        const double t = kLoopEnd * k / grid;
        if (std::abs(std::abs(alpha(t)) - 1.0) > kEndTol || std::abs(std::abs(beta(t)) - 1.0) > kEndTol)
            throw PreconditionError("example_4_1: |alpha| and |beta| must be 1 (t = " + std::to_string(t) + ")");
        if (k > 0 && !(std::abs(gamma(t)) < 1.0))
            throw PreconditionError("example_4_1: |gamma| must be < 1 inside the interval (t = " +
                                    std::to_string(t) + ")");
    }
    auto conj_by_rotation = [](Complex x, Complex y, double t) {
        const CMatrix u = balanced::rotation(t, 1);
        CMatrix d = CMatrix::Zero(2, 2);
        d(0, 0) = x;
        d(1, 1) = y;
        return CMatrix(u.adjoint() * d * u);
    };
    LoopPair lp;
    lp.tol = tol;
    lp.sigma1 = MatrixLoop::sample([&](double t) { return conj_by_rotation(alpha(t), gamma(t), t); }, grid);
    lp.sigma2 = MatrixLoop::sample([&](double t) { return conj_by_rotation(beta(t), gamma(t), t); }, grid);
    const double jump = std::max(lp.sigma1.max_jump(), lp.sigma2.max_jump());
    if (jump > jump_budget)
        throw PreconditionError("example_4_1: loop undersampled (jump " + std::to_string(jump) + " between samples)");
    const double res = max_balance_residual(lp);
    if (res > tol) throw PreconditionError("example_4_1: pair not balanced (residual " + std::to_string(res) + ")");
    return lp;
}

SymbolPair circle_symbol_pair(int p, int q, int grid, double tol) {
    SymbolPair sp;
    sp.plus = example_4_1(turns(p), turns(q), default_gamma(), grid, tol);
    const CMatrix one = CMatrix::Identity(2, 2);
    sp.minus = {MatrixLoop::constant(one, grid), MatrixLoop::constant(one, grid), tol};
    return sp;
}

Winding winding(const std::vector<Complex>& f, double min_modulus) {
    if (f.size() < 2) throw PreconditionError("winding: need at least two samples");
    Winding w;
    w.min_modulus = std::abs(f.front());
    for (Complex z : f) w.min_modulus = std::min(w.min_modulus, std::abs(z));
    if (w.min_modulus < min_modulus)
        throw PreconditionError("winding: modulus " + std::to_string(w.min_modulus) + " below " +
                                std::to_string(min_modulus));
    double total = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double step = std::arg(f[(k + 1) % f.size()] / f[k]);
        if (std::abs(step) >= std::numbers::pi * (1 - 1e-12))
            throw PreconditionError("winding: phase step reaches pi; grid too coarse");
        total += step;
    }
    const double turns_exact = total / (2 * std::numbers::pi);
    w.value = static_cast<int>(std::lround(turns_exact));
    w.residue = std::abs(turns_exact - w.value);
    if (w.residue >= 0.1) throw PreconditionError("winding: rounding residue " + std::to_string(w.residue));
    return w;
}

Winding winding(const ScalarLoop& f, int grid, double min_modulus) {
    std::vector<Complex> v(static_cast<std::size_t>(grid));
    for (int k = 0; k < grid; ++k) v[static_cast<std::size_t>(k)] = f(kLoopEnd * k / grid);
    return winding(v, min_modulus);
}

namespace {

std::vector<Complex> det_c(const LoopPair& lp, double& defect) {
    const auto n = lp.sigma1.samples.size();
    std::vector<Complex> d(n);
    for (std::size_t k = 0; k < n; ++k) {
        const CMatrix c = balanced::make_c(lp.sigma1.samples[k], lp.sigma2.samples[k]);
        defect = std::max(defect, numkern::unitarity_defect(c));
        d[k] = c.determinant();
    }
    return d;
}

}  // namespace

TopoIndex topo_index(const SymbolPair& sp) {
    TopoIndex r;
    const auto dp = det_c(sp.plus, r.unitarity_defect);
    const auto dm = det_c(sp.minus, r.unitarity_defect);
    const double tol = std::max(sp.plus.tol, sp.minus.tol);
    if (r.unitarity_defect > 50 * tol)
        throw PreconditionError("topo_index: c is not unitary (defect " + std::to_string(r.unitarity_defect) +
                                "); the symbol pair is not balanced");
    r.wind_plus = winding(dp, 0.5).value;
    r.wind_minus = winding(dm, 0.5).value;
    r.index = r.wind_minus - r.wind_plus;
    return r;
}

LoopPair vanishing_point_pair(int grid, VanishingProfile profile) {
    using numkern::smooth_step;
    constexpr double pi = std::numbers::pi;
    auto h = [profile](double theta) {
        switch (profile) {
            case VanishingProfile::Zero: return 0.0;
            case VanishingProfile::One: return 1.0;
            case VanishingProfile::Bump: break;
        }
        if (theta < pi / 2) return smooth_step(theta / (pi / 2));
        if (theta > 3 * pi / 2) return smooth_step((2 * pi - theta) / (pi / 2));
        return 1.0;
    };
    auto alpha = [profile](double theta) {
        if (profile == VanishingProfile::One) return std::polar(1.0, theta);
        if (profile == VanishingProfile::Zero) return Complex(1.0);
        return std::polar(1.0, 2 * pi * smooth_step((theta - pi / 2) / pi));
    };
    LoopPair lp;
    lp.tol = 1e-12;
    lp.sigma1 = MatrixLoop::sample(
        [&](double t) {
            const double theta = 4 * t;
            return CMatrix::Constant(1, 1, h(theta) * alpha(theta)).eval();
        },
        grid);
    lp.sigma2 = MatrixLoop::sample([&](double t) { return CMatrix::Constant(1, 1, Complex(h(4 * t))).eval(); }, grid);
    return lp;
}

LoopPair direct_sum(const LoopPair& x, const LoopPair& y) {
    if (x.sigma1.grid != y.sigma1.grid) throw ShapeError("direct_sum: loop grids differ");
    LoopPair r = x;
    r.tol = std::max(x.tol, y.tol);
    r.sigma1.dim += y.sigma1.dim;
    r.sigma2.dim += y.sigma2.dim;
    for (std::size_t k = 0; k < r.sigma1.samples.size(); ++k) {
        r.sigma1.samples[k] = numkern::direct_sum(x.sigma1.samples[k], y.sigma1.samples[k]);
        r.sigma2.samples[k] = numkern::direct_sum(x.sigma2.samples[k], y.sigma2.samples[k]);
    }
    return r;
}

SymbolPair direct_sum(const SymbolPair& x, const SymbolPair& y) {
    return {direct_sum(x.plus, y.plus), direct_sum(x.minus, y.minus)};
}

LoopPair swapped(const LoopPair& lp) { return {lp.sigma2, lp.sigma1, lp.tol}; }

SymbolPair swapped(const SymbolPair& sp) { return {swapped(sp.plus), swapped(sp.minus)}; }

}  // namespace balk1::loops
