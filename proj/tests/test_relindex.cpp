#include "balk1/relindex.hpp"

#include <doctest.h>

#include <cmath>

using namespace balk1;
using namespace balk1::relindex;
using numkern::CMatrix;
using numkern::Complex;

namespace {

// Truncated unilateral shift e_k -> e_{k+1}: kernel e_{n-1} at the boundary, cokernel e_0.
CMatrix shift(Eigen::Index n) {
    CMatrix s = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k + 1 < n; ++k) s(k + 1, k) = 1;
    return s;
}

struct Instance {
    loops::SymbolPair sp;
    TruncOp A, B;
    ModeSplit split;
};

Instance circle_instance(int p, int q, int modes) {
    Instance x{loops::circle_symbol_pair(p, q, 2048), {}, {}, {}};
    const auto quant = opmodel::quantize(x.sp, modes);
    x.A = opmodel::clip_to_contraction(quant.D1);
    x.B = opmodel::clip_to_contraction(quant.D2);
    const PipelineOptions po;
    x.split = opmodel::splitting_projection(x.sp, x.A, x.B, po.split);
    return x;
}

}  // namespace

TEST_CASE("shift oracle: index -1 from both engines") {
    for (Eigen::Index n : {64, 128}) {
        const CMatrix s = shift(n);
        const auto a = fredholm_index_svd(s);
        const auto b = fredholm_index_fedosov(s);
        CHECK(a.index == -1);
        CHECK(b.index == -1);
        CHECK(a.residue < 1e-12);
        CHECK(b.residue < 1e-12);
        CHECK(fredholm_index_svd(s.adjoint()).index == 1);
        CHECK(fredholm_index_fedosov(s.adjoint()).index == 1);
        // Without localization every square matrix has index 0.
        const CMatrix one = CMatrix::Identity(n, n);
        CHECK(fredholm_index_svd(s, 1e-6, &one).index == 0);
        CHECK(fredholm_index_fedosov(s, 2, &one).index == 0);
    }
}

TEST_CASE("index zero instances") {
    CHECK(fredholm_index_svd(CMatrix::Identity(5, 5)).index == 0);
    CMatrix d = CMatrix::Identity(3, 3);
    d(0, 0) = 0;
    CHECK(fredholm_index_svd(d).index == 0);
    CHECK(fredholm_index_fedosov(d).index == 0);
    const CMatrix u = numkern::random_unitary(16, 3);
    const auto r = fredholm_index_fedosov(u);
    CHECK(r.index == 0);
    CHECK(r.residue <= 1e-10);
    CHECK(fredholm_index_svd(u).index == 0);
    CHECK(fredholm_index_svd(u).residue <= 1e-10);
}

TEST_CASE("additivity under direct sums") {
    const CMatrix s = shift(20);
    const CMatrix w = numkern::direct_sum(leading_half_weight(20), leading_half_weight(20));
    CHECK(fredholm_index_svd(numkern::direct_sum(s, s), 1e-6, &w).index == -2);
    CHECK(fredholm_index_fedosov(numkern::direct_sum(s, s), 2, &w).index == -2);
    CHECK(fredholm_index_svd(numkern::direct_sum(s, CMatrix(s.adjoint())), 1e-6, &w).index == 0);
    // s^3 drops three modes.
    CHECK(fredholm_index_svd(s * s * s).index == -3);
    CHECK(fredholm_index_fedosov(s * s * s).index == -3);
}

TEST_CASE("engine preconditions") {
    CMatrix d = CMatrix::Identity(4, 4);
    d(1, 1) = 5e-6;
    CHECK_THROWS_AS(fredholm_index_svd(d), SpectralGapError);
    CHECK_THROWS_AS(fredholm_index_fedosov(2.0 * CMatrix::Identity(4, 4)), PreconditionError);

    // Kernel (e_0 + e_5)/sqrt 2 has weight 1/2; the cokernel e_5 has weight 0.
    const Eigen::Index n = 6;
    CMatrix v = CMatrix::Zero(n, 1);
    v(0) = v(n - 1) = 1 / std::sqrt(2.0);
    CMatrix e = CMatrix::Zero(n, 1);
    e(n - 1) = 1;
    const CMatrix w = v - e;
    const CMatrix refl = CMatrix::Identity(n, n) - 2.0 * w * w.adjoint() / w.squaredNorm();
    const CMatrix f = refl * (CMatrix::Identity(n, n) - v * v.adjoint());
    CHECK_THROWS_AS(fredholm_index_svd(f), PreconditionError);
    CHECK_THROWS_AS(fredholm_index_fedosov(f), PreconditionError);
}

TEST_CASE("weights") {
    const CMatrix l = leading_half_weight(5);
    CHECK(l.trace().real() == 3);
    CHECK(l(2, 2) == 1.0);
    CHECK(l(3, 3) == 0.0);
    const CMatrix p = interior_weight(8, 1, Half::Plus);
    const CMatrix m = interior_weight(8, 1, Half::Minus);
    REQUIRE(p.rows() == 9);
    REQUIRE(m.rows() == 8);
    for (int k = 0; k < 9; ++k) CHECK(p(k, k).real() == (k <= 4 ? 1.0 : 0.0));
    for (int k = 0; k < 8; ++k) CHECK(m(k, k).real() == (k >= 4 ? 1.0 : 0.0));  // modes -4..-1
    CHECK(interior_weight(8, 3, Half::Plus).trace().real() == 15);
}

TEST_CASE("index_of sums halves and compares engines") {
    const int n = 32;
    const std::array<CMatrix, 2> f{shift(n + 1), CMatrix::Identity(n, n)};
    const std::array<CMatrix, 2> w{interior_weight(n, 1, Half::Plus), interior_weight(n, 1, Half::Minus)};
    const Candidate c = index_of("shift", f, w);
    CHECK(c.index == -1);
    CHECK(c.index_svd == -1);
    CHECK(c.index_fedosov == -1);
}

TEST_CASE("relative index of the circle pair") {
    const Instance x = circle_instance(1, 0, 64);
    CHECK(rel_index_global(x.A, x.A).value == 0);
    CHECK(rel_index_global(x.A, x.B).value == -1);
    CHECK(rel_index_global(x.B, x.A).value == 1);
    const auto a = rel_index(x.A, x.B, x.split, {CTag::ARestricted, {}});
    const auto b = rel_index(x.A, x.B, x.split, {CTag::BRestricted, {}});
    CHECK(a.value == -1);
    CHECK(b.value == -1);
    CHECK(rel_index_corollary(x.A, x.B, x.split).value == -1);
    CHECK(rel_index(x.B, x.A, x.split, {CTag::ARestricted, {}}).value == 1);
    CHECK(rel_index(x.A, x.A, x.split, {CTag::ARestricted, {}}).value == 0);

    // Another admissible C: A on H1 plus a small perturbation inside H1.
    std::array<CMatrix, 2> near;
    for (Half h : {Half::Plus, Half::Minus}) {
        const auto i = static_cast<std::size_t>(h);
        const auto& v = x.split.basis[i];
        CMatrix g = numkern::random_gaussian(v.cols(), v.cols(), 60 + i);
        g *= 1e-3 / std::max(numkern::opnorm(g), 1e-300);
        near[i] = x.A.half(h) * v + v * g;
    }
    const CChoice custom{CTag::Custom, near};
    const opmodel::TailCutoff cut{16, -1};
    CHECK(check_c(x.A, x.B, x.split, custom, cut, 0.045).pass);
    CHECK(rel_index(x.A, x.B, x.split, custom).value == -1);
    CHECK_THROWS_AS(rel_index(x.A, x.B, x.split, {CTag::Custom, {}}), PreconditionError);
}

TEST_CASE("pipeline") {
    PipelineOptions opts;
    opts.modes = 64;
    const auto r = verify_index_theorem(loops::circle_symbol_pair(1, 0, 2048), opts);
    CHECK(r.pass);
    CHECK(r.failure.empty());
    CHECK(r.analytic_svd == -1);
    CHECK(r.analytic_fedosov == -1);
    CHECK(r.topological == -1);
    REQUIRE(r.levels.size() == 2);
    CHECK(r.levels[0].modes == 64);
    CHECK(r.levels[1].modes == 128);
    for (const auto& lv : r.levels) {
        CHECK(lv.global == -1);
        CHECK(lv.def_a == -1);
        CHECK(lv.def_b == -1);
        CHECK(lv.corollary == -1);
        CHECK(lv.swapped == 1);
    }

    opts.check_doubling = false;
    const auto z = verify_index_theorem(loops::circle_symbol_pair(0, 0, 2048), opts);
    CHECK(z.pass);
    CHECK(z.analytic_svd == 0);
    CHECK(z.levels.size() == 1);
}

TEST_CASE("pipeline stage errors") {
    PipelineOptions opts;
    opts.modes = 8;  // fewer modes than four bandwidths
    try {
        verify_index_theorem(loops::circle_symbol_pair(2, 0, 2048), opts);
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage == "quantize");
    }
    auto sp = loops::circle_symbol_pair(1, 0, 2048);
    sp.plus.sigma1.samples[3] *= 0.5;
    CHECK_THROWS_AS(verify_index_theorem(sp, opts), StageError);
}

TEST_CASE("sweep rows") {
    PipelineOptions opts;
    opts.modes = 64;
    opts.check_doubling = false;
    opts.all_formulas = false;
    const auto serial = sweep(-1, 0, 0, 1, 2048, opts, Exec::Serial);
    const auto par = sweep(-1, 0, 0, 1, 2048, opts, Exec::Parallel);
    REQUIRE(serial.size() == 4);
    REQUIRE(par.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(serial[k].error.empty());
        CHECK(serial[k].report.analytic_svd == serial[k].q - serial[k].p);
        CHECK(par[k].p == serial[k].p);
        CHECK(par[k].q == serial[k].q);
        CHECK(par[k].report.analytic_svd == serial[k].report.analytic_svd);
    }
}
