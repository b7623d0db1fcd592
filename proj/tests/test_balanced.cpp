#include "balk1/balanced.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace balk1;
using namespace balk1::balanced;
using numkern::identity;
using numkern::opnorm;

namespace {

CMatrix scalar(Complex z) { return CMatrix::Constant(1, 1, z); }

constexpr PathKind kAllKinds[] = {PathKind::LinearTrivial, PathKind::Swap, PathKind::Adjoint, PathKind::IotaKappa};

}  // namespace

TEST_CASE("random balanced pairs satisfy both relation sets") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto p = random_balanced_pair(1 + static_cast<Eigen::Index>(seed % 5), seed);
        const auto r = check_balanced(p.a, p.b, 1e-12);
        CAPTURE(seed);
        CHECK(r.balanced());
        CHECK(r.rel2_holds());
        CHECK(r.max_residual() < 1e-12);
    }
}

TEST_CASE("non-balanced inputs are reported") {
    const auto r = check_balanced(scalar(0.5), scalar(0.0), 1e-10);
    CHECK_FALSE(r.balanced());
    CHECK(r.rel1[0] == doctest::Approx(0.25));
    CHECK_FALSE(check_balanced(scalar(2.0), scalar(2.0), 1e-10).contractions());
    CHECK_THROWS_AS(check_balanced(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3), 1e-10), ShapeError);
    CHECK(r.named().size() == 12);
}

TEST_CASE("c of unimodular scalars is the phase ratio") {
    for (double th : {0.0, 0.3, 2.0, -1.1}) {
        for (double ph : {0.0, 1.7, -2.5}) {
            const CMatrix c = make_c(scalar(std::polar(1.0, th)), scalar(std::polar(1.0, ph)));
            CHECK(std::abs(c(0, 0) - std::polar(1.0, th - ph)) < 1e-15);
        }
    }
}

TEST_CASE("c(u,1) reproduces u and c(a,a) = 1") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const CMatrix u = numkern::random_unitary(4, seed);
        const CMatrix one = identity(4);
        const CMatrix c = make_c(u, one);
        // Same rounding as the literal 1 + (u - 1).
        CHECK((c.array() == (one + (u - one)).array()).all());
        CHECK((c - u).cwiseAbs().maxCoeff() <= 2 * std::numeric_limits<double>::epsilon());
        const auto p = random_balanced_pair(3, seed);
        CHECK(opnorm(make_c(p.a, p.a) - identity(3)) < 1e-15);
    }
}

TEST_CASE("c(a,b) is unitary and intertwines") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = random_balanced_pair(4, 100 + seed);
        CHECK(verify_c_properties(p.a, p.b).max() < 1e-12);
    }
}

TEST_CASE("rotation and path endpoints") {
    const Eigen::Index n = 2;
    CHECK(numkern::unitarity_defect(rotation(0.7, n)) < 1e-15);
    const auto p = random_balanced_pair(n, 5, 1);
    const PathPoint s0 = homotopy_eval(PathKind::Swap, p.a, p.b, 0.0);
    CHECK(opnorm(s0.A - s0.B) < 1e-15);
    const PathPoint s1 = homotopy_eval(PathKind::Swap, p.a, p.b, kPathEnd);
    CHECK(opnorm(s1.B - numkern::direct_sum(p.b, p.a)) < 1e-15);

    // iota-kappa runs from (c (+) b, 1 (+) bc) = (c (+) b, 1 (+) a) to (c (+) b, c (+) b).
    const PathPoint k0 = homotopy_eval(PathKind::IotaKappa, p.a, p.b, 0.0);
    CHECK(opnorm(k0.B - numkern::direct_sum(identity(n), p.a)) < 1e-12);
    const PathPoint k1 = homotopy_eval(PathKind::IotaKappa, p.a, p.b, kPathEnd);
    CHECK(opnorm(k1.B - k1.A) < 1e-12);

    const PathPoint l1 = homotopy_eval(PathKind::LinearTrivial, p.a, p.a, kPathEnd);
    CHECK(opnorm(l1.A - p.a) < 1e-15);
    CHECK_THROWS_AS(homotopy_eval(PathKind::LinearTrivial, p.a, p.b, 0.3), PreconditionError);
    CHECK_THROWS_AS(homotopy_eval(PathKind::Swap, p.a, p.b, 2.0), PreconditionError);
}

TEST_CASE("every path kind stays balanced") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto p = random_balanced_pair(1 + static_cast<Eigen::Index>(seed % 4), 200 + seed);
        for (PathKind k : kAllKinds) {
            const CMatrix& b = k == PathKind::LinearTrivial ? p.a : p.b;
            const auto r = validate_path(k, p.a, b, 41, 1e-9);
            CAPTURE(to_string(k));
            CHECK(r.pass);
        }
    }
}

TEST_CASE("serial and parallel path validation agree") {
    const auto p = random_balanced_pair(4, 77);
    for (PathKind k : {PathKind::Swap, PathKind::Adjoint, PathKind::IotaKappa}) {
        const auto s = validate_path(k, p.a, p.b, 51, 1e-9, Exec::Serial);
        const auto q = validate_path(k, p.a, p.b, 51, 1e-9, Exec::Parallel);
        CHECK(s.max_residual == q.max_residual);
        CHECK(s.worst_t == q.worst_t);
    }
    CHECK_THROWS_AS(validate_path(PathKind::Swap, p.a, p.b, 1, 1e-9), PreconditionError);
}

TEST_CASE("path kind names") {
    for (PathKind k : kAllKinds) CHECK(path_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(path_kind_from_string("twist"), PreconditionError);
}

TEST_CASE("two-sided finite split") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto p = random_balanced_pair(4, 300 + seed, 2);
        const auto s = finite_split(p.a, p.b, 1e-12);
        CHECK(s.two_sided_holds());
        CHECK(std::abs(s.P_in.trace().real() - 2.0) < 1e-10);
        CHECK(std::abs(s.P_out.trace().real() - 2.0) < 1e-10);
    }
    // Defect eigenvalue inside the forbidden band.
    CMatrix a = CMatrix::Zero(2, 2);
    a.diagonal() << std::sqrt(1 - 5e-8), 1.0;
    CHECK_THROWS_AS(finite_split(a, a, 1e-12), SpectralGapError);
}

TEST_CASE("unitalization functions") {
    for (double delta : {0.1, 0.2, 0.3}) {
        for (int k = 0; k < 2000; ++k) {
            const double th = -std::numbers::pi + 2 * std::numbers::pi * k / 2000;
            const Complex z = std::polar(1.0, th);
            const Complex f = unitalization_f(z, delta);
            const double g = unitalization_g(z, delta);
            CHECK(std::abs(std::abs(f) - 1) < 1e-15);
            CHECK(std::abs(f - z) < delta);
            if (std::abs(z - 1.0) <= delta / 2) CHECK(std::abs(f - 1.0) < 1e-15);
            CHECK(g >= 0);
            CHECK(g <= 1);
            if (std::abs(z - 1.0) >= delta / 2) CHECK(g == 1.0);
        }
        CHECK(unitalization_g(1.0, delta) == 0.0);
    }
}

TEST_CASE("unitalization pair") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CMatrix u = numkern::random_unitary(3, 500 + seed);
        for (double delta : {0.1, 0.2, 0.3}) {
            const auto p = unitalization_pair(u, delta);
            CHECK(check_balanced(p.a, p.b, 1e-8).balanced());
            // c = 1 + g^2 (f - 1) = f(u) since f = 1 wherever g < 1.
            const CMatrix fu = numkern::func_calc_unitary(u, [delta](Complex z) { return unitalization_f(z, delta); });
            CHECK(opnorm(make_c(p.a, p.b) - fu) < 1e-10);
            CHECK(opnorm(fu - u) < delta);
        }
    }
    const CMatrix u = numkern::random_unitary(2, 1);
    CHECK_THROWS_AS(unitalization_pair(u, 0.0), PreconditionError);
    CHECK_THROWS_AS(unitalization_pair(u, 0.34), PreconditionError);
    CHECK_THROWS_AS(unitalization_pair(2.0 * u, 0.2), PreconditionError);
}
