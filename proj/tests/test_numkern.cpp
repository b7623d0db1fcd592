#include "balk1/numkern.hpp"

#include <doctest.h>

#include <cmath>

using namespace balk1;
using namespace balk1::numkern;

TEST_CASE("operator norm against closed forms") {
    CMatrix d = CMatrix::Zero(3, 3);
    d.diagonal() << Complex(0.5, 0), Complex(0, -2), Complex(1, 1);
    CHECK(opnorm(d) == doctest::Approx(2.0).epsilon(1e-12));
    // Rank one: |u v*| = |u| |v|.
    CMatrix u(3, 1), v(2, 1);
    u << 1.0, Complex(0, 2), 2.0;
    v << 3.0, 4.0;
    CHECK(opnorm(u * v.adjoint()) == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(opnorm(CMatrix::Zero(4, 2)) == 0.0);
    const CMatrix g = random_gaussian(7, 4, 3);
    CHECK(opnorm(g) == doctest::Approx(singular_values(g)(0)).epsilon(1e-10));
    CHECK(opnorm(g.adjoint()) == doctest::Approx(opnorm(g)).epsilon(1e-10));
}

TEST_CASE("singular value decomposition reconstructs") {
    const CMatrix g = random_gaussian(5, 3, 9);
    const SVD s = svd(g);
    CHECK((s.U * s.sigma.cast<Complex>().asDiagonal() * s.V.adjoint() - g).norm() < 1e-12);
    for (Eigen::Index k = 1; k < s.sigma.size(); ++k) CHECK(s.sigma(k - 1) >= s.sigma(k));
}

TEST_CASE("basic algebra") {
    const CMatrix x = random_gaussian(2, 2, 1), y = random_gaussian(3, 3, 2);
    const CMatrix s = direct_sum(x, y);
    CHECK(s.rows() == 5);
    CHECK((s.topLeftCorner(2, 2) - x).norm() == 0.0);
    CHECK((s.bottomRightCorner(3, 3) - y).norm() == 0.0);
    CHECK(s.topRightCorner(2, 3).norm() == 0.0);
    CHECK((adjoint(adjoint(x)) - x).norm() == 0.0);
    CHECK((matmul(x, identity(2)) - x).norm() == 0.0);
    CHECK((add(x, scale(x, -1.0))).norm() == 0.0);
}

TEST_CASE("Haar unitaries") {
    const CMatrix u = random_unitary(6, 42);
    CHECK(unitarity_defect(u) < 1e-13);
    CHECK((random_unitary(6, 42) - u).norm() == 0.0);
    CHECK((random_unitary(6, 43) - u).norm() > 0.1);
    // The first column is uniform on the sphere, so the mean of |u_00|^2 over seeds is 1/d.
    double mean = 0;
    const int runs = 2000;
    for (int s = 0; s < runs; ++s) mean += std::norm(random_unitary(4, 1000 + s)(0, 0));
    CHECK(mean / runs == doctest::Approx(0.25).epsilon(0.08));
}

TEST_CASE("functional calculus of a unitary") {
    const CMatrix u = random_unitary(5, 7);
    CHECK((func_calc_unitary(u, [](Complex z) { return z; }) - u).norm() < 1e-12);
    CHECK((func_calc_unitary(u, [](Complex z) { return z * z; }) - u * u).norm() < 1e-12);
    CHECK((func_calc_unitary(u, [](Complex z) { return std::conj(z); }) - u.adjoint()).norm() < 1e-12);
    CHECK_THROWS_AS(func_calc_unitary(2.0 * u, [](Complex z) { return z; }), PreconditionError);
}

TEST_CASE("functional calculus of a self-adjoint matrix") {
    const CMatrix g = random_gaussian(4, 4, 5);
    const CMatrix h = g.adjoint() * g;
    const CMatrix r = func_calc_hermitian(h, [](double x) { return std::sqrt(std::max(x, 0.0)); });
    CHECK((r * r - h).norm() < 1e-10 * h.norm());
    CHECK(hermiticity_defect(r) < 1e-12);
    CHECK_THROWS_AS(func_calc_hermitian(g, [](double x) { return x; }), PreconditionError);
}

TEST_CASE("projections") {
    const CMatrix u = random_unitary(4, 11);
    CMatrix d = CMatrix::Zero(4, 4);
    d.diagonal() << 1.0, 1.0, 0.0, 0.0;
    const CMatrix p = u * d * u.adjoint();
    const CMatrix noisy = p + 0.01 * (random_gaussian(4, 4, 12) + random_gaussian(4, 4, 12).adjoint());
    const CMatrix q = nearest_projection(noisy);
    CHECK((q * q - q).norm() < 1e-12);
    CHECK((q - p).norm() < 0.05);
    CHECK(std::abs(q.trace().real() - 2.0) < 1e-12);
    CHECK((spectral_projection(p, 0.5) - p).norm() < 1e-12);

    CMatrix half = CMatrix::Zero(2, 2);
    half.diagonal() << 1.0, 0.55;
    CHECK_THROWS_AS(nearest_projection(half), SpectralGapError);
}

TEST_CASE("smooth step") {
    CHECK(smooth_step(-1.0) == 0.0);
    CHECK(smooth_step(0.0) == 0.0);
    CHECK(smooth_step(1.0) == 1.0);
    CHECK(smooth_step(2.0) == 1.0);
    CHECK(smooth_step(0.5) == doctest::Approx(0.5));
    double prev = 0;
    for (int k = 1; k <= 100; ++k) {
        const double v = smooth_step(k / 100.0);
        CHECK(v >= prev);
        prev = v;
    }
    // Flat at the ends.
    CHECK(smooth_step(1e-3) < 1e-100);
}
