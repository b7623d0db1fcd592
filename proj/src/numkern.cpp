#include "balk1/numkern.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <random>

namespace balk1::numkern {

namespace {

void require_same_shape(const CMatrix& x, const CMatrix& y, const char* what) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw ShapeError(std::string(what) + ": shape mismatch " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + " vs " + std::to_string(y.rows()) + "x" +
                         std::to_string(y.cols()));
}

void require_square(const CMatrix& x, const char* what) {
    if (x.rows() != x.cols()) throw ShapeError(std::string(what) + ": matrix is not square");
}

}  // namespace

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix adjoint(const CMatrix& x) { return x.adjoint(); }

CMatrix matmul(const CMatrix& x, const CMatrix& y) {
    if (x.cols() != y.rows()) throw ShapeError("matmul: inner dimensions differ");
    return x * y;
}

CMatrix add(const CMatrix& x, const CMatrix& y) {
    require_same_shape(x, y, "add");
    return x + y;
}

CMatrix scale(const CMatrix& x, Complex k) { return k * x; }

CMatrix direct_sum(const CMatrix& x, const CMatrix& y) {
    CMatrix r = CMatrix::Zero(x.rows() + y.rows(), x.cols() + y.cols());
    r.topLeftCorner(x.rows(), x.cols()) = x;
    r.bottomRightCorner(y.rows(), y.cols()) = y;
    return r;
}

RVector singular_values(const CMatrix& x) {
    if (x.size() == 0) return RVector();
    return Eigen::BDCSVD<CMatrix>(x).singularValues();
}

double opnorm(const CMatrix& x) {
    if (x.size() == 0) return 0.0;
    // Largest eigenvalue of the smaller Gram matrix: about twice as fast as an SVD and
    // accurate to a few ulps relative to |x|.
    const CMatrix g = x.rows() <= x.cols() ? CMatrix(x * x.adjoint()) : CMatrix(x.adjoint() * x);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

SVD svd(const CMatrix& x) {
    Eigen::BDCSVD<CMatrix> s(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {s.matrixU(), s.singularValues(), s.matrixV()};
}

double unitarity_defect(const CMatrix& u) {
    require_square(u, "unitarity_defect");
    const CMatrix one = identity(u.rows());
    return std::max(opnorm(u.adjoint() * u - one), opnorm(u * u.adjoint() - one));
}

double hermiticity_defect(const CMatrix& x) {
    require_square(x, "hermiticity_defect");
    return opnorm(x - x.adjoint());
}

CMatrix func_calc_unitary(const CMatrix& u, const std::function<Complex(Complex)>& f, double tol) {
    require_square(u, "func_calc_unitary");
    if (u.rows() == 0) return u;
    const double defect = opnorm(u.adjoint() * u - identity(u.rows()));
    if (defect > tol)
        throw PreconditionError("func_calc_unitary: input is not unitary (|U*U - 1| = " + std::to_string(defect) +
                                ")");
    Eigen::ComplexSchur<CMatrix> schur(u);
    const CMatrix& q = schur.matrixU();
    const CMatrix& t = schur.matrixT();
    Eigen::VectorXcd values(u.rows());
    for (Eigen::Index k = 0; k < u.rows(); ++k) {
        const Complex z = t(k, k);
        values(k) = f(z / std::abs(z));
    }
    return q * values.asDiagonal() * q.adjoint();
}

CMatrix func_calc_hermitian(const CMatrix& x, const std::function<double(double)>& f, double tol) {
    require_square(x, "func_calc_hermitian");
    if (x.rows() == 0) return x;
    const double defect = hermiticity_defect(x);
    if (defect > tol)
        throw PreconditionError("func_calc_hermitian: input is not self-adjoint (|X - X*| = " +
                                std::to_string(defect) + ")");
    const CMatrix h = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    RVector fv = eig.eigenvalues().unaryExpr(f);
    return eig.eigenvectors() * fv.asDiagonal() * eig.eigenvectors().adjoint();
}

CMatrix spectral_projection(const CMatrix& x, double cut) {
    require_square(x, "spectral_projection");
    if (x.rows() == 0) return x;
    const CMatrix h = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    const auto& w = eig.eigenvalues();
    Eigen::Index first = 0;
    while (first < w.size() && w(first) <= cut) ++first;
    const auto cols = eig.eigenvectors().rightCols(w.size() - first);
    return cols * cols.adjoint();
}

CMatrix nearest_projection(const CMatrix& x, double gap, double herm_tol) {
    require_square(x, "nearest_projection");
    if (x.rows() == 0) return x;
    const double defect = hermiticity_defect(x);
    if (defect > herm_tol)
        throw PreconditionError("nearest_projection: input is not self-adjoint (|X - X*| = " +
                                std::to_string(defect) + ")");
    const CMatrix h = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    const auto& w = eig.eigenvalues();
    for (Eigen::Index k = 0; k < w.size(); ++k)
        if (std::abs(w(k) - 0.5) <= gap)
            throw SpectralGapError("nearest_projection: eigenvalue " + std::to_string(w(k)) +
                                       " inside the gap around 1/2",
                                   w(k));
    Eigen::Index first = 0;
    while (first < w.size() && w(first) < 0.5) ++first;
    const auto cols = eig.eigenvectors().rightCols(w.size() - first);
    return cols * cols.adjoint();
}

CMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n01(0.0, 1.0);
    CMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = n01(gen);
            const double im = n01(gen);
            g(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    return g;
}

CMatrix random_unitary(Eigen::Index d, std::uint64_t seed) {
    const CMatrix g = random_gaussian(d, d, seed);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases so the distribution is Haar rather than QR-biased.
    for (Eigen::Index k = 0; k < d; ++k) {
        const Complex rkk = r(k, k);
        const double m = std::abs(rkk);
        if (m > 0) q.col(k) *= rkk / m;
    }
    return q;
}

double smooth_step(double x) {
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    const double p = std::exp(-1.0 / x);
    const double q = std::exp(-1.0 / (1.0 - x));
    return p / (p + q);
}

}  // namespace balk1::numkern
