#pragma once

// Dense complex matrix helpers on top of Eigen.

#include "balk1/errors.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>

namespace balk1::numkern {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

CMatrix identity(Eigen::Index n);
CMatrix adjoint(const CMatrix& x);
CMatrix matmul(const CMatrix& x, const CMatrix& y);
CMatrix add(const CMatrix& x, const CMatrix& y);
CMatrix scale(const CMatrix& x, Complex k);
CMatrix direct_sum(const CMatrix& x, const CMatrix& y);

/// Largest singular value.
double opnorm(const CMatrix& x);
/// Singular values in decreasing order.
RVector singular_values(const CMatrix& x);

struct SVD {
    CMatrix U;
    RVector sigma;  // decreasing
    CMatrix V;      // x = U diag(sigma) V*
};
SVD svd(const CMatrix& x);

/// max(|U*U - 1|, |UU* - 1|).
double unitarity_defect(const CMatrix& u);
double hermiticity_defect(const CMatrix& x);

/// f(U) through the Schur form (diagonal for normal U). Throws PreconditionError unless
/// |U*U - 1| <= tol.
CMatrix func_calc_unitary(const CMatrix& u, const std::function<Complex(Complex)>& f, double tol = 1e-8);

/// f(X) for self-adjoint X; X is symmetrized first. Throws PreconditionError unless
/// |X - X*| <= tol.
CMatrix func_calc_hermitian(const CMatrix& x, const std::function<double(double)>& f, double tol = 1e-8);

/// Spectral projection of the self-adjoint part of X onto eigenvalues > cut. No gap check.
CMatrix spectral_projection(const CMatrix& x, double cut);

/// Rounds an approximate projection: spectral projection onto eigenvalues > 1/2. Throws
/// SpectralGapError if an eigenvalue lies in [1/2 - gap, 1/2 + gap].
CMatrix nearest_projection(const CMatrix& x, double gap = 0.1, double herm_tol = 1e-8);

/// Haar-distributed unitary, deterministic in the seed.
CMatrix random_unitary(Eigen::Index d, std::uint64_t seed);
/// Entries i.i.d. standard complex Gaussian.
CMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x);

}  // namespace balk1::numkern
