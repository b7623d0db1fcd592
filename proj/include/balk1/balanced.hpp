#pragma once

// Balanced pairs of contraction matrices, the unitary c(a,b) = 1 + b*(a-b), the explicit
// homotopies between balanced pairs, and the construction that moves a unitary into a
// non-unital corner.

#include "balk1/exec.hpp"
#include "balk1/numkern.hpp"

#include <array>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace balk1::balanced {

using numkern::CMatrix;
using numkern::Complex;

struct BalancedPair {
    CMatrix a;
    CMatrix b;
    double tol = 1e-10;
};

struct NamedValue {
    std::string name;
    double value;
};

struct BalanceReport {
    double tol = 0;
    double norm_a = 0;
    double norm_b = 0;
    /// |a*a - b*b|, |aa* - bb*|, |a(1-a*a) - b(1-b*b)|, |(1-aa*)a - (1-bb*)b|
    std::array<double, 4> rel1{};
    /// |(a-b)d| and |d(a*-b*)| for d = 1-a*a, 1-b*b; |(a*-b*)d| and |d(a-b)| for d = 1-aa*, 1-bb*
    std::array<double, 8> rel2{};

    bool contractions() const { return norm_a <= 1 + tol && norm_b <= 1 + tol; }
    bool rel1_holds() const;
    bool rel2_holds() const;  // within 6 tol
    /// Contractions and the four rel1 residuals within tol.
    bool balanced() const { return contractions() && rel1_holds(); }
    /// Largest rel1/rel2 residual, plus any excess of the norms over 1.
    double max_residual() const;
    std::vector<NamedValue> named() const;
};

BalanceReport check_balanced(const CMatrix& a, const CMatrix& b, double tol);

CMatrix make_c(const CMatrix& a, const CMatrix& b);

struct CPropertiesReport {
    std::vector<NamedValue> residuals;
    double max() const;
};
/// Unitarity of c and of 1 + (a-b)b*, bc - a, [b*b, c], (1-b*b)(c-1), (c-1)(1-b*b).
CPropertiesReport verify_c_properties(const CMatrix& a, const CMatrix& b);

enum class PathKind { LinearTrivial, Swap, Adjoint, IotaKappa };
std::string_view to_string(PathKind kind);
PathKind path_kind_from_string(std::string_view name);

/// Parameter interval of every path is [0, kPathEnd].
inline constexpr double kPathEnd = std::numbers::pi / 2;

/// Rotation [[cos t, -sin t], [sin t, cos t]] acting blockwise on n (+) n.
CMatrix rotation(double t, Eigen::Index n);

struct PathPoint {
    CMatrix A;
    CMatrix B;
};

/// linear-trivial: (s a, s a) with s = t / kPathEnd; needs a = b within tol.
/// swap:       A = a (+) b,                B_t = U_t* (a (+) b) U_t.
/// adjoint:    A_t = (a (+) 1) U_t* (1 (+) a*) U_t,  B_t likewise with b.
/// iota-kappa: A = c (+) b,                B_t = (1 (+) b) U_t* (1 (+) c) U_t, c = c(a,b).
PathPoint homotopy_eval(PathKind kind, const CMatrix& a, const CMatrix& b, double t, double tol = 1e-10);

struct PathReport {
    PathKind kind;
    int grid = 0;
    double max_residual = 0;
    double worst_t = 0;
    bool pass = false;
};

/// check_balanced at grid equally spaced points of [0, kPathEnd] (both ends included).
PathReport validate_path(PathKind kind, const CMatrix& a, const CMatrix& b, int grid, double tol,
                         Exec exec = Exec::Parallel);

struct FiniteSplit {
    CMatrix P1;      // support of (1-a*a) + (1-aa*)
    CMatrix P_in;    // support of 1-a*a
    CMatrix P_out;   // support of 1-aa*
    // One frame V1 = range P1 for domain and codomain.
    double residual_defect_offblock = 0;
    double residual_diff_onblock = 0;
    // Domain frame range P_in, codomain frame range P_out.
    double residual_defect_offblock_two_sided = 0;
    double residual_diff_onblock_two_sided = 0;
    double bound = 0;  // 10 tol + threshold

    bool single_frame_holds() const {
        return residual_defect_offblock <= bound && residual_diff_onblock <= bound;
    }
    bool two_sided_holds() const {
        return residual_defect_offblock_two_sided <= bound && residual_diff_onblock_two_sided <= bound;
    }
};

/// Throws SpectralGapError if a defect eigenvalue lies in [threshold, 10 threshold].
FiniteSplit finite_split(const CMatrix& a, const CMatrix& b, double tol, double threshold = 1e-8);

/// Unimodular f with f = 1 on |z-1| <= delta/2 and |f(z) - z| < delta.
Complex unitalization_f(Complex z, double delta);
/// Smooth g with g(1) = 0, 0 <= g <= 1, and g = 1 on |z-1| >= delta/2.
double unitalization_g(Complex z, double delta);

/// (f(u)g(u), g(u)). Requires u unitary within 1e-8 and delta in (0, 1/3).
BalancedPair unitalization_pair(const CMatrix& u, double delta);

/// a = W1*(x (+) u)W2, b = W1*(x (+) v)W2 with x a strict contraction of size `rank` and
/// u, v unitary; rank < 0 picks it from the seed.
BalancedPair random_balanced_pair(Eigen::Index dim, std::uint64_t seed, int rank = -1);

}  // namespace balk1::balanced
