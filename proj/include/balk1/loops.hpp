#pragma once

// Matrix-valued loops on the circle, parameterized by t in [0, pi/2] with the two ends
// glued, balanced loop pairs, winding numbers and the topological index of a symbol pair.

#include "balk1/exec.hpp"
#include "balk1/numkern.hpp"

#include <functional>
#include <numbers>
#include <vector>

namespace balk1::loops {

using numkern::CMatrix;
using numkern::Complex;

inline constexpr double kLoopEnd = std::numbers::pi / 2;

using ScalarLoop = std::function<Complex(double)>;
using MatrixFunction = std::function<CMatrix(double)>;

/// Samples at t_k = (pi/2) k / grid, k = 0 .. grid-1; sample 0 stands for both ends.
struct MatrixLoop {
    int grid = 0;
    Eigen::Index dim = 0;
    std::vector<CMatrix> samples;

    double t(int k) const { return kLoopEnd * k / grid; }
    /// Largest |X(t_{k+1}) - X(t_k)|, including the step across the glue point.
    double max_jump() const;
    MatrixLoop adjoint() const;

    static MatrixLoop sample(const MatrixFunction& f, int grid, Exec exec = Exec::Parallel);
    static MatrixLoop constant(const CMatrix& x, int grid);
};

struct LoopPair {
    MatrixLoop sigma1;
    MatrixLoop sigma2;
    double tol = 1e-10;
};

/// Symbol on the cosphere bundle of the circle: one loop pair per cotangent direction.
struct SymbolPair {
    LoopPair plus;
    LoopPair minus;
    Eigen::Index dim() const { return plus.sigma1.dim; }
    int grid() const { return plus.sigma1.grid; }
};

/// Largest pointwise check_balanced residual over the samples.
double max_balance_residual(const LoopPair& lp, Exec exec = Exec::Parallel);

/// Default continuity budget for sampled loops: a larger jump between neighbouring samples
/// means the loop is undersampled.
inline constexpr double kDefaultJumpBudget = 0.5;

/// a(t) = U(t)* diag(alpha, gamma) U(t), b(t) = U(t)* diag(beta, gamma) U(t).
/// Requires alpha, beta, gamma equal to 1 at both ends, |alpha| = |beta| = 1 and
/// |gamma| < 1 strictly inside. Throws PreconditionError otherwise or if the result is not
/// balanced within tol.
LoopPair example_4_1(const ScalarLoop& alpha, const ScalarLoop& beta, const ScalarLoop& gamma, int grid,
                     double tol = 1e-10, double jump_budget = kDefaultJumpBudget);

/// t -> exp(4 i p t): p full turns over the glued interval.
ScalarLoop turns(int p);
/// t -> 1 - sin(2t)/2.
ScalarLoop default_gamma();

/// Plus component from example_4_1(turns(p), turns(q), default_gamma()), minus component
/// the constant pair (1, 1).
SymbolPair circle_symbol_pair(int p, int q, int grid, double tol = 1e-10);

struct Winding {
    int value = 0;
    double residue = 0;      // distance of the phase sum / 2 pi to value
    double min_modulus = 0;  // smallest |f| on the grid
};

/// Winding number of a closed sampled curve. Throws PreconditionError if some |f| is below
/// min_modulus or a phase step reaches pi, and if the residue is not below 0.1.
Winding winding(const std::vector<Complex>& f, double min_modulus);
Winding winding(const ScalarLoop& f, int grid, double min_modulus);

struct TopoIndex {
    int index = 0;  // wind(det c_minus) - wind(det c_plus)
    int wind_plus = 0;
    int wind_minus = 0;
    double unitarity_defect = 0;
};

/// c = 1 + sigma2*(sigma1 - sigma2) pointwise; checks c is unitary within 50 tol.
TopoIndex topo_index(const SymbolPair& sp);

enum class VanishingProfile { Bump, Zero, One };

/// Scalar pair (h alpha, h) with h(0) = 0: h rises to a plateau of height 1, alpha = 1
/// wherever h < 1 and alpha winds once on the plateau.
LoopPair vanishing_point_pair(int grid, VanishingProfile profile = VanishingProfile::Bump);

LoopPair direct_sum(const LoopPair& x, const LoopPair& y);
SymbolPair direct_sum(const SymbolPair& x, const SymbolPair& y);
LoopPair swapped(const LoopPair& lp);
SymbolPair swapped(const SymbolPair& sp);

}  // namespace balk1::loops
