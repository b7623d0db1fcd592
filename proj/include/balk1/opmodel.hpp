#pragma once

// Truncated order-zero operators on the circle. Fourier modes -N..N tensored with C^d;
// mode 0 belongs to the Hardy (+) half. Quantized operators never couple the two halves,
// so they are stored as two blocks and every computation runs per half.

#include "balk1/exec.hpp"
#include "balk1/loops.hpp"
#include "balk1/numkern.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace balk1::opmodel {

using loops::MatrixLoop;
using loops::SymbolPair;
using numkern::CMatrix;
using numkern::Complex;

enum class Half { Plus = 0, Minus = 1 };

struct TruncOp {
    int modes = 0;  // N
    Eigen::Index dim = 0;
    CMatrix plus;   // modes 0..N, index n*d + i
    CMatrix minus;  // modes -N..-1, index (n+N)*d + i

    const CMatrix& half(Half h) const { return h == Half::Plus ? plus : minus; }
    CMatrix& half(Half h) { return h == Half::Plus ? plus : minus; }

    static TruncOp zero(int modes, Eigen::Index dim);
    static TruncOp identity(int modes, Eigen::Index dim);
    /// Full matrix on modes -N..N (ascending), block diagonal in the two halves.
    CMatrix dense() const;
    /// Inverse of dense(); rejects entries coupling the halves above cross_tol.
    static TruncOp from_dense(int modes, Eigen::Index dim, const CMatrix& m, double cross_tol = 1e-12);

    TruncOp adjoint() const;
    double opnorm() const;
};

TruncOp operator+(const TruncOp& x, const TruncOp& y);
TruncOp operator-(const TruncOp& x, const TruncOp& y);
TruncOp operator*(const TruncOp& x, const TruncOp& y);
TruncOp operator*(Complex k, const TruncOp& x);

/// Fourier coefficients c_m, |m| < grid/2, of a loop sampled on the glued interval
/// (theta = 4t): sigma(theta) = sum_m c_m exp(i m theta).
struct FourierSeries {
    int grid = 0;
    Eigen::Index dim = 0;
    std::vector<CMatrix> coeff;  // coeff[k] for m = k, k < grid/2; m = k - grid otherwise

    /// c_m, or zero when |m| >= grid/2.
    CMatrix at(int m) const;
    /// Smallest K with sqrt(sum_{|m|>K} |c_m|^2 / sum |c_m|^2) <= rel_tail.
    int bandwidth(double rel_tail = 1e-2) const;
};
FourierSeries fourier(const MatrixLoop& loop, Exec exec = Exec::Parallel);

struct QuantizeOptions {
    /// Bandwidth and round-trip checks; off for the discontinuous projection symbols.
    bool check = true;
    double bandwidth_tail = 1e-2;
    double roundtrip_tol = 0.05;
    Exec exec = Exec::Parallel;
};

struct QuantizeReport {
    int bandwidth = 0;           // max over components
    double roundtrip_error = 0;  // max over components and halves
};

/// Laurent block of the symbol's Fourier coefficients, compressed to one half.
CMatrix laurent_block(const FourierSeries& s, int modes, Half half, Exec exec = Exec::Parallel);

/// plus loop on modes >= 0, minus loop on modes < 0. Throws PreconditionError when the
/// loop is undersampled (bandwidth > grid/4 or modes < 4 bandwidth) or the symbol
/// round trip misses by more than roundtrip_tol.
TruncOp quantize_symbol(const MatrixLoop& plus, const MatrixLoop& minus, int modes, const QuantizeOptions& opts,
                        QuantizeReport* report = nullptr);

struct Quantized {
    TruncOp D1;
    TruncOp D2;
    QuantizeReport report;
};
Quantized quantize(const SymbolPair& sp, int modes, const QuantizeOptions& opts = {});

/// Singular values above 1 replaced by 1.
TruncOp clip_to_contraction(const TruncOp& d);

/// Q_M = projection onto the modes M < |n| <= N - guard. The guard band (default N/4)
/// keeps truncation-boundary artifacts out of the Calkin-norm proxy.
struct TailCutoff {
    int M = 0;
    int guard = -1;  // -1: N/4

    int guard_for(int modes) const { return guard >= 0 ? guard : modes / 4; }
};

/// Row range [first, first + count) of the window in one half.
std::pair<Eigen::Index, Eigen::Index> tail_window(int modes, Eigen::Index dim, Half half, const TailCutoff& cut);
/// max over halves of |Q_M X Q_M|. Throws PreconditionError for an empty window.
double tail_seminorm(const TruncOp& x, const TailCutoff& cut);
/// Same for an operator given on the halves of a subspace with isometries V (ambient x k).
double tail_seminorm_on(const std::array<CMatrix, 2>& y, const std::array<CMatrix, 2>& v, int modes, Eigen::Index dim,
                        const TailCutoff& cut);

struct NamedValue {
    std::string name;
    double value;
};

struct KBalanceReport {
    std::vector<int> cutoffs;                    // M, 2M (the latter when its window is non-empty)
    std::vector<std::vector<NamedValue>> table;  // residuals per cutoff
    double tol = 0.05;
    bool kbalanced = false;  // every residual <= tol at the largest cutoff
    double max_at(std::size_t k) const;
};

/// The twelve balanced-pair residuals of (A, B) in the tail seminorm, at M and (when
/// doubled) at 2M.
KBalanceReport kbalance_report(const TruncOp& A, const TruncOp& B, const TailCutoff& cut, double tol = 0.05,
                               bool doubled = true);

struct ModeSplit {
    TruncOp P;
    std::string label;
    double symbol_gap = 0;      // min distance of the quantized symbol's spectrum to 1/2
    int correction_rank = 0;    // rank added by the finite-rank correction
    double projection_residual = 0;  // max(|P^2 - P|, |P - P*|)
    std::array<CMatrix, 2> basis;    // orthonormal basis of range P per half (ambient x rank)
    Eigen::Index rank() const { return basis[0].cols() + basis[1].cols(); }
};

struct SplitOptions {
    /// Smooth step phi(x) = 0 for x <= eta^2, 1 for x >= 4 eta^2.
    double eta = 0.1;
    /// Explicit projection-valued symbols; a missing component uses phi(dd* + d*d).
    std::optional<MatrixLoop> symbol_plus;
    std::optional<MatrixLoop> symbol_minus;
    /// Directions where (1-P0)(XX* + X*X)(1-P0) >= (epsilon/4)^2, X = A - B, are added to P.
    double epsilon = 0.1;
    bool correction = true;
};

/// phi(d d* + d* d), d = sigma1 - sigma2, pointwise.
MatrixLoop split_symbol(const loops::LoopPair& lp, double eta);
/// t -> U(t)* diag(1, 0) U(t).
MatrixLoop subbundle_symbol(int grid);

ModeSplit splitting_projection(const SymbolPair& sp, const TruncOp& A, const TruncOp& B, const SplitOptions& opts = {},
                               const QuantizeOptions& qopts = {});
/// ModeSplit from a given projection (e.g. identity or zero).
ModeSplit split_from_projection(const TruncOp& P, std::string label);

struct BlockReport {
    std::vector<NamedValue> blocks;
    double epsilon = 0;
    bool degenerate = false;  // H1 or H2 is zero
    bool pass = false;
    double max() const;
};

/// Differences: blocks (1,2), (2,1), (2,2) of A - B in operator norm. Defects 1-A*A, 1-AA*,
/// 1-B*B, 1-BB*: blocks (1,1), (1,2), (2,1) in the tail seminorm. Pass iff all < epsilon.
BlockReport verify_theorem_H(const TruncOp& A, const TruncOp& B, const ModeSplit& split, const TailCutoff& cut,
                             double epsilon);

/// With A11 = PAP and 1 = P on H1, in the tail seminorm:
/// |A11*A11 - B11*B11|, |A11A11* - B11B11*| < 2 eps;
/// |(B11-A11)(1-A11*A11)|, |(B11-A11)*(1-A11A11*)| < 4 eps.
BlockReport verify_block_estimates(const TruncOp& A, const TruncOp& B, const ModeSplit& split, const TailCutoff& cut,
                                   double epsilon);

}  // namespace balk1::opmodel
