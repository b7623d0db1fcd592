#pragma once

// Fredholm index engines for truncated operators and the relative index of a K-balanced
// pair: the definition through an auxiliary operator C, the one-operator form on H1, the
// global form 1 + B*(A - B), and the full symbol-to-index pipeline.
//
// A finite square matrix always has index 0, so both engines localize: kernel and
// cokernel contributions are weighted by a positive operator W that keeps the interior
// modes and discards the truncation boundary. Genuine kernel vectors of a Toeplitz-type
// operator sit at low |n|; the spurious ones created by truncation sit near |n| = N.

#include "balk1/exec.hpp"
#include "balk1/loops.hpp"
#include "balk1/opmodel.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace balk1::relindex {

using numkern::CMatrix;
using opmodel::Half;
using opmodel::ModeSplit;
using opmodel::NamedValue;
using opmodel::TruncOp;

struct EngineResult {
    int index = 0;
    double raw = 0;      // unrounded weighted count or trace
    double residue = 0;  // |raw - index|
};

/// Interior weight for a plain matrix: the projection onto the leading half of the
/// coordinates (indices < ceil(n/2)).
CMatrix leading_half_weight(Eigen::Index n);

/// Singular-value counting. Right singular vectors with sigma < threshold count as kernel,
/// left ones as cokernel, each weighted by v* W v (W = leading_half_weight when null).
/// Throws SpectralGapError for a singular value in [threshold, gap_factor threshold) and
/// PreconditionError if the weighted count is not within 0.2 of an integer.
EngineResult fredholm_index_svd(const CMatrix& F, double threshold = 1e-6, const CMatrix* weight = nullptr,
                                double gap_factor = 10);

/// Tr W[(1 - F*F)^p - (1 - FF*)^p]. Throws PreconditionError if a defect norm exceeds
/// defect_max or the residue is not below residue_max.
EngineResult fredholm_index_fedosov(const CMatrix& F, int p = 2, const CMatrix* weight = nullptr,
                                    double residue_max = 0.2, double defect_max = 1.2);

/// Interior modes |n| <= N/2 of one half, as a diagonal 0/1 matrix.
CMatrix interior_weight(int modes, Eigen::Index dim, Half half);

struct EngineOptions {
    double svd_threshold = 1e-2;
    double gap_factor = 10;
    int fedosov_p = 2;
    double residue_max = 0.2;
    double defect_max = 1.2;
};

/// Both engines on one operator given per half, with per-half weights; indices are summed.
/// Throws Error on disagreement.
struct Candidate {
    std::string name;
    int index = 0;
    int index_svd = 0;
    int index_fedosov = 0;
    double residue_svd = 0;
    double residue_fedosov = 0;
};
Candidate index_of(std::string name, const std::array<CMatrix, 2>& F, const std::array<CMatrix, 2>& W,
                   const EngineOptions& opts = {});

enum class CTag { ARestricted, BRestricted, Custom };
std::string to_string(CTag tag);

/// C : H1 -> H as ambient coordinates per half (ambient x rank P).
struct CChoice {
    CTag tag = CTag::ARestricted;
    std::optional<std::array<CMatrix, 2>> op;  // only for Custom
};

struct CCheck {
    std::vector<NamedValue> residuals;  // (C1) in norm; (C2), (C3) in the tail seminorm
    double epsilon = 0;
    bool pass = false;
};
/// (C1)-(C3) against both X = A and X = B.
CCheck check_c(const TruncOp& A, const TruncOp& B, const ModeSplit& split, const CChoice& choice,
               const opmodel::TailCutoff& cut, double epsilon);

struct RelIndex {
    int value = 0;
    std::vector<Candidate> candidates;
};

/// ind(C* A|H1) - ind(C* B|H1).
RelIndex rel_index(const TruncOp& A, const TruncOp& B, const ModeSplit& split, const CChoice& choice,
                   const EngineOptions& opts = {});
/// ind(1 + B1*(A1 - B1)) on H1.
RelIndex rel_index_corollary(const TruncOp& A, const TruncOp& B, const ModeSplit& split,
                             const EngineOptions& opts = {});
/// ind(1 + B*(A - B)) on the whole truncated space.
RelIndex rel_index_global(const TruncOp& A, const TruncOp& B, const EngineOptions& opts = {});

struct PipelineOptions {
    int modes = 128;
    bool check_doubling = true;  // repeat at 2 * modes and require identical indices
    int grid = 0;                // informational; the symbol pair carries its grid
    opmodel::QuantizeOptions quantize;
    opmodel::SplitOptions split{.eta = 0.1, .symbol_plus = {}, .symbol_minus = {}, .epsilon = 0.045, .correction = true};
    int tail_cutoff = -1;  // -1: N/4
    double kbalance_tol = 0.05;
    EngineOptions engines;
    bool all_formulas = true;  // also the C-definition (both choices), corollary and antisymmetry
};

struct LevelReport {
    int modes = 0;
    int tail_cutoff = 0;
    double quantize_roundtrip = 0;
    double kbalance_max = 0;
    double theorem_H_max = 0;
    int split_rank = 0;
    int correction_rank = 0;
    int global = 0;
    std::optional<int> def_a, def_b, corollary, swapped;
    std::vector<Candidate> candidates;
    double candidate_defect = 0;  // tail seminorm of 1 - F*F and 1 - FF*, F = 1 + B*(A-B)
};

struct IndexReport {
    int analytic_svd = 0;
    int analytic_fedosov = 0;
    int topological = 0;
    std::vector<LevelReport> levels;
    std::vector<NamedValue> residuals;
    bool pass = false;
    std::string failure;  // empty on pass
};

/// quantize, clip, kbalance, split, theorem-H, index, topology. A stage that throws is
/// re-raised as StageError naming the stage.
IndexReport verify_index_theorem(const loops::SymbolPair& sp, const PipelineOptions& opts = {});

struct SweepRow {
    int p = 0;
    int q = 0;
    IndexReport report;
    std::string error;
};
/// circle_symbol_pair(p, q, grid) for p in [p0, p1], q in [q0, q1]; instances in parallel.
std::vector<SweepRow> sweep(int p0, int p1, int q0, int q1, int grid, const PipelineOptions& opts,
                            Exec exec = Exec::Parallel);

}  // namespace balk1::relindex
