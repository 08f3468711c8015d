#pragma once

// Maximization of F(rho, Q) over rank-n projectors by ascent along the
// unitary orbit Q -> exp(i eta G) Q exp(-i eta G).

#include <cstdint>
#include <span>
#include <vector>

#include "qce/entropy.hpp"

namespace qce {

struct OptimizeConfig {
    double step_init = 0.5;
    double armijo_c = 1e-4;
    double shrink = 0.5;
    double grad_tol = 1e-7;
    int max_iters = 2000;
    int restarts = 8;
    std::uint64_t seed = 20240601;

    /// Throws InvalidConfig on out-of-range fields.
    void validate() const;

    friend bool operator==(const OptimizeConfig&, const OptimizeConfig&) = default;
};

struct OptimizeResult {
    Projector best_Q = Projector::identity(1);
    double best_F = 0.0;
    double grad_norm = 0.0;
    int iters = 0;                      // iterations of the winning restart
    std::vector<double> restart_values; // final F of every restart
    double commutation_residual = 0.0;  // |[rho, best_Q]|_max
    bool converged = false;             // grad_tol met by the winning restart
    std::vector<double> history;        // accepted F values of the winning restart
};

/// G = i[B, rho], B = ln(t) Q - Q ln(Q rho Q) Q with the logarithm taken on
/// range(Q). The derivative of F(exp(-isK) rho exp(isK), Q) at s = 0 is tr(G K),
/// so G vanishes exactly at the stationary points.
ComplexMatrix variational_gradient(const DensityMatrix& rho, const Projector& q, const Tolerances& tol = {});

/// F_n(rho) = sup over rank-n Q of F(rho, Q). Requires min eigenvalue > 1e-6.
/// Failure to reach grad_tol is reported through `converged`, not thrown.
OptimizeResult maximize_F_n(const DensityMatrix& rho, Index n, const OptimizeConfig& cfg = {},
                            const Tolerances& tol = {});

struct LemmaRankEntry {
    Index rank = 0;
    double best_F = 0.0;
    double gap = 0.0;  // S(rho) - F_n
    bool converged = false;
};

struct LemmaReport {
    double entropy = 0.0;
    std::vector<LemmaRankEntry> ranks;  // n = 1, ..., dim - 1
    double min_gap = 0.0;
    bool strict = false;                // every gap > 0
};

/// F_n(rho) < S(rho) for every n < dim, with the observed margins.
LemmaReport verify_lemma_FS(const DensityMatrix& rho, const OptimizeConfig& cfg = {}, const Tolerances& tol = {});

struct DeltaPatternEntry {
    std::vector<Index> pattern;  // block ranks
    std::vector<double> weights; // optimal rank_i * rho_i
    double delta_s = 0.0;        // supremum over this pattern's simplex
    bool attained = false;       // optimum has pairwise distinct eigenvalues
};

struct DeltaProbeConfig {
    double split = 1e-4;      // eigenvalue separation used to realize a non-attained supremum
    double bisect_tol = 1e-15;

    friend bool operator==(const DeltaProbeConfig&, const DeltaProbeConfig&) = default;
};

struct DeltaProbeResult {
    Index dim = 0;
    double delta_s = 0.0;         // best supremum over all patterns
    std::vector<Index> pattern;   // pattern achieving it
    bool attained = false;
    DensityMatrix rho = DensityMatrix::maximally_mixed(1);  // a state with the pattern, at (or next to) the optimum
    double delta_s_at_rho = 0.0;  // S(rho) - S(rho|rho) evaluated on `rho`
    std::vector<DeltaPatternEntry> patterns;
};

/// Every degeneracy pattern (integer partition of dim, parts descending).
std::vector<std::vector<Index>> integer_partitions(Index dim);

/// For a fixed pattern d, Delta S as a function of the block weights w is
/// -sum w_i ln(w_i / d_i) - sum w_i^2 ln d_i, strictly concave on the simplex;
/// its maximizer is found from the stationarity condition by bisection on the
/// multiplier.
DeltaPatternEntry maximize_delta_pattern(std::span<const Index> pattern, const DeltaProbeConfig& cfg = {});

/// Maximum of S(rho) - S(rho|rho) over all patterns. The pattern optimum is
/// attained only when its eigenvalues are pairwise distinct; otherwise `rho`
/// splits them by cfg.split.
DeltaProbeResult probe_max_deltaS(Index dim, const DeltaProbeConfig& cfg = {});

}  // namespace qce
