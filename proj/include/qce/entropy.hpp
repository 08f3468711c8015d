#pragma once

// Entropy functionals on density matrices. All values are in nats.
//
// Notation used in the comments below: for a projector Q and a state rho,
// t = tr(Q rho Q) and the compression entropy is
//     F(rho, Q) = -tr(Q rho Q ln Q rho Q) + t ln t,
// the entropy the block Q rho Q would carry after normalization, weighted by t.

#include <cstddef>
#include <vector>

#include "qce/matcore.hpp"

namespace qce {

/// Non-negative weights summing to one within tol.trace.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> weights, const Tolerances& tol = {});

    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
    [[nodiscard]] double operator[](std::size_t k) const { return weights_[k]; }

    friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

private:
    std::vector<double> weights_;
};

struct BlockTerm {
    std::size_t block = 0;   // index into the conditioning resolution
    double weight = 0.0;     // tr(Q_j sigma)
    double factor = 0.0;     // F(rho, Q_j)

    friend bool operator==(const BlockTerm&, const BlockTerm&) = default;
};

struct EntropyBreakdown {
    double total = 0.0;
    std::vector<BlockTerm> per_block;

    friend bool operator==(const EntropyBreakdown&, const EntropyBreakdown&) = default;
};

/// Which algebraic route cond_entropy takes through each block. All three
/// agree mathematically; they exist so the routes can cross-check each other.
enum class CondFormula {
    Compression,  // sum_j tr(Q_j sigma) F(rho, Q_j)
    Normalized,   // sum_j tr(Q_j sigma) tr(Q_j rho) S(rho_{Q_j})
    Relative,     // -sum_j tr(Q_j sigma) S_rel(Q_j rho Q_j, tr(Q_j rho Q_j) I)
};

double vn_entropy(const DensityMatrix& rho);
double classical_entropy(const ProbabilityVector& p);
/// Shannon entropy of raw non-negative weights, no normalization check.
double classical_entropy(std::span<const double> weights);

/// tr A (ln A - ln B); +infinity when support(A) is not inside support(B).
double relative_entropy(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});

/// F(rho, Q), evaluated on the rank x rank block of Q rho Q. Zero when
/// tr(Q rho Q) <= tol.support and exactly zero for rank-one Q.
double compression_entropy(const DensityMatrix& rho, const Projector& q, const Tolerances& tol = {});
/// Same quantity as tr(Q rho) S(rho_Q).
double compression_entropy_via_state(const DensityMatrix& rho, const Projector& q,
                                     const Tolerances& tol = {});
/// Same quantity as -S_rel(Q rho Q, tr(Q rho Q) I).
double compression_entropy_via_relative(const DensityMatrix& rho, const Projector& q,
                                        const Tolerances& tol = {});
/// -tr(Q rho Q ln Q rho Q) without the normalization term; always >= F.
double raw_compression_entropy(const DensityMatrix& rho, const Projector& q, const Tolerances& tol = {});

/// rho_Q = Q rho Q / tr(Q rho). Throws ZeroCompression when the trace is at or below tol.support.
DensityMatrix normalized_compression(const DensityMatrix& rho, const Projector& q, const Tolerances& tol = {});

/// S(rho | sigma) over the canonical clustered resolution of sigma.
EntropyBreakdown cond_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol = {},
                              CondFormula formula = CondFormula::Compression);

/// Closed form of S(rho | rho): sum_i rho_i^2 (rank P_i)^2 ln rank P_i.
double self_cond_entropy(const DensityMatrix& rho, const Tolerances& tol = {});

/// Closed form valid when every Q_j rho Q_j (sigma_j > 0) is a multiple of a
/// projector Q'_j: sum_j tr(Q_j rho) tr(Q_j sigma) ln rank Q'_j. Throws
/// NotApplicable otherwise.
double cond_entropy_projector_blocks(const DensityMatrix& rho, const DensityMatrix& sigma,
                                     const Tolerances& tol = {});

/// Closed form for commuting rho and sigma in terms of both spectral
/// resolutions. Throws NotCommuting when |[rho, sigma]|_max > 1e-8.
double cond_entropy_commuting(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol = {});

/// S(rho | Q) = sum_j (rank Q_j / dim) F(rho, Q_j) for an eigenvalue-free resolution.
double cond_entropy_resolution(const DensityMatrix& rho, const IdentityResolution& q, const Tolerances& tol = {});

/// sum_j Q_j rho Q_j.
DensityMatrix pinch(const DensityMatrix& rho, const IdentityResolution& q, const Tolerances& tol = {});

/// S(sigma) + S(rho | sigma).
double joint_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol = {});
/// S(rho) - S(rho | sigma).
double info_gain(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol = {});
/// S(rho) - S(rho | rho).
double self_info_gain(const DensityMatrix& rho, const Tolerances& tol = {});

/// Eigenvalues repeated with multiplicity (length dim).
ProbabilityVector spectrum_distribution(const DensityMatrix& rho, const Tolerances& tol = {});
/// One weight rank(P_i) * rho_i per distinct eigenvalue.
ProbabilityVector block_distribution(const DensityMatrix& rho, const Tolerances& tol = {});
/// sum_i rank(P_i) rho_i ln rank(P_i); S(rho) = S_cl(block_distribution) + this.
double degeneracy_correction(const DensityMatrix& rho, const Tolerances& tol = {});

}  // namespace qce
