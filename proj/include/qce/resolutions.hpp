#pragma once

// Non-commutative Shannon construction on resolutions of the identity, the
// refinement order between resolutions, and the "more mixed" order on states.

#include <string>
#include <vector>

#include "qce/shannon.hpp"

namespace qce {

/// Normalized trace tr(A) / dim, so that tau(I) = 1.
Complex normalized_trace(const ComplexMatrix& a);

/// p_i = tau(P_i), q_j = tau(Q_j), p_{i|j} = tau(P_i Q_j) / tau(Q_j),
/// q_{j|i} = tau(Q_j P_i) / tau(P_i). Always valid partition data, even for
/// non-commuting families.
ClassicalPartitionData bayes_data(const IdentityResolution& p, const IdentityResolution& q);

/// H(P) = S_cl(tau(P_i)).
double resolution_entropy(const IdentityResolution& p);
/// H(P | Q) via the induced partition data.
double resolution_cond_entropy(const IdentityResolution& p, const IdentityResolution& q);
/// H(P, Q) = H(Q) + H(P | Q); symmetric in P and Q.
double resolution_joint_entropy(const IdentityResolution& p, const IdentityResolution& q);

/// Result of testing P <= Q: every P_i lies under exactly one Q_{j(i)} and
/// every j is hit.
struct OrderWitness {
    bool holds = false;
    std::vector<std::size_t> assignment;  // j(i), filled when holds
    std::string violation;                // reason, filled otherwise
};

/// P_i <= Q_j is tested as |Q_j P_i - P_i|_max <= tol.orth.
OrderWitness resolution_leq(const IdentityResolution& p, const IdentityResolution& q, const Tolerances& tol = {});

/// rho is dominated by sigma ("sigma is more mixed than rho"): the spectral
/// resolution of rho refines that of sigma and tr(rho Q_j) = sigma_j tr(Q_j)
/// within 1e-8 for every block of sigma.
bool density_more_mixed(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol = {});

/// Dimension of the commutant of rho, sum_i (rank P_i)^2.
Index commutant_dim(const DensityMatrix& rho, const Tolerances& tol = {});

/// H(P(rho) | Q(sigma)) over the canonical resolutions.
double res_cond_of_densities(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol = {});
/// H(P(rho), Q(sigma)).
double res_joint_of_densities(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol = {});
/// H(P(rho)); the entropy this functional measures states with.
double res_entropy_of_density(const DensityMatrix& rho, const Tolerances& tol = {});

/// X is a consequence of Y: every column b with q_b > 0 of p_given_q has an
/// entry equal to one within tol.
bool is_consequence(const ClassicalPartitionData& data, double tol = kClassicalTol);
/// p_{a|b} = p_a for every a and every b with q_b > 0.
bool is_independent(const ClassicalPartitionData& data, double tol = kClassicalTol);

}  // namespace qce
