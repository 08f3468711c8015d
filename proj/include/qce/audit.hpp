#pragma once

// Axiom audit of conditional-entropy functionals on random ensembles, the
// Shannon and pinching sweeps, and the worked examples as numeric probes.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qce/entropy.hpp"
#include "qce/random.hpp"
#include "qce/resolutions.hpp"

namespace qce {

enum class FunctionalId {
    SCond,             // S(rho | sigma)
    HResOfDensities,   // H(P(rho) | Q(sigma))
};

std::string_view to_string(FunctionalId id);
std::optional<FunctionalId> parse_functional(std::string_view name);

enum class RankProfile { Full, RandomRank };

std::string_view to_string(RankProfile profile);
std::optional<RankProfile> parse_rank_profile(std::string_view name);

struct EnsembleConfig {
    std::vector<Index> dims{2, 3, 4};
    int trials = 100;
    std::uint64_t seed = 1;
    RankProfile rank_profile = RankProfile::Full;
    double gap_floor = 1e-3;

    /// Throws InvalidConfig unless trials >= 1, dims nonempty and all >= 2.
    void validate() const;

    friend bool operator==(const EnsembleConfig&, const EnsembleConfig&) = default;
};

/// The functional's value f(rho | sigma).
double functional_value(FunctionalId id, const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Tolerances& tol = {});
/// The entropy the functional pairs with: S(rho) or H(P(rho)).
double functional_entropy(FunctionalId id, const DensityMatrix& rho, const Tolerances& tol = {});
/// E(sigma) + f(rho | sigma).
double functional_joint(FunctionalId id, const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Tolerances& tol = {});

enum class Verdict { HoldsOnSample, FailsWithWitness };

std::string_view to_string(Verdict v);

/// Everything needed to recompute one violation: the raw input matrices and
/// scalar parameters of the condition, plus the values observed.
struct Witness {
    std::string condition;
    std::uint64_t seed = 0;   // per-trial seed the inputs were drawn from
    std::size_t trial = 0;
    Index dim = 0;
    std::vector<ComplexMatrix> inputs;
    std::vector<double> params;
    std::vector<double> values;  // functional evaluations, condition specific
    double violation = 0.0;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct ConditionEntry {
    std::string condition;
    std::string description;
    Verdict verdict = Verdict::HoldsOnSample;
    double max_violation = 0.0;
    double threshold = 0.0;
    std::size_t samples = 0;
    std::size_t skipped = 0;      // draws rejected for an ambiguous clustering
    std::optional<Witness> witness;

    friend bool operator==(const ConditionEntry&, const ConditionEntry&) = default;
};

struct AuditReport {
    FunctionalId functional = FunctionalId::SCond;
    EnsembleConfig config;
    std::vector<ConditionEntry> entries;

    [[nodiscard]] const ConditionEntry* find(std::string_view condition) const;

    friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

/// Condition identifiers in report order.
const std::vector<std::string>& audit_conditions();

/// Conditions 1-6 on the ensemble; never throws on a failing condition.
AuditReport axiom_audit(FunctionalId id, const EnsembleConfig& cfg, const Tolerances& tol = {});

struct Evaluation {
    std::vector<double> values;
    double violation = 0.0;
};

/// Recomputes a witness from its stored inputs and parameters.
Evaluation replay_witness(FunctionalId id, const Witness& w, const Tolerances& tol = {});

struct ContradictionEntry {
    Index dim = 0;
    double self_zero_requirement = 0.0;  // S(I/d | I/d) demanded by S(rho|rho) = 0
    double trivial_requirement = 0.0;    // S(I/d | I/d) demanded by S(rho|I/d) = S(rho)

    friend bool operator==(const ContradictionEntry&, const ContradictionEntry&) = default;
};

struct ConcavityChainEntry {
    ComplexMatrix rho;
    ComplexMatrix rho1;
    ComplexMatrix rho2;     // (rho - lambda rho1) / (1 - lambda)
    double lambda = 0.0;    // largest weight with lambda rho1 <= rho
    double f_rho = 0.0;     // f(rho | rho), zero for the candidate
    double f_rho1 = 0.0;    // f(rho1 | rho)
    double f_rho2 = 0.0;    // f(rho2 | rho)
    double concavity_gap = 0.0;  // lambda f_rho1 + (1 - lambda) f_rho2 - f_rho
    bool violates_concavity = false;

    friend bool operator==(const ConcavityChainEntry&, const ConcavityChainEntry&) = default;
};

struct ImpossibilityReport {
    std::vector<ContradictionEntry> contradictions;
    std::vector<ConcavityChainEntry> chains;
    std::string argument;

    friend bool operator==(const ImpossibilityReport&, const ImpossibilityReport&) = default;
};

/// 1 / lambda_max(rho^{-1/2} rho1 rho^{-1/2}) for rho > 0.
double max_dominated_weight(const DensityMatrix& rho, const DensityMatrix& rho1, const Tolerances& tol = {});

ImpossibilityReport impossibility_demos(std::uint64_t seed = 1, const Tolerances& tol = {});

struct SweepReport {
    std::string name;
    EnsembleConfig config;
    std::size_t samples = 0;
    double min_lower_slack = 0.0;   // min of the quantity that must be >= 0
    double min_upper_slack = 0.0;   // min of the upper-bound slack (shannon only)
    std::size_t violations = 0;
    std::size_t nondegenerate_checks = 0;
    std::size_t nondegenerate_nonzero = 0;
    std::size_t skipped = 0;
    std::optional<Witness> witness;

    friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

inline constexpr double kSweepTol = 1e-9;

/// 0 <= S(rho|sigma) <= S(rho) on the ensemble, plus S(rho|sigma) = 0 exactly
/// for nondegenerate sigma.
SweepReport shannon_sweep(const EnsembleConfig& cfg, const Tolerances& tol = {});
/// S(pinch(rho)) - S(rho) >= 0 on the ensemble.
SweepReport pinch_sweep(const EnsembleConfig& cfg, const Tolerances& tol = {});
/// S(mix | sigma) - lambda S(rho1 | sigma) - (1 - lambda) S(rho2 | sigma) >= 0,
/// and the same slack for the joint entropy.
SweepReport concavity_sweep(const EnsembleConfig& cfg, const Tolerances& tol = {});

/// The 4 x 4 family with unit diagonal / 4 and kappa / 4 on the anti-diagonal.
DensityMatrix example22_state(double kappa);

struct Example22Row {
    double kappa = 0.0;
    double f_q = 0.0;
    double f_complement = 0.0;
    double block_sum = 0.0;
    double entropy = 0.0;          // by eigendecomposition
    double entropy_closed_form = 0.0;  // ln 2 - ((1+k) ln(1+k) + (1-k) ln(1-k)) / 2
    double entropy_pinched = 0.0;  // S(E_{Q, I-Q}(rho))

    friend bool operator==(const Example22Row&, const Example22Row&) = default;
};

struct Example22Report {
    std::vector<Example22Row> rows;
    double max_block_sum_error = 0.0;  // |F + F - ln 2|
    bool sum_exceeds_entropy_somewhere = false;
    bool pinched_bound_holds = false;
    double max_closed_form_discrepancy = 0.0;

    friend bool operator==(const Example22Report&, const Example22Report&) = default;
};

Example22Report example_2_2_probe(int grid = 11, const Tolerances& tol = {});

/// rho1 P(psi1') + (1 - rho1) P(psi2') in dimension 4 with
/// psi1' = cos(phi1) e1 + sin(phi1) e3, psi2' = cos(phi2) e2 + sin(phi2) e4.
DensityMatrix example21_state(double rho1, double phi1, double phi2);

struct Example21Report {
    double rho1 = 0.0;
    double cos2_phi1 = 0.0;
    double cos2_phi2 = 0.0;
    ComplexMatrix rho_q;
    double rho_q_error = 0.0;      // |rho_Q - Q/2|_max
    double entropy = 0.0;          // S(rho)
    double entropy_q = 0.0;        // S(rho_Q)
    double f = 0.0;                // F(rho, Q)
    int grid = 0;
    double min_grid_slack = 0.0;   // min over the grid of S - F
    bool grid_bound_holds = false;

    friend bool operator==(const Example21Report&, const Example21Report&) = default;
};

Example21Report example_2_1_probe(int grid = 50, const Tolerances& tol = {});

struct Dim2Report {
    ComplexMatrix rho;
    ComplexMatrix sigma_nondeg;
    double entropy = 0.0;              // S(rho)
    double cond_maximally_mixed = 0.0; // S(rho | I/2)
    double cond_nondeg = 0.0;          // S(rho | sigma_nondeg)
    std::vector<double> path_t;        // sigma(t) = (1-t) I/2 + t sigma_nondeg
    std::vector<double> path_values;

    friend bool operator==(const Dim2Report&, const Dim2Report&) = default;
};

Dim2Report dim2_demo(std::uint64_t seed = 1, const Tolerances& tol = {});

}  // namespace qce
