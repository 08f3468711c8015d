#pragma once

// Classical Shannon layer on realization-free partition data.

#include "qce/entropy.hpp"

namespace qce {

inline constexpr double kClassicalTol = 1e-9;

/// The tuple (p, q, p_{a|b}, q_{b|a}) of two finite partitions, stored without
/// reference to an underlying probability space. p_given_q is n x m with
/// entry (a, b) = p_{a|b}; q_given_p is m x n with entry (b, a) = q_{b|a}.
/// Conditionals for zero-probability cells are stored as 0.
class ClassicalPartitionData {
public:
    /// Joint matrix n x m with entry (a, b) = mu(X_a and Y_b).
    static ClassicalPartitionData from_joint(const RealMatrix& joint, double tol = kClassicalTol);
    static ClassicalPartitionData from_conditionals(std::vector<double> p, std::vector<double> q,
                                                    RealMatrix p_given_q, RealMatrix q_given_p,
                                                    double tol = kClassicalTol);

    [[nodiscard]] std::size_t n() const noexcept { return p_.size(); }
    [[nodiscard]] std::size_t m() const noexcept { return q_.size(); }
    [[nodiscard]] const ProbabilityVector& p() const noexcept { return p_; }
    [[nodiscard]] const ProbabilityVector& q() const noexcept { return q_; }
    [[nodiscard]] const RealMatrix& p_given_q() const noexcept { return p_given_q_; }
    [[nodiscard]] const RealMatrix& q_given_p() const noexcept { return q_given_p_; }

    /// p_{a|b} q_b, n x m.
    [[nodiscard]] RealMatrix joint() const;
    /// (q_{b|a} p_a) transposed to n x m; equals joint() by Bayes rule.
    [[nodiscard]] RealMatrix joint_via_q() const;

    /// The same data with the roles of X and Y exchanged.
    [[nodiscard]] ClassicalPartitionData swapped() const;

    friend bool operator==(const ClassicalPartitionData& a, const ClassicalPartitionData& b);

private:
    ClassicalPartitionData(ProbabilityVector p, ProbabilityVector q, RealMatrix p_given_q, RealMatrix q_given_p)
        : p_(std::move(p)), q_(std::move(q)), p_given_q_(std::move(p_given_q)), q_given_p_(std::move(q_given_p)) {}

    ProbabilityVector p_;
    ProbabilityVector q_;
    RealMatrix p_given_q_;
    RealMatrix q_given_p_;
};

/// H(X).
double shannon_entropy(const ProbabilityVector& p);
/// H(X|Y) = sum_b q_b S_cl(p_{.|b}).
double shannon_cond(const ClassicalPartitionData& data);
/// H(X,Y) = H(Y) + H(X|Y).
double shannon_joint(const ClassicalPartitionData& data);
/// I(X||Y) = H(X) - H(X|Y).
double mutual_info(const ClassicalPartitionData& data);

}  // namespace qce
