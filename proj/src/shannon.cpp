#include "qce/shannon.hpp"

#include <cmath>
#include <sstream>

namespace qce {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidPartitionData, what); }

ProbabilityVector make_distribution(std::vector<double> w, double tol, const char* name) {
    try {
        Tolerances t;
        t.trace = tol;
        return ProbabilityVector(std::move(w), t);
    } catch (const Error& e) {
        invalid(std::string(name) + ": " + e.what());
    }
}

void check_finite(const RealMatrix& m, const char* name) {
    if (!m.allFinite()) invalid(std::string(name) + " has non-finite entries");
    if ((m.array() < 0.0).any()) invalid(std::string(name) + " has negative entries");
}

}  // namespace

ClassicalPartitionData ClassicalPartitionData::from_joint(const RealMatrix& joint, double tol) {
    if (joint.rows() == 0 || joint.cols() == 0) invalid("empty joint matrix");
    check_finite(joint, "joint");
    const Index n = joint.rows();
    const Index m = joint.cols();
    std::vector<double> p(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(m));
    for (Index a = 0; a < n; ++a) p[static_cast<std::size_t>(a)] = joint.row(a).sum();
    for (Index b = 0; b < m; ++b) q[static_cast<std::size_t>(b)] = joint.col(b).sum();
    RealMatrix p_given_q = RealMatrix::Zero(n, m);
    RealMatrix q_given_p = RealMatrix::Zero(m, n);
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < m; ++b) {
            const double pa = p[static_cast<std::size_t>(a)];
            const double qb = q[static_cast<std::size_t>(b)];
            if (qb > 0.0) p_given_q(a, b) = joint(a, b) / qb;
            if (pa > 0.0) q_given_p(b, a) = joint(a, b) / pa;
        }
    }
    return from_conditionals(std::move(p), std::move(q), std::move(p_given_q), std::move(q_given_p), tol);
}

ClassicalPartitionData ClassicalPartitionData::from_conditionals(std::vector<double> p, std::vector<double> q,
                                                                 RealMatrix p_given_q, RealMatrix q_given_p,
                                                                 double tol) {
    const Index n = static_cast<Index>(p.size());
    const Index m = static_cast<Index>(q.size());
    if (p_given_q.rows() != n || p_given_q.cols() != m) invalid("p_given_q must be n x m");
    if (q_given_p.rows() != m || q_given_p.cols() != n) invalid("q_given_p must be m x n");
    check_finite(p_given_q, "p_given_q");
    check_finite(q_given_p, "q_given_p");
    ProbabilityVector pv = make_distribution(std::move(p), tol, "p");
    ProbabilityVector qv = make_distribution(std::move(q), tol, "q");

    auto report = [](const char* rule, Index a, Index b, double lhs, double rhs) {
        std::ostringstream os;
        os << rule << " violated at (" << a << ", " << b << "): " << lhs << " vs " << rhs;
        invalid(os.str());
    };

    for (Index a = 0; a < n; ++a) {
        double marginal = 0.0;
        for (Index b = 0; b < m; ++b) marginal += p_given_q(a, b) * qv[static_cast<std::size_t>(b)];
        if (std::abs(marginal - pv[static_cast<std::size_t>(a)]) > tol) {
            report("sum_b p_{a|b} q_b = p_a", a, -1, marginal, pv[static_cast<std::size_t>(a)]);
        }
    }
    for (Index b = 0; b < m; ++b) {
        double marginal = 0.0;
        for (Index a = 0; a < n; ++a) marginal += q_given_p(b, a) * pv[static_cast<std::size_t>(a)];
        if (std::abs(marginal - qv[static_cast<std::size_t>(b)]) > tol) {
            report("sum_a q_{b|a} p_a = q_b", -1, b, marginal, qv[static_cast<std::size_t>(b)]);
        }
    }
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < m; ++b) {
            const double lhs = p_given_q(a, b) * qv[static_cast<std::size_t>(b)];
            const double rhs = q_given_p(b, a) * pv[static_cast<std::size_t>(a)];
            if (std::abs(lhs - rhs) > tol) report("Bayes rule", a, b, lhs, rhs);
        }
    }
    for (Index b = 0; b < m; ++b) {
        if (qv[static_cast<std::size_t>(b)] > 0.0 && std::abs(p_given_q.col(b).sum() - 1.0) > tol) {
            report("sum_a p_{a|b} = 1", -1, b, p_given_q.col(b).sum(), 1.0);
        }
    }
    for (Index a = 0; a < n; ++a) {
        if (pv[static_cast<std::size_t>(a)] > 0.0 && std::abs(q_given_p.col(a).sum() - 1.0) > tol) {
            report("sum_b q_{b|a} = 1", a, -1, q_given_p.col(a).sum(), 1.0);
        }
    }
    return ClassicalPartitionData(std::move(pv), std::move(qv), std::move(p_given_q), std::move(q_given_p));
}

RealMatrix ClassicalPartitionData::joint() const {
    RealMatrix out = p_given_q_;
    for (Index b = 0; b < out.cols(); ++b) out.col(b) *= q_[static_cast<std::size_t>(b)];
    return out;
}

RealMatrix ClassicalPartitionData::joint_via_q() const {
    RealMatrix out = q_given_p_;
    for (Index a = 0; a < out.cols(); ++a) out.col(a) *= p_[static_cast<std::size_t>(a)];
    return out.transpose();
}

bool operator==(const ClassicalPartitionData& a, const ClassicalPartitionData& b) {
    auto same = [](const RealMatrix& x, const RealMatrix& y) {
        return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
    };
    return a.p_ == b.p_ && a.q_ == b.q_ && same(a.p_given_q_, b.p_given_q_) && same(a.q_given_p_, b.q_given_p_);
}

ClassicalPartitionData ClassicalPartitionData::swapped() const {
    return ClassicalPartitionData(q_, p_, q_given_p_, p_given_q_);
}

double shannon_entropy(const ProbabilityVector& p) { return classical_entropy(p); }

double shannon_cond(const ClassicalPartitionData& data) {
    double h = 0.0;
    for (std::size_t b = 0; b < data.m(); ++b) {
        const double qb = data.q()[b];
        if (qb <= 0.0) continue;
        const auto column = data.p_given_q().col(static_cast<Index>(b));
        h += qb * classical_entropy(std::span<const double>(column.data(), static_cast<std::size_t>(column.size())));
    }
    return h;
}

double shannon_joint(const ClassicalPartitionData& data) { return shannon_entropy(data.q()) + shannon_cond(data); }

double mutual_info(const ClassicalPartitionData& data) { return shannon_entropy(data.p()) - shannon_cond(data); }

}  // namespace qce
