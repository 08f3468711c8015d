#include "qce/resolutions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qce {

namespace {

constexpr double kBlockTraceTol = 1e-8;

// tr(P Q) = |W_P^dagger W_Q|_F^2, non-negative by construction.
double overlap_trace(const Projector& p, const Projector& q) {
    if (p.rank() == 0 || q.rank() == 0) return 0.0;
    return (p.basis().adjoint() * q.basis()).squaredNorm();
}

}  // namespace

Complex normalized_trace(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.rows() != a.cols()) throw Error(ErrorCode::BadShape, "normalized_trace needs a square matrix");
    return a.trace() / static_cast<double>(a.rows());
}

ClassicalPartitionData bayes_data(const IdentityResolution& p, const IdentityResolution& q) {
    require_same_dim(p.dim(), q.dim(), "bayes_data");
    const double dim = static_cast<double>(p.dim());
    const auto n = static_cast<Index>(p.size());
    const auto m = static_cast<Index>(q.size());
    std::vector<double> pw(p.size()), qw(q.size());
    for (std::size_t i = 0; i < p.size(); ++i) pw[i] = static_cast<double>(p[i].rank()) / dim;
    for (std::size_t j = 0; j < q.size(); ++j) qw[j] = static_cast<double>(q[j].rank()) / dim;
    RealMatrix p_given_q(n, m), q_given_p(m, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < m; ++j) {
            const double tau_pq = overlap_trace(p[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)]) / dim;
            p_given_q(i, j) = tau_pq / qw[static_cast<std::size_t>(j)];
            q_given_p(j, i) = tau_pq / pw[static_cast<std::size_t>(i)];
        }
    }
    return ClassicalPartitionData::from_conditionals(std::move(pw), std::move(qw), std::move(p_given_q),
                                                     std::move(q_given_p));
}

double resolution_entropy(const IdentityResolution& p) {
    const double dim = static_cast<double>(p.dim());
    double h = 0.0;
    for (const Projector& block : p.projectors()) h -= xlnx(static_cast<double>(block.rank()) / dim);
    return h;
}

double resolution_cond_entropy(const IdentityResolution& p, const IdentityResolution& q) {
    return shannon_cond(bayes_data(p, q));
}

double resolution_joint_entropy(const IdentityResolution& p, const IdentityResolution& q) {
    return shannon_joint(bayes_data(p, q));
}

OrderWitness resolution_leq(const IdentityResolution& p, const IdentityResolution& q, const Tolerances& tol) {
    require_same_dim(p.dim(), q.dim(), "resolution_leq");
    OrderWitness w;
    std::vector<std::size_t> assignment(p.size());
    std::vector<bool> hit(q.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<std::size_t> covers;
        for (std::size_t j = 0; j < q.size(); ++j) {
            if (max_abs(q[j].matrix() * p[i].matrix() - p[i].matrix()) <= tol.orth) covers.push_back(j);
        }
        if (covers.size() != 1) {
            std::ostringstream os;
            if (covers.empty()) {
                os << "P_" << i << " lies under no Q_j";
            } else {
                os << "P_" << i << " lies under " << covers.size() << " blocks of Q";
            }
            w.violation = os.str();
            return w;
        }
        assignment[i] = covers.front();
        hit[covers.front()] = true;
    }
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (!hit[j]) {
            w.violation = "Q_" + std::to_string(j) + " covers no P_i";
            return w;
        }
    }
    w.holds = true;
    w.assignment = std::move(assignment);
    return w;
}

bool density_more_mixed(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
    require_same_dim(rho.dim(), sigma.dim(), "density_more_mixed");
    const SpectralResolution pr = spectral_resolution(rho, tol);
    const SpectralResolution qs = spectral_resolution(sigma, tol);
    if (!resolution_leq(pr.resolution(), qs.resolution(), tol).holds) return false;
    for (std::size_t j = 0; j < qs.size(); ++j) {
        const Projector& q = qs.projectors()[j];
        const double rho_q = (rho.matrix() * q.matrix()).trace().real();
        const double sigma_q = qs.eigenvalues()[j] * static_cast<double>(q.rank());
        if (std::abs(rho_q - sigma_q) > kBlockTraceTol) return false;
    }
    return true;
}

Index commutant_dim(const DensityMatrix& rho, const Tolerances& tol) {
    Index d = 0;
    for (Index r : spectral_resolution(rho, tol).ranks()) d += r * r;
    return d;
}

double res_cond_of_densities(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
    require_same_dim(rho.dim(), sigma.dim(), "res_cond_of_densities");
    return resolution_cond_entropy(spectral_resolution(rho, tol).resolution(),
                                   spectral_resolution(sigma, tol).resolution());
}

double res_joint_of_densities(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
    require_same_dim(rho.dim(), sigma.dim(), "res_joint_of_densities");
    return resolution_joint_entropy(spectral_resolution(rho, tol).resolution(),
                                    spectral_resolution(sigma, tol).resolution());
}

double res_entropy_of_density(const DensityMatrix& rho, const Tolerances& tol) {
    return resolution_entropy(spectral_resolution(rho, tol).resolution());
}

bool is_consequence(const ClassicalPartitionData& data, double tol) {
    for (std::size_t b = 0; b < data.m(); ++b) {
        if (data.q()[b] <= 0.0) continue;
        const auto column = data.p_given_q().col(static_cast<Index>(b));
        if (std::abs(column.maxCoeff() - 1.0) > tol) return false;
    }
    return true;
}

bool is_independent(const ClassicalPartitionData& data, double tol) {
    for (std::size_t b = 0; b < data.m(); ++b) {
        if (data.q()[b] <= 0.0) continue;
        for (std::size_t a = 0; a < data.n(); ++a) {
            if (std::abs(data.p_given_q()(static_cast<Index>(a), static_cast<Index>(b)) - data.p()[a]) > tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace qce
