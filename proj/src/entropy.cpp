#include "qce/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qce {

namespace {

constexpr double kCommutingTol = 1e-8;
constexpr double kMultipleTol = 1e-8;

double block_trace(const ComplexMatrix& block) { return block.size() == 0 ? 0.0 : block.trace().real(); }

// -tr(X ln X) + t ln t for X = block, clamped at zero (F >= 0 holds exactly;
// negative values are rounding).
double normalized_block_entropy(const ComplexMatrix& block, const Tolerances& tol) {
    const double t = block_trace(block);
    if (t <= tol.support) return 0.0;
    return std::max(0.0, -trace_xlnx(block, tol) + xlnx(t));
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> weights, const Tolerances& tol)
    : weights_(std::move(weights)) {
    if (weights_.empty()) throw Error(ErrorCode::ValidationError, "empty probability vector");
    double sum = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w) || w < 0.0) {
            std::ostringstream os;
            os << "probability weight " << w << " is negative or non-finite";
            throw Error(ErrorCode::ValidationError, os.str());
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > tol.trace) {
        std::ostringstream os;
        os << "probability weights sum to " << sum;
        throw Error(ErrorCode::ValidationError, os.str());
    }
}

double vn_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (Index k = 0; k < rho.dim(); ++k) s -= xlnx(rho.eigenvalues()[k]);
    return std::max(0.0, s);
}

double classical_entropy(std::span<const double> weights) {
    double s = 0.0;
    for (double w : weights) s -= xlnx(w);
    return s;
}

double classical_entropy(const ProbabilityVector& p) { return classical_entropy(p.weights()); }

double relative_entropy(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        require_same_dim(a.rows(), b.rows(), "relative_entropy");
        throw Error(ErrorCode::BadShape, "relative_entropy operands differ in shape");
    }
    const EigenSystem ea = eig_hermitian(a, tol);
    const EigenSystem eb = eig_hermitian(b, tol);
    const Index n = a.rows();
    if (ea.values[n - 1] < -tol.psd || eb.values[n - 1] < -tol.psd) {
        throw Error(ErrorCode::NotPSD, "relative_entropy operands must be positive semidefinite");
    }

    Index support = 0;
    while (support < n && ea.values[support] > tol.support) ++support;
    if (support == 0) return 0.0;

    // support(A) inside support(B) iff B compressed onto support(A) is
    // positive definite there.
    const ComplexMatrix wa = ea.vectors.leftCols(support);
    const ComplexMatrix restricted = wa.adjoint() * b * wa;
    const EigenSystem er = eig_hermitian((restricted + restricted.adjoint()) * 0.5, tol);
    if (er.values[support - 1] <= tol.support) return std::numeric_limits<double>::infinity();

    double a_ln_a = 0.0;
    for (Index k = 0; k < n; ++k) a_ln_a += xlnx(ea.values[k]);
    double a_ln_b = 0.0;
    for (Index k = 0; k < n; ++k) {
        if (eb.values[k] <= tol.support) continue;
        const double overlap = (eb.vectors.col(k).adjoint() * a * eb.vectors.col(k))(0, 0).real();
        a_ln_b += overlap * std::log(eb.values[k]);
    }
    return a_ln_a - a_ln_b;
}

double compression_entropy(const DensityMatrix& rho, const Projector& q, const Tolerances& tol) {
    require_same_dim(rho.dim(), q.dim(), "compression_entropy");
    if (q.rank() == 0) return 0.0;
    return normalized_block_entropy(compressed_block(rho, q), tol);
}

double compression_entropy_via_state(const DensityMatrix& rho, const Projector& q, const Tolerances& tol) {
    require_same_dim(rho.dim(), q.dim(), "compression_entropy_via_state");
    const double t = compress(rho, q).trace().real();
    if (t <= tol.support) return 0.0;
    return t * vn_entropy(normalized_compression(rho, q, tol));
}

double compression_entropy_via_relative(const DensityMatrix& rho, const Projector& q, const Tolerances& tol) {
    require_same_dim(rho.dim(), q.dim(), "compression_entropy_via_relative");
    const ComplexMatrix a = compress(rho, q);
    const double t = a.trace().real();
    if (t <= tol.support) return 0.0;
    const ComplexMatrix b = ComplexMatrix::Identity(rho.dim(), rho.dim()) * t;
    return -relative_entropy(a, b, tol);
}

double raw_compression_entropy(const DensityMatrix& rho, const Projector& q, const Tolerances& tol) {
    require_same_dim(rho.dim(), q.dim(), "raw_compression_entropy");
    if (q.rank() == 0) return 0.0;
    return std::max(0.0, -trace_xlnx(compressed_block(rho, q), tol));
}

DensityMatrix normalized_compression(const DensityMatrix& rho, const Projector& q, const Tolerances& tol) {
    const ComplexMatrix a = compress(rho, q);
    const double t = a.trace().real();
    if (t <= tol.support) {
        std::ostringstream os;
        os << "tr(Q rho Q) = " << t << " is zero; the normalized compression has no limiting value";
        throw Error(ErrorCode::ZeroCompression, os.str());
    }
    return DensityMatrix(a / t, tol);
}

EntropyBreakdown cond_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol,
                              CondFormula formula) {
    require_same_dim(rho.dim(), sigma.dim(), "cond_entropy");
    const SpectralResolution res = spectral_resolution(sigma, tol);
    EntropyBreakdown out;
    out.per_block.reserve(res.size());
    for (std::size_t j = 0; j < res.size(); ++j) {
        const Projector& q = res.projectors()[j];
        BlockTerm term;
        term.block = j;
        term.weight = res.eigenvalues()[j] * static_cast<double>(q.rank());
        switch (formula) {
            case CondFormula::Compression: term.factor = compression_entropy(rho, q, tol); break;
            case CondFormula::Normalized: term.factor = compression_entropy_via_state(rho, q, tol); break;
            case CondFormula::Relative: term.factor = compression_entropy_via_relative(rho, q, tol); break;
        }
        if (term.weight > tol.support) out.total += term.weight * term.factor;
        out.per_block.push_back(term);
    }
    return out;
}

double self_cond_entropy(const DensityMatrix& rho, const Tolerances& tol) {
    const SpectralResolution res = spectral_resolution(rho, tol);
    double s = 0.0;
    for (std::size_t i = 0; i < res.size(); ++i) {
        const double d = static_cast<double>(res.projectors()[i].rank());
        const double w = res.eigenvalues()[i] * d;
        s += w * w * std::log(d);
    }
    return s;
}

double cond_entropy_projector_blocks(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
    require_same_dim(rho.dim(), sigma.dim(), "cond_entropy_projector_blocks");
    const SpectralResolution res = spectral_resolution(sigma, tol);
    double s = 0.0;
    for (std::size_t j = 0; j < res.size(); ++j) {
        const Projector& q = res.projectors()[j];
        const double weight = res.eigenvalues()[j] * static_cast<double>(q.rank());
        if (weight <= tol.support) continue;
        const ComplexMatrix block = compressed_block(rho, q);
        const double t = block_trace(block);
        if (t <= tol.support) continue;
        const EigenSystem es = eig_hermitian(block, tol);
        Index r = 0;
        while (r < es.values.size() && es.values[r] > tol.support) ++r;
        const ComplexMatrix sub = es.vectors.leftCols(r);
        const ComplexMatrix expected = sub * sub.adjoint() * (t / static_cast<double>(r));
        const double defect = max_abs(block - expected);
        if (defect > kMultipleTol) {
            std::ostringstream os;
            os << "block " << j << ": Q rho Q is not a multiple of a projector (defect " << defect << ")";
            throw Error(ErrorCode::NotApplicable, os.str());
        }
        s += t * weight * std::log(static_cast<double>(r));
    }
    return s;
}

double cond_entropy_commuting(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
    require_same_dim(rho.dim(), sigma.dim(), "cond_entropy_commuting");
    const double residual = max_abs(commutator(rho.matrix(), sigma.matrix()));
    if (residual > kCommutingTol) {
        std::ostringstream os;
        os << "|[rho, sigma]|_max = " << residual;
        throw Error(ErrorCode::NotCommuting, os.str());
    }
    const SpectralResolution pr = spectral_resolution(rho, tol);
    const SpectralResolution qs = spectral_resolution(sigma, tol);
    double s = 0.0;
    for (std::size_t j = 0; j < qs.size(); ++j) {
        const Projector& q = qs.projectors()[j];
        const double weight = qs.eigenvalues()[j] * static_cast<double>(q.rank());
        if (weight <= tol.support) continue;
        const double rho_q = (rho.matrix() * q.matrix()).trace().real();
        if (rho_q <= tol.support) continue;
        for (std::size_t i = 0; i < pr.size(); ++i) {
            const double rho_i = pr.eigenvalues()[i];
            const double overlap = (pr.projectors()[i].matrix() * q.matrix()).trace().real();
            if (rho_i <= tol.support || overlap <= tol.support) continue;
            s -= weight * rho_i * overlap * std::log(rho_i / rho_q);
        }
    }
    return std::max(0.0, s);
}

double cond_entropy_resolution(const DensityMatrix& rho, const IdentityResolution& q, const Tolerances& tol) {
    require_same_dim(rho.dim(), q.dim(), "cond_entropy_resolution");
    double s = 0.0;
    const double dim = static_cast<double>(rho.dim());
    for (const Projector& block : q.projectors()) {
        s += static_cast<double>(block.rank()) / dim * compression_entropy(rho, block, tol);
    }
    return s;
}

DensityMatrix pinch(const DensityMatrix& rho, const IdentityResolution& q, const Tolerances& tol) {
    require_same_dim(rho.dim(), q.dim(), "pinch");
    ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (const Projector& block : q.projectors()) out += compress(rho, block);
    return DensityMatrix(out, tol);
}

double joint_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
    return vn_entropy(sigma) + cond_entropy(rho, sigma, tol).total;
}

double info_gain(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
    return vn_entropy(rho) - cond_entropy(rho, sigma, tol).total;
}

double self_info_gain(const DensityMatrix& rho, const Tolerances& tol) {
    return vn_entropy(rho) - self_cond_entropy(rho, tol);
}

ProbabilityVector spectrum_distribution(const DensityMatrix& rho, const Tolerances& tol) {
    const SpectralResolution res = spectral_resolution(rho, tol);
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(rho.dim()));
    for (std::size_t i = 0; i < res.size(); ++i) {
        w.insert(w.end(), static_cast<std::size_t>(res.projectors()[i].rank()), res.eigenvalues()[i]);
    }
    return ProbabilityVector(std::move(w), tol);
}

ProbabilityVector block_distribution(const DensityMatrix& rho, const Tolerances& tol) {
    const SpectralResolution res = spectral_resolution(rho, tol);
    std::vector<double> w;
    w.reserve(res.size());
    for (std::size_t i = 0; i < res.size(); ++i) {
        w.push_back(res.eigenvalues()[i] * static_cast<double>(res.projectors()[i].rank()));
    }
    return ProbabilityVector(std::move(w), tol);
}

double degeneracy_correction(const DensityMatrix& rho, const Tolerances& tol) {
    const SpectralResolution res = spectral_resolution(rho, tol);
    double s = 0.0;
    for (std::size_t i = 0; i < res.size(); ++i) {
        const double d = static_cast<double>(res.projectors()[i].rank());
        s += d * res.eigenvalues()[i] * std::log(d);
    }
    return s;
}

}  // namespace qce
