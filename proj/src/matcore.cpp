#include "qce/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qce {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::BadShape: return "BadShape";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::BadTrace: return "BadTrace";
        case ErrorCode::NotProjector: return "NotProjector";
        case ErrorCode::NotResolution: return "NotResolution";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::ClusterAmbiguity: return "ClusterAmbiguity";
        case ErrorCode::ZeroCompression: return "ZeroCompression";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::NotCommuting: return "NotCommuting";
        case ErrorCode::NotStrictlyPositive: return "NotStrictlyPositive";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::InvalidPartitionData: return "InvalidPartitionData";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

bool Error::is_validation() const noexcept {
    switch (code_) {
        case ErrorCode::ParseError:
        case ErrorCode::NoConvergence:
            return false;
        default:
            return true;
    }
}

std::optional<Tolerances> Tolerances::profile(std::string_view name) {
    if (name == "default") return Tolerances{};
    if (name == "strict") {
        Tolerances t;
        t.herm = t.idem = t.orth = 1e-11;
        t.psd = 1e-13;
        t.trace = 1e-12;
        t.cluster = 1e-11;
        t.support = 1e-12;
        return t;
    }
    if (name == "loose") {
        Tolerances t;
        t.herm = t.idem = t.orth = 1e-6;
        t.psd = 1e-8;
        t.trace = 1e-7;
        t.cluster = 1e-7;
        t.support = 1e-8;
        return t;
    }
    return std::nullopt;
}

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() == 0 || a.rows() != a.cols()) {
        std::ostringstream os;
        os << what << " must be a non-empty square matrix, got " << a.rows() << "x" << a.cols();
        throw Error(ErrorCode::BadShape, os.str());
    }
}

void require_finite(const ComplexMatrix& a, const char* what) {
    if (!is_finite(a)) throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
}

// One Jacobi rotation that annihilates m(p, q). The 2x2 block
// [[a, b], [conj(b), d]] is first made real by the phase diag(1, e^{-i arg b})
// and then diagonalized by a real rotation.
void rotate(ComplexMatrix& m, ComplexMatrix& v, Index p, Index q) {
    const Complex b = m(p, q);
    const double r = std::abs(b);
    const Complex phase = b / r;
    const double a = m(p, p).real();
    const double d = m(q, q).real();

    const double theta = (d - a) / (2.0 * r);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    // J = [[c, s], [-s conj(phase), c conj(phase)]]
    const Complex j10 = -s * std::conj(phase);
    const Complex j11 = c * std::conj(phase);
    const Index n = m.rows();
    for (Index k = 0; k < n; ++k) {
        const Complex mkp = m(k, p);
        const Complex mkq = m(k, q);
        m(k, p) = c * mkp + j10 * mkq;
        m(k, q) = s * mkp + j11 * mkq;
    }
    for (Index k = 0; k < n; ++k) {
        const Complex mpk = m(p, k);
        const Complex mqk = m(q, k);
        m(p, k) = c * mpk + std::conj(j10) * mqk;
        m(q, k) = s * mpk + std::conj(j11) * mqk;
    }
    m(p, q) = m(q, p) = 0.0;
    m(p, p) = a - t * r;
    m(q, q) = d + t * r;
    for (Index k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp + j10 * vkq;
        v(k, q) = s * vkp + j11 * vkq;
    }
}

}  // namespace

bool is_finite(const ComplexMatrix& a) {
    for (Index i = 0; i < a.size(); ++i) {
        const Complex z = a.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

double max_abs(const ComplexMatrix& a) {
    double best = 0.0;
    for (Index i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a.data()[i]));
    return best;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double xlnx(double x) noexcept { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_same_dim(Index a, Index b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimensions " << a << " and " << b << " differ";
        throw Error(ErrorCode::DimMismatch, os.str());
    }
}

EigenSystem eig_hermitian(const ComplexMatrix& a, const Tolerances& tol) {
    require_square(a, "eig_hermitian input");
    require_finite(a, "eig_hermitian input");
    const double asym = max_abs(a - a.adjoint());
    if (asym > tol.herm) {
        std::ostringstream os;
        os << "max |A - A^dagger| = " << asym << " exceeds " << tol.herm;
        throw Error(ErrorCode::NotHermitian, os.str());
    }

    const Index n = a.rows();
    ComplexMatrix m = (a + a.adjoint()) * 0.5;
    for (Index k = 0; k < n; ++k) m(k, k) = m(k, k).real();
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    // Off-diagonal entries below this are dropped instead of rotated; the
    // perturbation is far below double resolution of the spectrum.
    const double floor = 1e-18 * std::max(m.norm(), std::numeric_limits<double>::min());
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                if (std::abs(m(p, q)) <= floor) {
                    m(p, q) = m(q, p) = 0.0;
                    continue;
                }
                rotate(m, v, p, q);
                rotated = true;
            }
        }
        if (!rotated) break;
    }
    if (sweep == kMaxSweeps) throw Error(ErrorCode::NoConvergence, "Jacobi sweeps exhausted");

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index i, Index j) { return m(i, i).real() > m(j, j).real(); });

    EigenSystem out{RealVector(n), ComplexMatrix(n, n)};
    for (Index k = 0; k < n; ++k) {
        out.values[k] = m(order[k], order[k]).real();
        out.vectors.col(k) = v.col(order[k]);
    }
    return out;
}

ComplexMatrix exp_i(const EigenSystem& generator, double eta) {
    return spectral_function(generator, [eta](double lambda) {
        return std::polar(1.0, eta * lambda);
    });
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(const ComplexMatrix& m, const Tolerances& tol) {
    require_square(m, "density matrix");
    require_finite(m, "density matrix");
    eig_ = eig_hermitian(m, tol);
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol.trace) {
        std::ostringstream os;
        os << "trace " << tr << " differs from 1 by more than " << tol.trace;
        throw Error(ErrorCode::BadTrace, os.str());
    }
    const double lowest = eig_.values[eig_.values.size() - 1];
    if (lowest < -tol.psd) {
        std::ostringstream os;
        os << "eigenvalue " << lowest << " below -" << tol.psd;
        throw Error(ErrorCode::NotPSD, os.str());
    }
    bool clamped = false;
    for (Index k = 0; k < eig_.values.size(); ++k) {
        if (eig_.values[k] < 0.0) {
            eig_.values[k] = 0.0;
            clamped = true;
        }
    }
    if (clamped) {
        matrix_ = spectral_function(eig_, [](double x) { return Complex(x); });
    } else {
        matrix_ = (m + m.adjoint()) * 0.5;
    }
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> weights, const Tolerances& tol) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(weights.size()),
                                          static_cast<Index>(weights.size()));
    for (std::size_t k = 0; k < weights.size(); ++k) {
        m(static_cast<Index>(k), static_cast<Index>(k)) = weights[k];
    }
    return DensityMatrix(m, tol);
}

DensityMatrix DensityMatrix::diagonal(std::initializer_list<double> weights, const Tolerances& tol) {
    return diagonal(std::span<const double>(weights.begin(), weights.size()), tol);
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw Error(ErrorCode::BadShape, "pure state from a zero vector");
    const ComplexVector unit = psi / norm;
    return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::conjugated(const ComplexMatrix& u) const {
    require_same_dim(dim(), u.rows(), "DensityMatrix::conjugated");
    return DensityMatrix(u * matrix_ * u.adjoint());
}

// ---------------------------------------------------------------------------
// Projector

Projector::Projector(const ComplexMatrix& m, const Tolerances& tol) {
    require_square(m, "projector");
    require_finite(m, "projector");
    const EigenSystem es = eig_hermitian(m, tol);
    const double defect = max_abs(m * m - m);
    if (defect > tol.idem) {
        std::ostringstream os;
        os << "max |Q^2 - Q| = " << defect << " exceeds " << tol.idem;
        throw Error(ErrorCode::NotProjector, os.str());
    }
    const double tr = m.trace().real();
    const double rank = std::round(tr);
    if (std::abs(tr - rank) > tol.trace) {
        std::ostringstream os;
        os << "trace " << tr << " is not an integer within " << tol.trace;
        throw Error(ErrorCode::NotProjector, os.str());
    }
    const Index r = static_cast<Index>(rank);
    basis_ = es.vectors.leftCols(r);
    matrix_ = basis_ * basis_.adjoint();
}

Projector Projector::from_basis(const ComplexMatrix& basis, const Tolerances& tol) {
    if (basis.rows() == 0 || basis.cols() > basis.rows()) {
        throw Error(ErrorCode::BadShape, "projector basis must be dim x rank with rank <= dim");
    }
    require_finite(basis, "projector basis");
    const Index r = basis.cols();
    const double defect = max_abs(basis.adjoint() * basis - ComplexMatrix::Identity(r, r));
    if (defect > tol.orth) {
        std::ostringstream os;
        os << "basis columns not orthonormal (defect " << defect << ")";
        throw Error(ErrorCode::NotProjector, os.str());
    }
    Projector q;
    q.basis_ = basis;
    q.matrix_ = basis * basis.adjoint();
    return q;
}

Projector Projector::identity(Index dim) { return from_basis(ComplexMatrix::Identity(dim, dim)); }

Projector Projector::zero(Index dim) { return from_basis(ComplexMatrix(dim, 0)); }

Projector Projector::coordinate(Index dim, std::span<const Index> indices) {
    ComplexMatrix basis = ComplexMatrix::Zero(dim, static_cast<Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] < 0 || indices[k] >= dim) throw Error(ErrorCode::BadShape, "coordinate index out of range");
        basis(indices[k], static_cast<Index>(k)) = 1.0;
    }
    return from_basis(basis);
}

Projector Projector::coordinate(Index dim, std::initializer_list<Index> indices) {
    return coordinate(dim, std::span<const Index>(indices.begin(), indices.size()));
}

Projector Projector::complement() const {
    const Index n = dim();
    if (rank() == n) return zero(n);
    if (rank() == 0) return identity(n);
    // Eigenvectors of I - Q with eigenvalue 1 span the orthogonal complement.
    const EigenSystem es = eig_hermitian(ComplexMatrix::Identity(n, n) - matrix_);
    return from_basis(es.vectors.leftCols(n - rank()));
}

Projector Projector::conjugated(const ComplexMatrix& u) const {
    require_same_dim(dim(), u.rows(), "Projector::conjugated");
    return from_basis(u * basis_);
}

// ---------------------------------------------------------------------------
// Resolutions

IdentityResolution::IdentityResolution(std::vector<Projector> projectors, const Tolerances& tol)
    : projectors_(std::move(projectors)) {
    if (projectors_.empty()) throw Error(ErrorCode::NotResolution, "empty resolution");
    dim_ = projectors_.front().dim();
    ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
        const Projector& p = projectors_[i];
        require_same_dim(dim_, p.dim(), "IdentityResolution");
        if (p.rank() == 0) throw Error(ErrorCode::NotResolution, "resolution contains a zero projector");
        sum += p.matrix();
        for (std::size_t j = 0; j < i; ++j) {
            const double overlap = max_abs(p.matrix() * projectors_[j].matrix());
            if (overlap > tol.orth) {
                std::ostringstream os;
                os << "blocks " << j << " and " << i << " overlap (" << overlap << ")";
                throw Error(ErrorCode::NotResolution, os.str());
            }
        }
    }
    const double incomplete = max_abs(sum - ComplexMatrix::Identity(dim_, dim_));
    if (incomplete > tol.orth) {
        std::ostringstream os;
        os << "blocks do not sum to the identity (defect " << incomplete << ")";
        throw Error(ErrorCode::NotResolution, os.str());
    }
}

IdentityResolution IdentityResolution::trivial(Index dim) {
    return IdentityResolution({Projector::identity(dim)});
}

IdentityResolution IdentityResolution::coordinate(Index dim, std::span<const Index> block_sizes) {
    std::vector<Projector> blocks;
    Index start = 0;
    for (Index size : block_sizes) {
        if (size <= 0 || start + size > dim) throw Error(ErrorCode::BadShape, "block sizes do not partition dim");
        std::vector<Index> idx(static_cast<std::size_t>(size));
        std::iota(idx.begin(), idx.end(), start);
        blocks.push_back(Projector::coordinate(dim, idx));
        start += size;
    }
    if (start != dim) throw Error(ErrorCode::BadShape, "block sizes do not sum to dim");
    return IdentityResolution(std::move(blocks));
}

IdentityResolution IdentityResolution::coordinate(Index dim, std::initializer_list<Index> block_sizes) {
    return coordinate(dim, std::span<const Index>(block_sizes.begin(), block_sizes.size()));
}

IdentityResolution IdentityResolution::conjugated(const ComplexMatrix& u) const {
    std::vector<Projector> blocks;
    blocks.reserve(projectors_.size());
    for (const Projector& p : projectors_) blocks.push_back(p.conjugated(u));
    return IdentityResolution(std::move(blocks));
}

SpectralResolution::SpectralResolution(std::vector<double> eigenvalues, std::vector<Projector> projectors,
                                       const Tolerances& tol)
    : eigenvalues_(std::move(eigenvalues)), resolution_(std::move(projectors), tol) {
    if (eigenvalues_.size() != resolution_.size()) {
        throw Error(ErrorCode::BadShape, "eigenvalue and projector counts differ");
    }
    for (std::size_t i = 1; i < eigenvalues_.size(); ++i) {
        if (!(eigenvalues_[i - 1] - eigenvalues_[i] > tol.cluster)) {
            throw Error(ErrorCode::ClusterAmbiguity, "spectral resolution eigenvalues not separated");
        }
    }
}

std::vector<Index> SpectralResolution::ranks() const {
    std::vector<Index> out;
    out.reserve(size());
    for (const Projector& p : projectors()) out.push_back(p.rank());
    return out;
}

std::vector<Index> cluster_offsets(const RealVector& descending, const Tolerances& tol) {
    std::vector<Index> starts{0};
    for (Index k = 1; k < descending.size(); ++k) {
        const double gap = descending[k - 1] - descending[k];
        if (gap > tol.cluster) {
            starts.push_back(k);
        } else if (gap > 0.25 * tol.cluster) {
            std::ostringstream os;
            os << "eigenvalue gap " << gap << " lies in (" << 0.25 * tol.cluster << ", " << tol.cluster
               << "]; grouping is unstable";
            throw Error(ErrorCode::ClusterAmbiguity, os.str());
        }
    }
    return starts;
}

SpectralResolution spectral_resolution(const DensityMatrix& rho, const Tolerances& tol) {
    const RealVector& values = rho.eigenvalues();
    const std::vector<Index> starts = cluster_offsets(values, tol);
    std::vector<double> eigenvalues;
    std::vector<Projector> projectors;
    for (std::size_t b = 0; b < starts.size(); ++b) {
        const Index start = starts[b];
        const Index stop = b + 1 < starts.size() ? starts[b + 1] : rho.dim();
        eigenvalues.push_back(values.segment(start, stop - start).mean());
        projectors.push_back(Projector::from_basis(rho.eigenvectors().middleCols(start, stop - start), tol));
    }
    return SpectralResolution(std::move(eigenvalues), std::move(projectors), tol);
}

double trace_xlnx(const ComplexMatrix& a, const Tolerances& tol) {
    double sum = 0.0;
    if (a.size() == 0) return 0.0;
    if (a.rows() == 1 && a.cols() == 1) {
        const double x = a(0, 0).real();
        if (x < -tol.psd) throw Error(ErrorCode::NotPSD, "negative 1x1 block");
        return xlnx(x);
    }
    const EigenSystem es = eig_hermitian(a, tol);
    const double lowest = es.values[es.values.size() - 1];
    if (lowest < -tol.psd) {
        std::ostringstream os;
        os << "eigenvalue " << lowest << " below -" << tol.psd;
        throw Error(ErrorCode::NotPSD, os.str());
    }
    for (Index k = 0; k < es.values.size(); ++k) sum += xlnx(es.values[k]);
    return sum;
}

Projector support_projector(const DensityMatrix& rho, const Tolerances& tol) {
    Index r = 0;
    while (r < rho.dim() && rho.eigenvalues()[r] > tol.support) ++r;
    return Projector::from_basis(rho.eigenvectors().leftCols(r), tol);
}

ComplexMatrix compress(const DensityMatrix& rho, const Projector& q) {
    require_same_dim(rho.dim(), q.dim(), "compress");
    return q.matrix() * rho.matrix() * q.matrix();
}

ComplexMatrix compressed_block(const DensityMatrix& rho, const Projector& q) {
    require_same_dim(rho.dim(), q.dim(), "compressed_block");
    ComplexMatrix block = q.basis().adjoint() * rho.matrix() * q.basis();
    return (block + block.adjoint()) * 0.5;
}

}  // namespace qce
