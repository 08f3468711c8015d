#pragma once

// Dense complex matrix layer: Hermitian eigendecomposition, validated density
// matrices and projectors, and canonical spectral resolutions.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qce/error.hpp"
#include "qce/tolerances.hpp"

namespace qce {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Eigenvalues sorted in descending order; column k of `vectors` belongs to
/// `values[k]` and the columns are orthonormal.
struct EigenSystem {
    RealVector values;
    ComplexMatrix vectors;
};

/// Cyclic complex Jacobi. Throws NotHermitian when |A - A^dagger|_max > tol.herm.
EigenSystem eig_hermitian(const ComplexMatrix& a, const Tolerances& tol = {});

double max_abs(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_finite(const ComplexMatrix& a);

/// V diag(f(lambda)) V^dagger.
template <class F>
ComplexMatrix spectral_function(const EigenSystem& es, F&& f) {
    ComplexVector d(es.values.size());
    for (Index k = 0; k < es.values.size(); ++k) d[k] = f(es.values[k]);
    return es.vectors * d.asDiagonal() * es.vectors.adjoint();
}

/// exp(i * eta * G) for a Hermitian G given by its eigensystem.
ComplexMatrix exp_i(const EigenSystem& generator, double eta);

/// x ln x with 0 ln 0 = 0.
double xlnx(double x) noexcept;

class DensityMatrix {
public:
    /// Validates Hermiticity, trace and positivity; eigenvalues in (-tol.psd, 0)
    /// are clamped to zero here so that every consumer sees a clean spectrum.
    explicit DensityMatrix(const ComplexMatrix& m, const Tolerances& tol = {});

    static DensityMatrix diagonal(std::span<const double> weights, const Tolerances& tol = {});
    static DensityMatrix diagonal(std::initializer_list<double> weights, const Tolerances& tol = {});
    static DensityMatrix maximally_mixed(Index dim);
    static DensityMatrix pure(const ComplexVector& psi);

    [[nodiscard]] Index dim() const noexcept { return matrix_.rows(); }
    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] const RealVector& eigenvalues() const noexcept { return eig_.values; }
    [[nodiscard]] const ComplexMatrix& eigenvectors() const noexcept { return eig_.vectors; }
    [[nodiscard]] const EigenSystem& eigensystem() const noexcept { return eig_; }
    [[nodiscard]] double min_eigenvalue() const noexcept { return eig_.values[dim() - 1]; }

    /// U rho U^dagger.
    [[nodiscard]] DensityMatrix conjugated(const ComplexMatrix& u) const;

private:
    ComplexMatrix matrix_;
    EigenSystem eig_;
};

/// Orthogonal projector. Internally keeps an orthonormal basis of its range,
/// which lets compressions Q rho Q be evaluated on a rank x rank block.
class Projector {
public:
    explicit Projector(const ComplexMatrix& m, const Tolerances& tol = {});

    /// Projector onto the span of the orthonormal columns of `basis`.
    static Projector from_basis(const ComplexMatrix& basis, const Tolerances& tol = {});
    static Projector identity(Index dim);
    static Projector zero(Index dim);
    static Projector coordinate(Index dim, std::span<const Index> indices);
    static Projector coordinate(Index dim, std::initializer_list<Index> indices);

    [[nodiscard]] Index dim() const noexcept { return matrix_.rows(); }
    [[nodiscard]] Index rank() const noexcept { return basis_.cols(); }
    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] const ComplexMatrix& basis() const noexcept { return basis_; }

    [[nodiscard]] Projector complement() const;
    [[nodiscard]] Projector conjugated(const ComplexMatrix& u) const;

private:
    Projector() = default;
    ComplexMatrix matrix_;
    ComplexMatrix basis_;
};

/// Pairwise orthogonal nonzero projectors summing to the identity.
class IdentityResolution {
public:
    explicit IdentityResolution(std::vector<Projector> projectors, const Tolerances& tol = {});

    static IdentityResolution trivial(Index dim);
    /// Consecutive coordinate blocks of the given sizes.
    static IdentityResolution coordinate(Index dim, std::span<const Index> block_sizes);
    static IdentityResolution coordinate(Index dim, std::initializer_list<Index> block_sizes);

    [[nodiscard]] Index dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return projectors_.size(); }
    [[nodiscard]] const std::vector<Projector>& projectors() const noexcept { return projectors_; }
    [[nodiscard]] const Projector& operator[](std::size_t j) const { return projectors_[j]; }

    [[nodiscard]] IdentityResolution conjugated(const ComplexMatrix& u) const;

private:
    Index dim_ = 0;
    std::vector<Projector> projectors_;
};

/// Distinct eigenvalues in strictly descending order with their eigenprojectors.
class SpectralResolution {
public:
    SpectralResolution(std::vector<double> eigenvalues, std::vector<Projector> projectors,
                       const Tolerances& tol = {});

    [[nodiscard]] Index dim() const noexcept { return resolution_.dim(); }
    [[nodiscard]] std::size_t size() const noexcept { return eigenvalues_.size(); }
    [[nodiscard]] const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
    [[nodiscard]] const std::vector<Projector>& projectors() const noexcept {
        return resolution_.projectors();
    }
    /// The eigenvalue-free resolution of the identity.
    [[nodiscard]] const IdentityResolution& resolution() const noexcept { return resolution_; }

    /// Rank of each block, in eigenvalue order.
    [[nodiscard]] std::vector<Index> ranks() const;

private:
    std::vector<double> eigenvalues_;
    IdentityResolution resolution_;
};

/// Groups eigenvalues closer than tol.cluster into one block. A gap inside
/// (tol.cluster / 4, tol.cluster] has no stable grouping and raises
/// ClusterAmbiguity.
SpectralResolution spectral_resolution(const DensityMatrix& rho, const Tolerances& tol = {});

/// Same clustering applied to an arbitrary Hermitian eigensystem; returns the
/// start offset of each block inside the descending spectrum.
std::vector<Index> cluster_offsets(const RealVector& descending, const Tolerances& tol);

/// tr(A ln A) over the (clamped) spectrum. Throws NotPSD below -tol.psd.
double trace_xlnx(const ComplexMatrix& a, const Tolerances& tol = {});

/// Projector onto eigenvectors with eigenvalue > tol.support.
Projector support_projector(const DensityMatrix& rho, const Tolerances& tol = {});

/// Q rho Q.
ComplexMatrix compress(const DensityMatrix& rho, const Projector& q);

/// W^dagger rho W for an orthonormal basis W of range(Q); a rank x rank matrix
/// unitarily equivalent to Q rho Q restricted to range(Q).
ComplexMatrix compressed_block(const DensityMatrix& rho, const Projector& q);

void require_same_dim(Index a, Index b, const char* what);

}  // namespace qce
