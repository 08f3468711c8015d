#pragma once

// Seeded random ensembles: Haar unitaries, densities, projectors and
// resolutions, plus densities with planted spectra.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qce/matcore.hpp"

namespace qce {

using Rng = std::mt19937_64;

/// splitmix64 of base + stream; independent sub-seeds for trials and restarts.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

/// Entries with independent N(0, 1/2) real and imaginary parts.
ComplexMatrix gaussian_matrix(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary (Gram-Schmidt of a Ginibre matrix).
ComplexMatrix random_unitary(Index dim, Rng& rng);

/// G G^dagger / tr for a dim x rank Ginibre G.
DensityMatrix random_density(Index dim, Index rank, Rng& rng);

/// U diag(spectrum) U^dagger with Haar U; spectrum must sum to one.
DensityMatrix density_with_spectrum(std::span<const double> spectrum, Rng& rng);

/// Projector onto the first `rank` columns of a Haar unitary.
Projector random_projector(Index dim, Index rank, Rng& rng);

/// Consecutive column blocks of a Haar unitary.
IdentityResolution random_resolution(Index dim, std::span<const Index> block_sizes, Rng& rng);

/// Uniform random composition of dim into positive parts.
std::vector<Index> random_composition(Index dim, Rng& rng);

/// Spectrum (length dim, descending) with one distinct positive value per
/// entry of `pattern`, repeated pattern[k] times, consecutive distinct values
/// separated by at least gap_floor.
std::vector<double> random_spectrum(std::span<const Index> pattern, double gap_floor, Rng& rng);

}  // namespace qce
