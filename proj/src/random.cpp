#include "qce/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qce {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ComplexMatrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(rows, cols);
    for (Index c = 0; c < cols; ++c) {
        for (Index r = 0; r < rows; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    }
    return g;
}

ComplexMatrix random_unitary(Index dim, Rng& rng) {
    if (dim <= 0) throw Error(ErrorCode::BadShape, "random_unitary needs dim >= 1");
    ComplexMatrix q = gaussian_matrix(dim, dim, rng);
    // Modified Gram-Schmidt, two passes; the implied R has a positive diagonal,
    // which is what makes the result Haar distributed.
    for (Index k = 0; k < dim; ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Index j = 0; j < k; ++j) {
                const Complex proj = q.col(j).dot(q.col(k));
                q.col(k) -= proj * q.col(j);
            }
        }
        q.col(k) /= q.col(k).norm();
    }
    return q;
}

DensityMatrix random_density(Index dim, Index rank, Rng& rng) {
    if (dim <= 0 || rank <= 0 || rank > dim) throw Error(ErrorCode::BadShape, "random_density needs 1 <= rank <= dim");
    const ComplexMatrix g = gaussian_matrix(dim, rank, rng);
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix(0.5 * (m + m.adjoint()));
}

DensityMatrix density_with_spectrum(std::span<const double> spectrum, Rng& rng) {
    const auto dim = static_cast<Index>(spectrum.size());
    const ComplexMatrix u = random_unitary(dim, rng);
    RealVector d(dim);
    for (Index k = 0; k < dim; ++k) d[k] = spectrum[static_cast<std::size_t>(k)];
    ComplexMatrix m = u * d.cast<Complex>().asDiagonal() * u.adjoint();
    return DensityMatrix(0.5 * (m + m.adjoint()));
}

Projector random_projector(Index dim, Index rank, Rng& rng) {
    if (rank < 0 || rank > dim) throw Error(ErrorCode::BadShape, "random_projector needs 0 <= rank <= dim");
    if (rank == 0) return Projector::zero(dim);
    return Projector::from_basis(random_unitary(dim, rng).leftCols(rank));
}

IdentityResolution random_resolution(Index dim, std::span<const Index> block_sizes, Rng& rng) {
    const Index total = std::accumulate(block_sizes.begin(), block_sizes.end(), Index{0});
    if (total != dim) throw Error(ErrorCode::BadShape, "block sizes must sum to dim");
    const ComplexMatrix u = random_unitary(dim, rng);
    std::vector<Projector> blocks;
    Index offset = 0;
    for (Index size : block_sizes) {
        if (size <= 0) throw Error(ErrorCode::BadShape, "block sizes must be positive");
        blocks.push_back(Projector::from_basis(u.middleCols(offset, size)));
        offset += size;
    }
    return IdentityResolution(std::move(blocks));
}

std::vector<Index> random_composition(Index dim, Rng& rng) {
    if (dim <= 0) throw Error(ErrorCode::BadShape, "random_composition needs dim >= 1");
    std::bernoulli_distribution cut(0.5);
    std::vector<Index> parts;
    Index current = 1;
    for (Index k = 1; k < dim; ++k) {
        if (cut(rng)) {
            parts.push_back(current);
            current = 1;
        } else {
            ++current;
        }
    }
    parts.push_back(current);
    return parts;
}

std::vector<double> random_spectrum(std::span<const Index> pattern, double gap_floor, Rng& rng) {
    if (pattern.empty()) throw Error(ErrorCode::BadShape, "empty degeneracy pattern");
    std::uniform_real_distribution<double> uniform(0.05, 1.0);
    const std::size_t k = pattern.size();
    std::vector<double> values(k);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        double mass = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            values[i] = uniform(rng);
            mass += values[i] * static_cast<double>(pattern[i]);
        }
        for (double& v : values) v /= mass;
        std::vector<double> sorted = values;
        std::sort(sorted.begin(), sorted.end());
        bool separated = true;
        for (std::size_t i = 1; i < k; ++i) separated = separated && sorted[i] - sorted[i - 1] >= gap_floor;
        if (!separated) continue;
        std::vector<double> spectrum;
        for (std::size_t i = 0; i < k; ++i) spectrum.insert(spectrum.end(), static_cast<std::size_t>(pattern[i]), values[i]);
        std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
        return spectrum;
    }
    throw Error(ErrorCode::InvalidConfig, "gap_floor too large for the requested pattern");
}

}  // namespace qce
