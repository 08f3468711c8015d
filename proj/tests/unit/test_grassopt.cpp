#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

#include "qce/grassopt.hpp"
#include "qce/random.hpp"

using namespace qce;

namespace {

const double kLn2 = std::log(2.0);

ComplexMatrix random_hermitian(Index d, Rng& rng) {
    const ComplexMatrix g = gaussian_matrix(d, d, rng);
    return 0.5 * (g + g.adjoint());
}

/// tr(G K) against the central difference of s -> F(exp(-isK) rho exp(isK), Q).
void check_gradient(const DensityMatrix& rho, const Projector& q, const ComplexMatrix& k, double rel_tol) {
    const ComplexMatrix g = variational_gradient(rho, q);
    CHECK(max_abs(g - g.adjoint()) <= 1e-12);
    const double analytic = (g * k).trace().real();
    const auto f = [&](double s) {
        const ComplexMatrix u = oracle::exp_minus_i(k, s);
        return oracle::F(u * rho.matrix() * u.adjoint(), q.matrix());
    };
    const double fd = oracle::central_difference(f, 1e-4);
    CHECK(std::abs(analytic - fd) <= rel_tol * std::max(std::abs(fd), 1e-3));
}

DensityMatrix nondegenerate_diagonal(Index d, Rng& rng) {
    return DensityMatrix::diagonal(random_spectrum(std::vector<Index>(static_cast<std::size_t>(d), 1), 1e-2, rng));
}

/// Delta S on one degeneracy pattern as a function of the block weights.
double delta_of_weights(const std::vector<Index>& pattern, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const double di = static_cast<double>(pattern[i]);
        s -= oracle::xlnx(w[i]) - w[i] * std::log(di);
        s -= w[i] * w[i] * std::log(di);
    }
    return s;
}

}  // namespace

TEST_CASE("variational gradient vanishes on commuting pairs") {
    const DensityMatrix rho = DensityMatrix::diagonal({0.5, 0.3, 0.2});
    CHECK(max_abs(variational_gradient(rho, Projector::coordinate(3, {0, 2}))) <= 1e-14);
    CHECK(max_abs(variational_gradient(rho, Projector::identity(3))) <= 1e-14);
}

TEST_CASE("variational gradient matches finite differences") {
    Rng rng(91);
    SUBCASE("rotated two-level state with a rank-one projector") {
        const DensityMatrix rho = DensityMatrix::diagonal({0.7, 0.3}).conjugated(oracle::rotation(0.3));
        const Projector q = Projector::coordinate(2, {0});
        for (int trial = 0; trial < 10; ++trial) {
            const ComplexMatrix k = random_hermitian(2, rng);
            const ComplexMatrix g = variational_gradient(rho, q);
            const auto f = [&](double s) {
                const ComplexMatrix u = oracle::exp_minus_i(k, s);
                return oracle::F(u * rho.matrix() * u.adjoint(), q.matrix());
            };
            CHECK(std::abs((g * k).trace().real() - oracle::central_difference(f, 1e-4)) <= 1e-6);
        }
    }
    SUBCASE("dimension four, rank two") {
        const DensityMatrix rho = random_density(4, 4, rng);
        const Projector q = random_projector(4, 2, rng);
        for (int trial = 0; trial < 10; ++trial) check_gradient(rho, q, random_hermitian(4, rng), 1e-5);
    }
    SUBCASE("random dimensions and ranks") {
        for (int trial = 0; trial < 40; ++trial) {
            const Index d = 2 + static_cast<Index>(trial % 5);
            const Index n = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(d));
            check_gradient(random_density(d, d, rng), random_projector(d, n, rng), random_hermitian(d, rng), 1e-5);
        }
    }
}

TEST_CASE("variational gradient errors") {
    const DensityMatrix rho = DensityMatrix::diagonal({1.0, 0.0});
    try {
        variational_gradient(rho, Projector::coordinate(2, {1}));
        FAIL("expected ZeroCompression");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroCompression);
    }
}

TEST_CASE("maximize_F_n edge ranks") {
    Rng rng(93);
    const DensityMatrix rho = random_density(4, 4, rng);
    const OptimizeResult full = maximize_F_n(rho, 4);
    CHECK(std::abs(full.best_F - vn_entropy(rho)) <= 1e-12);
    CHECK(full.iters == 0);
    CHECK(full.converged);

    const OptimizeResult one = maximize_F_n(rho, 1);
    CHECK(one.best_F == 0.0);
    CHECK(one.best_Q.rank() == 1);
    CHECK(one.commutation_residual <= 1e-8);
}

TEST_CASE("maximize_F_n on diag(0.5, 0.3, 0.2), rank two") {
    const DensityMatrix rho = DensityMatrix::diagonal({0.5, 0.3, 0.2});
    const double f12 = oracle::F(rho.matrix(), oracle::coord(3, {0, 1}));
    const double f13 = oracle::F(rho.matrix(), oracle::coord(3, {0, 2}));
    const double f23 = oracle::F(rho.matrix(), oracle::coord(3, {1, 2}));
    CHECK(f12 == doctest::Approx(0.529251).epsilon(1e-6));
    CHECK(f13 == doctest::Approx(0.418789).epsilon(1e-6));
    CHECK(f23 == doctest::Approx(0.336506).epsilon(1e-6));

    const OptimizeResult r = maximize_F_n(rho, 2);
    CHECK(r.converged);
    CHECK(std::abs(r.best_F - f12) <= 1e-6);
    CHECK(max_abs(r.best_Q.matrix() - Projector::coordinate(3, {0, 1}).matrix()) <= 1e-4);
    CHECK(r.commutation_residual <= 1e-4);
    CHECK(std::abs(r.best_F - compression_entropy(rho, r.best_Q)) <= 1e-10);
    for (double v : r.restart_values) CHECK(r.best_F >= v - 1e-12);
    CHECK(r.restart_values.size() == 8);
    for (std::size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] >= r.history[k - 1]);
}

TEST_CASE("property: optimizer reaches the coordinate brute force on diagonal states") {
    Rng rng(95);
    for (int trial = 0; trial < 8; ++trial) {
        const Index d = 3 + static_cast<Index>(trial % 3);
        const DensityMatrix rho = nondegenerate_diagonal(d, rng);
        for (Index n = 2; n < d; ++n) {
            OptimizeConfig cfg;
            cfg.seed = static_cast<std::uint64_t>(trial);
            const OptimizeResult r = maximize_F_n(rho, n, cfg);
            CHECK(std::abs(r.best_F - oracle::best_coordinate_F(rho.matrix(), n)) <= 1e-6);
            if (r.converged) CHECK(r.commutation_residual <= 1e-4);
            CHECK(r.best_F <= vn_entropy(rho) + 1e-8);
        }
    }
}

TEST_CASE("property: ascent histories are non-decreasing on random states") {
    Rng rng(97);
    for (int trial = 0; trial < 6; ++trial) {
        const Index d = 3 + static_cast<Index>(trial % 3);
        const DensityMatrix rho = random_density(d, d, rng);
        OptimizeConfig cfg;
        cfg.restarts = 2;
        const OptimizeResult r = maximize_F_n(rho, d - 1, cfg);
        for (std::size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] >= r.history[k - 1]);
        CHECK(r.best_F < vn_entropy(rho));
    }
}

TEST_CASE("maximize_F_n preconditions") {
    try {
        maximize_F_n(DensityMatrix::diagonal({0.9, 0.1, 0.0}), 2);
        FAIL("expected NotStrictlyPositive");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotStrictlyPositive);
    }
    CHECK_THROWS_AS(maximize_F_n(DensityMatrix::maximally_mixed(3), 0), Error);
    CHECK_THROWS_AS(maximize_F_n(DensityMatrix::maximally_mixed(3), 4), Error);
    OptimizeConfig bad;
    bad.shrink = 1.5;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = OptimizeConfig{};
    bad.restarts = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("non-convergence is flagged, not thrown") {
    Rng rng(99);
    OptimizeConfig cfg;
    cfg.max_iters = 1;
    cfg.restarts = 1;
    cfg.grad_tol = 1e-300;
    const OptimizeResult r = maximize_F_n(random_density(4, 4, rng), 2, cfg);
    CHECK_FALSE(r.converged);
}

TEST_CASE("verify_lemma_FS examples") {
    const LemmaReport two = verify_lemma_FS(DensityMatrix::diagonal({0.7, 0.3}));
    REQUIRE(two.ranks.size() == 1);
    CHECK(two.ranks[0].best_F == 0.0);
    const double s = -(0.7 * std::log(0.7) + 0.3 * std::log(0.3));
    CHECK(std::abs(two.entropy - s) <= 1e-14);
    CHECK(s == doctest::Approx(0.610864).epsilon(1e-6));
    CHECK(two.strict);

    const LemmaReport third = verify_lemma_FS(DensityMatrix::maximally_mixed(3));
    REQUIRE(third.ranks.size() == 2);
    CHECK(std::abs(third.ranks[1].best_F - 2.0 / 3.0 * kLn2) <= 1e-10);
    CHECK(2.0 / 3.0 * kLn2 == doctest::Approx(0.462098).epsilon(1e-6));
    CHECK(third.strict);

    Rng rng(101);
    const LemmaReport four = verify_lemma_FS(random_density(4, 4, rng));
    CHECK(four.ranks.size() == 3);
    CHECK(four.strict);
    for (const LemmaRankEntry& e : four.ranks) CHECK(e.gap > 0.0);
}

TEST_CASE("integer partitions") {
    CHECK(integer_partitions(1).size() == 1);
    CHECK(integer_partitions(4).size() == 5);
    CHECK(integer_partitions(6).size() == 11);
    CHECK(integer_partitions(8).size() == 22);
    for (const auto& p : integer_partitions(5)) {
        Index sum = 0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            sum += p[k];
            if (k > 0) CHECK(p[k - 1] >= p[k]);
        }
        CHECK(sum == 5);
    }
}

TEST_CASE("delta S pattern maxima match a weight scan") {
    for (const std::vector<Index>& pattern : {std::vector<Index>{2, 2}, std::vector<Index>{1, 1},
                                              std::vector<Index>{3, 1}, std::vector<Index>{2, 1}}) {
        double scan = -1.0;
        for (int k = 0; k <= 200000; ++k) {
            const double w = k / 200000.0;
            scan = std::max(scan, delta_of_weights(pattern, {w, 1.0 - w}));
        }
        const DeltaPatternEntry e = maximize_delta_pattern(pattern);
        CHECK(std::abs(e.delta_s - scan) <= 1e-8);
        CHECK(e.delta_s >= scan - 1e-12);
        CHECK(std::abs(delta_of_weights(pattern, e.weights) - e.delta_s) <= 1e-12);
    }
    const DeltaPatternEntry ones = maximize_delta_pattern(std::vector<Index>{1, 1, 1});
    CHECK(std::abs(ones.delta_s - std::log(3.0)) <= 1e-12);
    CHECK_FALSE(ones.attained);
    CHECK(maximize_delta_pattern(std::vector<Index>{3}).delta_s == doctest::Approx(0.0));
}

TEST_CASE("probe_max_deltaS") {
    const DeltaProbeResult two = probe_max_deltaS(2);
    CHECK(std::abs(two.delta_s - kLn2) <= 1e-12);
    CHECK_FALSE(two.attained);
    CHECK(two.delta_s_at_rho < kLn2);
    CHECK(two.delta_s_at_rho > kLn2 - 1e-6);
    CHECK(std::abs(self_info_gain(DensityMatrix::maximally_mixed(2))) <= 1e-14);

    for (Index d = 3; d <= 6; ++d) {
        const DeltaProbeResult r = probe_max_deltaS(d);
        CHECK(r.delta_s <= std::log(static_cast<double>(d)) + 1e-12);
        CHECK(r.patterns.size() == integer_partitions(d).size());
        CHECK(std::abs(r.delta_s_at_rho - self_info_gain(r.rho)) <= 1e-12);
        for (const DeltaPatternEntry& e : r.patterns) CHECK(e.delta_s <= r.delta_s + 1e-12);
    }
}
