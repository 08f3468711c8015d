#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

#include "qce/random.hpp"
#include "qce/shannon.hpp"

using namespace qce;

namespace {

RealMatrix random_joint(Index n, Index m, Rng& rng, bool with_zeros) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RealMatrix j(n, m);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < m; ++b) j(a, b) = (with_zeros && u(rng) < 0.25) ? 0.0 : u(rng);
    if (j.sum() == 0.0) j(0, 0) = 1.0;
    return j / j.sum();
}

// H(X|Y) straight from a joint matrix: H(X,Y) - H(Y).
double oracle_cond(const RealMatrix& joint) {
    std::vector<double> all, col;
    for (Index a = 0; a < joint.rows(); ++a)
        for (Index b = 0; b < joint.cols(); ++b) all.push_back(joint(a, b));
    for (Index b = 0; b < joint.cols(); ++b) col.push_back(joint.col(b).sum());
    return oracle::shannon(all) - oracle::shannon(col);
}

}  // namespace

TEST_CASE("shannon_cond examples") {
    SUBCASE("independent partitions") {
        RealMatrix j(2, 3);
        const double p[] = {0.3, 0.7}, q[] = {0.2, 0.5, 0.3};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 3; ++b) j(a, b) = p[a] * q[b];
        const auto d = ClassicalPartitionData::from_joint(j);
        CHECK(std::abs(shannon_cond(d) - shannon_entropy(d.p())) <= 1e-12);
    }
    SUBCASE("X a consequence of Y") {
        RealMatrix j = RealMatrix::Zero(2, 3);
        j(0, 0) = 0.2;
        j(1, 1) = 0.5;
        j(0, 2) = 0.3;
        CHECK(shannon_cond(ClassicalPartitionData::from_joint(j)) == 0.0);
    }
    SUBCASE("three quarters / one quarter") {
        RealMatrix pq(2, 2), qp(2, 2);
        pq << 0.75, 0.25, 0.25, 0.75;
        qp << 0.75, 0.25, 0.25, 0.75;
        const auto d = ClassicalPartitionData::from_conditionals({0.5, 0.5}, {0.5, 0.5}, pq, qp);
        const double expect = 0.75 * std::log(4.0 / 3.0) + 0.25 * std::log(4.0);
        CHECK(std::abs(shannon_cond(d) - expect) <= 1e-14);
        CHECK(expect == doctest::Approx(0.562335).epsilon(1e-6));
        CHECK(std::abs(mutual_info(d) - (std::log(2.0) - expect)) <= 1e-14);
        CHECK(std::log(2.0) - expect == doctest::Approx(0.130812).epsilon(1e-5));
    }
    SUBCASE("diagonal construction gives H(X|X) = 0 and I(X||X) = H(X)") {
        RealMatrix j = RealMatrix::Zero(3, 3);
        j(0, 0) = 0.2;
        j(1, 1) = 0.3;
        j(2, 2) = 0.5;
        const auto d = ClassicalPartitionData::from_joint(j);
        CHECK(shannon_cond(d) == 0.0);
        CHECK(std::abs(mutual_info(d) - shannon_entropy(d.p())) <= 1e-14);
    }
    SUBCASE("trivial conditioning") {
        RealMatrix j(3, 1);
        j << 0.2, 0.3, 0.5;
        const auto d = ClassicalPartitionData::from_joint(j);
        CHECK(std::abs(mutual_info(d)) <= 1e-14);
        CHECK(std::abs(shannon_joint(d) - shannon_entropy(d.p())) <= 1e-14);
    }
}

TEST_CASE("invalid partition data is rejected") {
    RealMatrix pq(2, 2), qp(2, 2);
    pq << 0.75, 0.25, 0.25, 0.75;
    qp << 0.5, 0.5, 0.5, 0.5;
    try {
        ClassicalPartitionData::from_conditionals({0.5, 0.5}, {0.5, 0.5}, pq, qp);
        FAIL("expected InvalidPartitionData");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidPartitionData);
    }
    RealMatrix neg(1, 2);
    neg << 1.2, -0.2;
    CHECK_THROWS_AS(ClassicalPartitionData::from_joint(neg), Error);
}

TEST_CASE("property: bounds, swap symmetry and Bayes consistency on random joints") {
    Rng rng(61);
    for (int trial = 0; trial < 1000; ++trial) {
        const Index n = 1 + static_cast<Index>(rng() % 5), m = 1 + static_cast<Index>(rng() % 5);
        const RealMatrix joint = random_joint(n, m, rng, trial % 3 == 0);
        const auto d = ClassicalPartitionData::from_joint(joint);
        const double h = shannon_cond(d);
        CHECK(std::abs(h - oracle_cond(joint)) <= 1e-12);
        CHECK(h >= -1e-9);
        CHECK(h <= shannon_entropy(d.p()) + 1e-9);
        const double hj = shannon_joint(d);
        CHECK(hj >= shannon_entropy(d.q()) - 1e-9);
        CHECK(hj <= shannon_entropy(d.p()) + shannon_entropy(d.q()) + 1e-9);
        CHECK(std::abs(hj - shannon_joint(d.swapped())) <= 1e-9);
        const double i = mutual_info(d);
        CHECK(i >= -1e-9);
        CHECK(i <= shannon_entropy(d.p()) + 1e-9);
        CHECK((d.joint() - d.joint_via_q()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((d.joint() - joint).cwiseAbs().maxCoeff() <= 1e-12);

        const auto rebuilt = ClassicalPartitionData::from_conditionals(d.p().weights(), d.q().weights(), d.p_given_q(),
                                                                       d.q_given_p());
        CHECK(rebuilt == d);
        CHECK(d.swapped().swapped() == d);
    }
}
