#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "volcp/error.hpp"
#include "volcp/metrics.hpp"

using namespace volcp;

TEST(Hausdorff, IdenticalSets) {
    const auto h = hausdorff({3, 10, 20}, {3, 10, 20});
    EXPECT_EQ(h.a_given_b, 0.0);
    EXPECT_EQ(h.b_given_a, 0.0);
    EXPECT_EQ(h.symmetric, 0.0);
}

TEST(Hausdorff, HandExample) {
    const auto h = hausdorff({3}, {1, 5});
    EXPECT_EQ(h.a_given_b, 2.0);
    EXPECT_EQ(h.b_given_a, 2.0);
    EXPECT_EQ(h.symmetric, 2.0);
}

TEST(Hausdorff, MatchesBruteForceAndIsSymmetric) {
    std::mt19937_64 g(1);
    std::uniform_int_distribution<std::size_t> pos(0, 100), len(1, 8);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<std::size_t> a(len(g)), b(len(g));
        for (auto& v : a) v = pos(g);
        for (auto& v : b) v = pos(g);
        const auto h = hausdorff(a, b);
        EXPECT_EQ(h.a_given_b, oracle::brute_directed(a, b));
        EXPECT_EQ(h.b_given_a, oracle::brute_directed(b, a));
        EXPECT_EQ(h.symmetric, hausdorff(b, a).symmetric);
        EXPECT_GE(h.symmetric, 0.0);
    }
}

TEST(Hausdorff, EmptySetConventions) {
    const auto h = hausdorff({5}, {});
    EXPECT_EQ(h.a_given_b, 0.0);
    EXPECT_TRUE(std::isinf(h.b_given_a));
    EXPECT_TRUE(h.missed_all);
    EXPECT_DOUBLE_EQ(hausdorff_pct({100}, {110}, 1000), 1.0);
}

TEST(Ase, Basics) {
    EXPECT_EQ(ase({1, 2, 3}, {1, 2, 3}), 0.0);
    EXPECT_DOUBLE_EQ(ase({1, 3}, {0, 0}), 5.0);
    EXPECT_THROW(ase({1}, {1, 2}), DataError);
    EXPECT_DOUBLE_EQ(ase({3, 1}, {0, 0}), ase({1, 3}, {0, 0}));
}

TEST(Ase, OneStepEqualsMseAgainstNextSquare) {
    const std::vector<double> r{0.1, -0.2, 0.3, 0.05};
    const auto real = realized_sums(r, {1, 2, 3}, 1);
    EXPECT_DOUBLE_EQ(real[0], 0.04);
    EXPECT_DOUBLE_EQ(real[2], 0.0025);
    const auto two = realized_sums(r, {0, 2}, 2);
    EXPECT_DOUBLE_EQ(two[0], 0.01 + 0.04);
    EXPECT_THROW(realized_sums(r, {3}, 2), DataError);
}

TEST(PctImprovement, Orientation) {
    EXPECT_EQ(pct_improvement(5, 5).literal, 0.0);
    const auto imp = pct_improvement(80, 100);
    EXPECT_DOUBLE_EQ(imp.literal, -20.0);
    EXPECT_DOUBLE_EQ(imp.display, 20.0);
    EXPECT_THROW(pct_improvement(1, 0), ParameterError);
}

TEST(Dm, IdenticalLosses) {
    const std::vector<double> l(20, 1.5);
    const auto r = dm_test(l, l, 1);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_EQ(r.p_value, 1.0);
    EXPECT_FALSE(r.degenerate);
}

TEST(Dm, ConstantNonzeroDifferential) {
    const std::vector<double> a(10, 2.0), b(10, 1.0);
    const auto r = dm_test(a, b, 1);
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.p_value, 0.0);
    EXPECT_GT(r.statistic, 0.0);
}

TEST(Dm, AntisymmetricUnderSwap) {
    std::mt19937_64 g(2);
    std::normal_distribution<double> nd;
    std::vector<double> a(60), b(60);
    for (auto& v : a) v = nd(g) * nd(g);
    for (auto& v : b) v = nd(g) * nd(g);
    const auto x = dm_test(a, b, 3);
    const auto y = dm_test(b, a, 3);
    EXPECT_NEAR(x.statistic, -y.statistic, 1e-12);
    EXPECT_NEAR(x.p_value, y.p_value, 1e-12);
}

TEST(Dm, TooFewWindows) {
    EXPECT_THROW(dm_test(std::vector<double>(9, 1.0), std::vector<double>(9, 0.0), 1), DataError);
}

TEST(Dm, KnownValue) {
    // d = (1, -1, 2, 0, 1, 3, -2, 1, 0, 1), f = 1: mean 0.6, variance 1.84.
    std::vector<double> a{1, -1, 2, 0, 1, 3, -2, 1, 0, 1}, b(10, 0.0);
    const auto r = dm_test(a, b, 1);
    EXPECT_NEAR(r.statistic, 0.6 / std::sqrt(1.84 / 10), 1e-12);
    EXPECT_NEAR(r.p_value, std::erfc(r.statistic / std::sqrt(2.0)), 1e-15);
}
