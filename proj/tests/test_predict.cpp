#include "nilrand/predict.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace nilrand;

namespace {

// Independent series oracle: partial sums plus the Euler-Maclaurin tail to
// second order.
double zeta_oracle(int s) {
    const int N = 2000;
    double sum = 0.0;
    for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
    const double n = N;
    return sum + std::pow(n, 1.0 - s) / (s - 1) + 0.5 * std::pow(n, -s) + s / 12.0 * std::pow(n, -s - 1);
}

} // namespace

TEST(Zeta, KnownValues) {
    const double pi = std::numbers::pi;
    EXPECT_NEAR(zeta(2).value, pi * pi / 6, 1e-10);
    EXPECT_NEAR(zeta(4).value, std::pow(pi, 4) / 90, 1e-10);
    EXPECT_NEAR(zeta(6).value, std::pow(pi, 6) / 945, 1e-10);
    EXPECT_LT(zeta(2).err_bound, 1e-11);
    for (int s = 2; s <= 12; ++s) EXPECT_NEAR(zeta(s).value, zeta_oracle(s), 1e-11) << s;
}

TEST(Zeta, MonotoneTowardOne) {
    for (int s = 2; s < 40; ++s) EXPECT_GT(zeta(s).value, zeta(s + 1).value);
    for (int s = 40; s < 80; ++s) EXPECT_GE(zeta(s).value, zeta(s + 1).value);
    EXPECT_NEAR(zeta(80).value, 1.0, 1e-15);
}

TEST(Zeta, DivergesBelowTwo) {
    try {
        zeta(1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::divergence);
    }
}

TEST(ProbRankDrop, Examples) {
    EXPECT_NEAR(prob_rank_drop(2, 1).value, 6 / (std::numbers::pi * std::numbers::pi), 1e-12);
    EXPECT_EQ(truncated_string(prob_rank_drop(2, 1).value, 4), ".6079");
    EXPECT_EQ(truncated_string(prob_rank_drop(2, 2).value, 4), ".9239");
    double prev = 0;
    for (int r = 1; r <= 20; ++r) {
        const double v = prob_rank_drop(2, r).value;
        EXPECT_GT(v, prev);
        prev = v;
    }
    EXPECT_NEAR(prev, 1.0, 1e-11);
}

TEST(ProbCyclic, TableValues) {
    EXPECT_EQ(truncated_string(prob_cyclic(2, 1).value, 4), ".6079");
    EXPECT_EQ(truncated_string(prob_cyclic(3, 2).value, 4), ".5057");
    EXPECT_EQ(truncated_string(prob_cyclic(4, 3).value, 4), ".4672");
    EXPECT_EQ(truncated_string(prob_cyclic(10, 9).value, 4), ".4361");
    EXPECT_EQ(truncated_string(prob_cyclic(100, 99).value, 4), ".4357");
    EXPECT_EQ(truncated_string(prob_cyclic(2, 2).value, 4), ".9239");
    EXPECT_EQ(truncated_string(prob_cyclic(100, 100).value, 4), ".8469");
    for (int m : {2, 3, 4, 10, 100})
        for (int r : {m - 1, m}) {
            const ProbValue v = prob_cyclic(m, r);
            EXPECT_LT(v.err_bound, 1e-8);
            EXPECT_TRUE(truncation_is_certain(v, 4)) << m << ' ' << r;
        }
}

TEST(ProbCyclic, BalancedMatchesFrozenOracle) {
    // Frozen from two independent 25-digit evaluations: the Euler product of
    // P(m) over primes below 2e6 divided by Z(m), and the product over primes
    // of Pr(corank <= 1) from the F_p column recursion.
    EXPECT_NEAR(prob_cyclic(3, 3).value, 0.8845037, 2e-7);
    EXPECT_NEAR(prob_cyclic(4, 4).value, 0.8653434, 2e-7);
    EXPECT_NEAR(prob_cyclic(10, 10).value, 0.8472126, 2e-7);
    // Limit prod_p (1 + 1/(p(p-1))) / prod_{j>=2} zeta(j) = 0.846936...
    EXPECT_NEAR(prob_cyclic(100, 100).value, 0.8469360, 2e-7);
    double prev = 1;
    for (int m = 2; m <= 12; ++m) {
        EXPECT_LT(prob_cyclic(m, m).value, prev);
        prev = prob_cyclic(m, m).value;
    }
}

TEST(ProbCyclic, OtherRelatorCountsUnsupported) {
    try {
        prob_cyclic(3, 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unsupported);
    }
}

TEST(ProbCyclic, BalancedCaseEqualsRankDropForTwo) {
    // For m = 2 both P(2)/Z(2) and 1/zeta(4) describe r = 2.
    EXPECT_NEAR(prob_cyclic(2, 2).value, prob_rank_drop(2, 2).value, 1e-9);
}

TEST(ProbTrivial, PredictionList) {
    const int expected[] = {506, 769, 891, 948, 975, 988, 994, 997};
    for (int r = 3; r <= 10; ++r) {
        const double v = prob_trivial(2, r).value;
        EXPECT_EQ(static_cast<int>(std::lround(v * 1000)), expected[r - 3]) << r;
    }
    EXPECT_EQ(truncated_string(prob_trivial(2, 3).value, 4), ".5057");
    // 1/(zeta(3) zeta(4)) and 1/(zeta(9) zeta(10)).
    EXPECT_EQ(truncated_string(prob_trivial(2, 4).value, 4), ".7686");
    EXPECT_EQ(truncated_string(prob_trivial(2, 10).value, 4), ".9970");
    try {
        prob_trivial(2, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unsupported);
    }
}

TEST(ProbTrivial, Duality) {
    for (int m = 1; m <= 8; ++m) {
        const double a = prob_trivial(m, m + 1).value;
        EXPECT_NEAR(a, 1.0 / Z(m + 1).value, 1e-10);
        EXPECT_NEAR(a, prob_cyclic(m + 1, m).value, 1e-10);
    }
}

TEST(ProbPrimitive, Examples) {
    EXPECT_NEAR(prob_primitive(2).value, 6 / (std::numbers::pi * std::numbers::pi), 1e-12);
    EXPECT_NEAR(prob_primitive(3).value, 1.0 / zeta_oracle(3), 1e-10);
    EXPECT_NEAR(prob_primitive(3).value, 0.8319, 1e-4);
    for (int m = 2; m < 30; ++m) EXPECT_LT(prob_primitive(m).value, prob_primitive(m + 1).value);
}

TEST(PMp, Examples) {
    EXPECT_DOUBLE_EQ(P_m_p(2, 1), 0.5);
    EXPECT_DOUBLE_EQ(P_m_p(2, 2), 5.0 / 8.0);
    EXPECT_NEAR(P_m_p(10007, 3) * 10007, 1.0, 2e-4);
    try {
        P_m_p(9, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_prime);
    }
}

TEST(ProbGcdDetsOne, IncreasingInK) {
    for (int m : {2, 3}) {
        double prev = 0;
        for (int k = 1; k <= 8; ++k) {
            const double v = prob_gcd_dets_one(m, k, 100000).value;
            EXPECT_GT(v, prev);
            prev = v;
        }
        EXPECT_GT(prev, 0.95);
    }
}

TEST(ProbGcdDetsOne, SingleMatrixTendsToZero) {
    // prod_p (1-1/p)(1-1/p^2) ~ exp(-gamma)/(zeta(2) ln C) by Mertens.
    double prev = 1;
    for (std::uint64_t cutoff : {1000ull, 10000ull, 100000ull}) {
        const double v = prob_gcd_dets_one(2, 1, cutoff).value;
        EXPECT_LT(v, prev);
        const double mertens = std::exp(-std::numbers::egamma) / (std::log(static_cast<double>(cutoff)) * zeta(2).value);
        EXPECT_NEAR(v / mertens, 1.0, 0.03) << cutoff;
        prev = v;
    }
}

TEST(ProbGcdDetsOne, ErrorBoundDominatesCutoffDoubling) {
    for (int m : {2, 3, 4})
        for (int k : {2, 3, 4})
            for (std::uint64_t c : {1000ull, 10000ull, 100000ull}) {
                const ProbValue a = prob_gcd_dets_one(m, k, c), b = prob_gcd_dets_one(m, k, 2 * c);
                EXPECT_LE(std::abs(a.value - b.value), a.err_bound) << m << ' ' << k << ' ' << c;
            }
    EXPECT_LT(prob_gcd_dets_one(2, 2).err_bound, 1e-8);
}

TEST(ProbCyclicBalanced, ErrorBoundDominatesCutoffDoubling) {
    for (int m : {2, 3, 4, 10})
        for (std::uint64_t c : {1000ull, 10000ull, 100000ull}) {
            const ProbValue a = prob_cyclic_balanced(m, c), b = prob_cyclic_balanced(m, 2 * c);
            EXPECT_LE(std::abs(a.value - b.value), a.err_bound) << m << ' ' << c;
        }
}

TEST(CorankDist, Examples) {
    auto d = corank_dist_mod_p(1, 1, 2);
    EXPECT_DOUBLE_EQ(d[1], 0.5);
    d = corank_dist_mod_p(3, 0, 5);
    EXPECT_EQ(d, (std::vector<double>{0, 0, 0, 1}));
    // 2 x 2 over F_2: 6 invertible, 9 of rank 1, 1 zero matrix.
    d = corank_dist_mod_p(2, 2, 2);
    EXPECT_DOUBLE_EQ(d[0], 6.0 / 16);
    EXPECT_DOUBLE_EQ(d[1], 9.0 / 16);
    EXPECT_DOUBLE_EQ(d[2], 1.0 / 16);
}

TEST(CorankDist, EnumerationMatchesRecursion) {
    for (std::uint64_t p : {2ull, 3ull, 5ull})
        for (int m = 0; m <= 3; ++m)
            for (int r = 0; r <= 3; ++r) {
                if (std::pow(static_cast<double>(p), m * r) > 2e6) continue;
                const auto a = corank_dist_mod_p_enumerate(m, r, p), b = corank_dist_mod_p_recursive(m, r, p);
                ASSERT_EQ(a.size(), b.size());
                for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12) << p << m << r;
            }
}

TEST(Truncation, Helpers) {
    EXPECT_EQ(truncated_string(0.60799, 4), ".6079");
    EXPECT_EQ(truncated_string(0.05, 4), ".0500");
    EXPECT_DOUBLE_EQ(truncate_digits(0.98769, 3), 0.987);
    EXPECT_FALSE(truncation_is_certain({0.60800000001, 1e-9}, 4));
    EXPECT_TRUE(truncation_is_certain({0.6079271, 1e-9}, 4));
}
