#include "nilrand/arithstat.hpp"
#include "nilrand/predict.hpp"
#include "properties.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace nilrand;

namespace {

std::pair<Integer, Integer> frac(std::int64_t a, std::int64_t b) { return {a, b}; }

bool same_rational(const std::pair<Integer, Integer>& x, const std::pair<Integer, Integer>& y) {
    return x.first * y.second == y.first * x.second;
}

} // namespace

TEST(ExactCoordDist, Examples) {
    CoordDist d = exact_coord_dist(2, 1);
    EXPECT_TRUE(same_rational(d.probability(0), frac(1, 2)));
    EXPECT_TRUE(same_rational(d.probability(1), frac(1, 4)));
    EXPECT_TRUE(same_rational(d.probability(-1), frac(1, 4)));
    EXPECT_TRUE(same_rational(d.probability(2), frac(0, 1)));

    d = exact_coord_dist(3, 2);
    EXPECT_TRUE(same_rational(d.probability(2), frac(1, 36)));

    d = exact_coord_dist(2, 0);
    EXPECT_TRUE(same_rational(d.probability(0), frac(1, 1)));
    EXPECT_TRUE(check_monotonicity(d));

    try {
        exact_coord_dist(1, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unsupported);
    }
}

TEST(ExactCoordDist, MassSymmetryMonotonicity) {
    const props::Outcome r = props::monotonicity_suite({2, 3, 4}, 128);
    EXPECT_TRUE(r.ok) << r.detail;
    EXPECT_TRUE(check_monotonicity(exact_coord_dist(2, 100)));
    EXPECT_TRUE(check_monotonicity(exact_coord_dist(4, 512)));
}

TEST(ExactCoordDist, MatchesBruteForceStrings) {
    // All (2m)^len strings for small cases.
    for (int m : {2, 3})
        for (std::size_t len = 0; len <= 5; ++len) {
            const CoordDist d = exact_coord_dist(m, len);
            std::map<std::int64_t, std::int64_t> hist;
            std::size_t total = 1;
            for (std::size_t i = 0; i < len; ++i) total *= static_cast<std::size_t>(2 * m);
            for (std::size_t code = 0; code < total; ++code) {
                std::size_t c = code;
                std::int64_t x = 0;
                for (std::size_t i = 0; i < len; ++i, c /= static_cast<std::size_t>(2 * m)) {
                    const auto letter = static_cast<int>(c % static_cast<std::size_t>(2 * m));
                    if (letter == 0) ++x;
                    if (letter == m) --x;
                }
                ++hist[x];
            }
            for (auto [x, n] : hist) ASSERT_EQ(d.count(x), n) << m << ' ' << len << ' ' << x;
        }
}

TEST(ExactCoordDist, MatchesSimpleWalkMonteCarlo) {
    const std::size_t len = 50, samples = 1000000;
    const CoordDist d = exact_coord_dist(2, len);
    std::vector<std::size_t> hist(2 * len + 1, 0);
    RngStream rng(1, 0);
    for (std::size_t s = 0; s < samples; ++s) {
        std::int64_t x = 0;
        for (int letter : random_string(2, len, rng)) x += letter == 1 ? 1 : (letter == -1 ? -1 : 0);
        ++hist[static_cast<std::size_t>(x + static_cast<std::int64_t>(len))];
    }
    for (std::int64_t x = -static_cast<std::int64_t>(len); x <= static_cast<std::int64_t>(len); ++x) {
        const double p = d.probability_value(x);
        const double sd = std::sqrt(samples * p * (1 - p));
        const double observed = static_cast<double>(hist[static_cast<std::size_t>(x + static_cast<std::int64_t>(len))]);
        EXPECT_LE(std::abs(observed - samples * p), 4 * sd + 1e-9) << x;
    }
}

TEST(ResidueDeviation, Examples) {
    EXPECT_EQ(residue_deviation(2, 1000, 1, 100, 1), 0.0);
    EXPECT_LT(residue_deviation(2, 1000, 5, 100000, 2), 0.01);
    EXPECT_LT(residue_deviation(2, 1000, 6, 100000, 3), 0.01);
    EXPECT_LT(residue_deviation(2, 1000, 3, 100000, 4, 2), 0.01);
}

TEST(PrimitivityFrequency, MatchesInverseZeta) {
    EXPECT_NEAR(primitivity_frequency(2, 1000, 100000, 5), prob_primitive(2).value, 0.005);
    EXPECT_NEAR(primitivity_frequency(3, 1000, 100000, 6), prob_primitive(3).value, 0.005);
}

TEST(PrimitivityFrequency, IncreasesWithRank) {
    double prev = 0;
    for (int m = 2; m <= 6; ++m) {
        const double f = primitivity_frequency(m, 200, 20000, 7);
        EXPECT_GT(f, prev - 0.01) << m;
        prev = f;
    }
}

TEST(DetGcdFrequency, MatchesProduct) {
    const DetGcdStats s = det_gcd_frequency(2, 3, 1000, 10000, 8);
    const double p = prob_gcd_dets_one(2, 3).value;
    EXPECT_LE(std::abs(s.frequency() - p), 3 * std::sqrt(p * (1 - p) / 10000));
    EXPECT_LT(s.singular_frequency(), 0.01);
}

TEST(DetGcdFrequency, MoreMatricesHelp) {
    const std::size_t n = 10000;
    const DetGcdStats a = det_gcd_frequency(2, 2, 200, n, 9), b = det_gcd_frequency(2, 6, 200, n, 10);
    const double pa = a.frequency(), pb = b.frequency();
    const double se = std::sqrt(pa * (1 - pa) / n + pb * (1 - pb) / n);
    EXPECT_GT((pb - pa) / se, -2.0);
    EXPECT_THROW(det_gcd_frequency(2, 1, 10, 10, 1), Error);
}

TEST(MonteCarlo, WorkerCountDoesNotMatter) {
    EXPECT_EQ(primitivity_frequency(2, 300, 3000, 11, 1), primitivity_frequency(2, 300, 3000, 11, 4));
    const DetGcdStats a = det_gcd_frequency(2, 2, 100, 2000, 12, 1), b = det_gcd_frequency(2, 2, 100, 2000, 12, 3);
    EXPECT_EQ(a.gcd_one, b.gcd_one);
    EXPECT_EQ(a.singular, b.singular);
}
