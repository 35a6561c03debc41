#pragma once

// Arithmetic statistics of random walk coordinates: exact single-coordinate
// distributions of the simple walk on Z^m, and Monte Carlo frequencies of
// residues, primitivity and determinant gcds for random relators.

#include "nilrand/error.hpp"
#include "nilrand/heiscalc.hpp"
#include "nilrand/integer.hpp"
#include "nilrand/intlinalg.hpp"
#include "nilrand/parallel.hpp"
#include "nilrand/randwalk.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace nilrand {

/// Exact distribution of one coordinate of the simple random walk on Z^m
/// after `len` steps, stored as integer counts over (2m)^len.
struct CoordDist {
    int m = 2;
    std::size_t len = 0;
    std::vector<Integer> counts; ///< counts[x + len] for x in [-len, len]
    Integer denominator = 1;

    const Integer& count(std::int64_t x) const { return counts[static_cast<std::size_t>(x + static_cast<std::int64_t>(len))]; }

    /// p(x) as (numerator, denominator); zero outside the support.
    std::pair<Integer, Integer> probability(std::int64_t x) const {
        if (x < -static_cast<std::int64_t>(len) || x > static_cast<std::int64_t>(len)) return {0, denominator};
        return {count(x), denominator};
    }

    double probability_value(std::int64_t x) const {
        auto [num, den] = probability(x);
        using big_float = boost::multiprecision::cpp_bin_float_50;
        return static_cast<double>(big_float(num) / big_float(den));
    }
};

/// One step of the lazy-walk recurrence
///   p_l(x) = p_{l-1}(x-1)/(2m) + (m-1)/m p_{l-1}(x) + p_{l-1}(x+1)/(2m),
/// in counts over (2m)^l: N_l(x) = N(x-1) + (2m-2) N(x) + N(x+1).
inline CoordDist next_coord_dist(const CoordDist& prev) {
    CoordDist out;
    out.m = prev.m;
    out.len = prev.len + 1;
    out.denominator = prev.denominator * (2 * prev.m);
    out.counts.assign(2 * out.len + 1, Integer(0));
    const Integer stay = 2 * prev.m - 2;
    for (std::size_t i = 0; i < prev.counts.size(); ++i) {
        const Integer& c = prev.counts[i];
        if (c == 0) continue;
        // prev index i is x = i - prev.len; the same x sits at i + 1 now.
        out.counts[i] += c;
        out.counts[i + 1] += stay * c;
        out.counts[i + 2] += c;
    }
    return out;
}

inline CoordDist exact_coord_dist(int m, std::size_t len) {
    if (m < 2) throw Error(ErrorCode::unsupported, "the lazy-walk decomposition needs m >= 2");
    CoordDist d;
    d.m = m;
    d.counts = {Integer(1)};
    for (std::size_t l = 0; l < len; ++l) d = next_coord_dist(d);
    return d;
}

/// Strict decrease p(x) > p(x+1) for 0 <= x < len.
inline bool check_monotonicity(const CoordDist& d) {
    for (std::size_t x = 0; x < d.len; ++x) {
        const auto i = static_cast<std::int64_t>(x);
        if (!(d.count(i) > d.count(i + 1))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Monte Carlo over random relators. Trial t always uses RngStream(seed, t).

/// Largest |empirical - uniform| over residue classes mod n of the first
/// `coords` weight coordinates (1 or 2) of random relators.
inline double residue_deviation(int m, std::size_t len, std::uint64_t n, std::size_t trials, std::uint64_t seed,
                                int coords = 1, unsigned workers = default_workers()) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "modulus must be positive");
    if (coords < 1 || coords > 2 || coords > m) throw Error(ErrorCode::unsupported, "coords must be 1 or 2 (<= m)");
    if (trials == 0) throw Error(ErrorCode::invalid_argument, "need at least one trial");
    const auto residues = run_trials<std::uint64_t>(trials, workers, [&](std::size_t t) {
        RngStream rng(seed, t);
        const WeightVector w = weight_vector(random_relator(m, len, rng));
        std::uint64_t cell = 0;
        for (int i = 0; i < coords; ++i)
            cell = cell * n + mod_floor(w.entries[static_cast<std::size_t>(i)], Integer(n)).convert_to<std::uint64_t>();
        return cell;
    });
    std::uint64_t cells = 1;
    for (int i = 0; i < coords; ++i) cells *= n;
    std::vector<std::size_t> histogram(cells, 0);
    for (std::uint64_t r : residues) ++histogram[r];
    const double expected = 1.0 / static_cast<double>(cells);
    double worst = 0.0;
    for (std::size_t h : histogram)
        worst = std::max(worst, std::abs(static_cast<double>(h) / static_cast<double>(trials) - expected));
    return worst;
}

/// Fraction of random relators whose weight vector is primitive.
inline double primitivity_frequency(int m, std::size_t len, std::size_t trials, std::uint64_t seed,
                                    unsigned workers = default_workers()) {
    if (m < 2) throw Error(ErrorCode::invalid_argument, "need m >= 2");
    if (trials == 0) throw Error(ErrorCode::invalid_argument, "need at least one trial");
    const auto hits = run_trials<char>(trials, workers, [&](std::size_t t) {
        RngStream rng(seed, t);
        return static_cast<char>(is_primitive(weight_vector(random_relator(m, len, rng)).entries));
    });
    return static_cast<double>(std::count(hits.begin(), hits.end(), 1)) / static_cast<double>(trials);
}

struct DetGcdStats {
    std::size_t trials = 0;
    std::size_t gcd_one = 0;     ///< trials whose k determinants are coprime
    std::size_t determinants = 0;
    std::size_t singular = 0;    ///< determinants equal to zero

    double frequency() const { return trials ? static_cast<double>(gcd_one) / static_cast<double>(trials) : 0.0; }
    double singular_frequency() const {
        return determinants ? static_cast<double>(singular) / static_cast<double>(determinants) : 0.0;
    }
};

/// Per trial: k matrices of m random-relator weight columns each; records
/// whether gcd(det_1, ..., det_k) = 1.
inline DetGcdStats det_gcd_frequency(int m, int k, std::size_t len, std::size_t trials, std::uint64_t seed,
                                     unsigned workers = default_workers()) {
    if (m < 2 || k < 2) throw Error(ErrorCode::invalid_argument, "need m >= 2 and k >= 2");
    struct Outcome {
        bool coprime = false;
        int singular = 0;
    };
    const auto outcomes = run_trials<Outcome>(trials, workers, [&](std::size_t t) {
        RngStream rng(seed, t);
        Outcome o;
        Integer g = 0;
        for (int i = 0; i < k; ++i) {
            std::vector<Word> columns;
            for (int j = 0; j < m; ++j) columns.push_back(random_relator(m, len, rng));
            IntMatrix M(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
            for (std::size_t j = 0; j < columns.size(); ++j) {
                const WeightVector w = weight_vector(columns[j]);
                for (std::size_t r = 0; r < w.size(); ++r) M(r, j) = w.entries[r];
            }
            const Integer d = det(M);
            if (d == 0) ++o.singular;
            g = gcd(g, d);
        }
        o.coprime = g == 1;
        return o;
    });
    DetGcdStats s;
    s.trials = trials;
    s.determinants = trials * static_cast<std::size_t>(k);
    for (const Outcome& o : outcomes) {
        s.gcd_one += o.coprime ? 1 : 0;
        s.singular += static_cast<std::size_t>(o.singular);
    }
    return s;
}

} // namespace nilrand
