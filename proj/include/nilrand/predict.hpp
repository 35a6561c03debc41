#pragma once

// Closed-form probabilities for random abelian and nilpotent quotients:
// zeta values and Euler products, each returned with a rigorous bound on
// its truncation error.

#include "nilrand/error.hpp"
#include "nilrand/integer.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace nilrand {

/// A probability together with an upper bound on |value - exact|.
struct ProbValue {
    double value = 0.0;
    double err_bound = 0.0;
};

inline constexpr std::uint64_t k_default_prime_cutoff = 1000000;
inline constexpr long double k_zeta_tolerance = 1e-12L;

namespace detail {

/// zeta(s) with its absolute error bound, s >= 2.
struct ZetaValue {
    long double value;
    long double err;
};

inline ZetaValue compute_zeta(int s) {
    // sum_{n<N} n^{-s} + integral_N^inf x^{-s} dx + N^{-s}/2. The true tail
    // sum_{n>=N} n^{-s} lies between the integral and the integral plus
    // N^{-s}, so the midpoint is off by at most N^{-s}/2.
    const long double target = 2 * k_zeta_tolerance;
    auto N = static_cast<std::uint64_t>(std::ceil(std::pow(target, -1.0L / s)));
    N = std::max<std::uint64_t>(N, 8);
    auto power = [s](long double n) { return s == 2 ? 1.0L / (n * n) : std::pow(n, -static_cast<long double>(s)); };
    long double sum = 0.0L;
    for (std::uint64_t n = N - 1; n >= 1; --n) sum += power(static_cast<long double>(n));
    const auto Nl = static_cast<long double>(N);
    const long double tail = std::pow(Nl, 1.0L - s) / (s - 1) + power(Nl) / 2;
    const long double rounding = static_cast<long double>(N) * 1e-19L + 1e-18L;
    return {sum + tail, power(Nl) / 2 + rounding};
}

inline const ZetaValue& cached_zeta(int s) {
    static std::mutex mutex;
    static std::map<int, ZetaValue> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, compute_zeta(s)).first;
    return it->second;
}

inline std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

inline const std::vector<std::uint32_t>& primes_up_to(std::uint64_t limit) {
    static std::mutex mutex;
    static std::map<std::uint64_t, std::vector<std::uint32_t>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(limit);
    if (it == cache.end()) it = cache.emplace(limit, sieve_primes(limit)).first;
    return it->second;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// 1 - prod_{i<=m} (1 - p^{-i}), evaluated without cancellation.
inline long double singular_fraction(std::uint64_t p, int m) {
    long double log_nonsingular = 0.0L;
    const long double inv = 1.0L / static_cast<long double>(p);
    long double term = 1.0L;
    for (int i = 1; i <= m; ++i) {
        term *= inv;
        log_nonsingular += std::log1p(-term);
    }
    return -std::expm1(log_nonsingular);
}

/// Product of zeta(s) for s in [from, to], with relative error bound.
struct ZetaProduct {
    long double value = 1.0L;
    long double rel_err = 0.0L;
};

inline ZetaProduct zeta_product(int from, int to) {
    ZetaProduct out;
    for (int s = from; s <= to; ++s) {
        const ZetaValue& z = cached_zeta(s);
        out.value *= z.value;
        out.rel_err += z.err / z.value;
    }
    out.rel_err *= 1.01L; // second-order terms
    return out;
}

inline ProbValue reciprocal(const ZetaProduct& z) {
    const long double v = 1.0L / z.value;
    return {static_cast<double>(v), static_cast<double>(v * z.rel_err + 1e-16L)};
}

} // namespace detail

/// Riemann zeta at an integer s >= 2 with |error| below 1e-12.
inline ProbValue zeta(int s) {
    if (s < 2) throw Error(ErrorCode::divergence, "zeta(s) diverges for s < 2");
    const auto& z = detail::cached_zeta(s);
    // The field is named like a probability but zeta itself exceeds 1.
    return {static_cast<double>(z.value), static_cast<double>(z.err)};
}

/// Z(m) = zeta(2) zeta(3) ... zeta(m); 1 for m < 2.
inline ProbValue Z(int m) {
    const auto z = detail::zeta_product(2, m);
    return {static_cast<double>(z.value), static_cast<double>(z.value * z.rel_err)};
}

/// Probability that r random relators drop the rank of N_{s,m}: 1/zeta(rm).
inline ProbValue prob_rank_drop(int m, int r) {
    if (m < 2 || r < 1) throw Error(ErrorCode::invalid_argument, "need m >= 2 and r >= 1");
    return detail::reciprocal(detail::zeta_product(r * m, r * m));
}

/// Probability that a random relator is primitive in abelianization: 1/zeta(m).
inline ProbValue prob_primitive(int m) {
    if (m < 2) throw Error(ErrorCode::invalid_argument, "need m >= 2");
    return detail::reciprocal(detail::zeta_product(m, m));
}

/// Probability that r > m random vectors generate Z^m:
/// 1 / (zeta(r-m+1) ... zeta(r)).
inline ProbValue prob_trivial(int m, int r) {
    if (m < 1) throw Error(ErrorCode::invalid_rank, "rank must be at least 1");
    if (r <= m) throw Error(ErrorCode::unsupported, "fewer than m+1 relators never trivialize (probability 0)");
    return detail::reciprocal(detail::zeta_product(r - m + 1, r));
}

/// P(m) / Z(m) as a product over primes p <= cutoff of the accelerated
/// factors (1 + p^{-2} + ... + p^{-m})(1 - p^{-2}), whose deviation from 1 is
/// at most 3 p^{-3}. This leaves P(m) = zeta(2) * prod, and the tail beyond
/// the cutoff changes the log by at most 3 / cutoff^2.
inline ProbValue prob_cyclic_balanced(int m, std::uint64_t cutoff = k_default_prime_cutoff) {
    long double log_residual = 0.0L;
    for (std::uint32_t p : detail::primes_up_to(cutoff)) {
        const long double inv = 1.0L / p;
        // S = p^{-2} + ... + p^{-m}
        const long double S = inv * inv * (1.0L - std::pow(inv, static_cast<long double>(m - 1))) / (1.0L - inv);
        log_residual += std::log1p(S) + std::log1p(-inv * inv);
    }
    const auto others = detail::zeta_product(3, m);
    const long double value = std::exp(log_residual) / others.value;
    const auto N = static_cast<long double>(cutoff);
    const long double rel = std::expm1(3.0L / (N * N)) + others.rel_err + 1e-15L;
    return {static_cast<double>(value), static_cast<double>(value * rel + 1e-16L)};
}

/// Probability that Z^m modulo r random vectors is cyclic, for r = m-1
/// (1/Z(m)) and r = m (P(m)/Z(m)).
inline ProbValue prob_cyclic(int m, int r, std::uint64_t cutoff = k_default_prime_cutoff) {
    if (m < 2) throw Error(ErrorCode::invalid_argument, "need m >= 2");
    if (r == m - 1) return detail::reciprocal(detail::zeta_product(2, m));
    if (r == m) return prob_cyclic_balanced(m, cutoff);
    throw Error(ErrorCode::unsupported, "cyclic probability only for r = m-1 or r = m");
}

/// Fraction of singular m x m matrices over F_p:
/// 1 - (1 - 1/p)(1 - 1/p^2)...(1 - 1/p^m), from the exact rational.
inline double P_m_p(std::uint64_t p, int m) {
    if (!detail::is_prime(p)) throw Error(ErrorCode::invalid_prime, std::to_string(p) + " is not prime");
    if (m < 1) throw Error(ErrorCode::invalid_rank, "rank must be at least 1");
    const auto total = static_cast<unsigned>(m * (m + 1) / 2);
    const Integer denominator = boost::multiprecision::pow(Integer(p), total);
    Integer nonsingular = 1;
    for (int i = 1; i <= m; ++i) nonsingular *= boost::multiprecision::pow(Integer(p), static_cast<unsigned>(i)) - 1;
    using big_float = boost::multiprecision::cpp_bin_float_100;
    return static_cast<double>(big_float(denominator - nonsingular) / big_float(denominator));
}

/// Probability that the determinants of k random m x m integer matrices
/// are coprime: prod_p (1 - P_m(p)^k).
///
/// For k >= 2 the product is divided by the Euler product of zeta(k); the
/// remaining factors differ from 1 by at most 2k (p-1)^{-k-1}, so the
/// neglected tail shifts the log by at most 8 / cutoff^k. For k = 1 the
/// infinite product is 0; the truncated value is returned with err_bound
/// equal to itself.
inline ProbValue prob_gcd_dets_one(int m, int k, std::uint64_t cutoff = k_default_prime_cutoff) {
    if (m < 2 || k < 1) throw Error(ErrorCode::invalid_argument, "need m >= 2 and k >= 1");
    if (cutoff < 2 * static_cast<std::uint64_t>(k) + 2)
        throw Error(ErrorCode::invalid_argument, "prime cutoff too small for the tail bound");
    const auto& primes = detail::primes_up_to(cutoff);
    if (k == 1) {
        long double log_value = 0.0L;
        for (std::uint32_t p : primes) log_value += std::log1p(-detail::singular_fraction(p, m));
        const auto v = static_cast<double>(std::exp(log_value));
        return {v, v};
    }
    long double log_residual = 0.0L;
    for (std::uint32_t p : primes) {
        const long double P = detail::singular_fraction(p, m);
        log_residual += std::log1p(-std::pow(P, static_cast<long double>(k))) -
                        std::log1p(-std::pow(1.0L / p, static_cast<long double>(k)));
    }
    const auto zk = detail::zeta_product(k, k);
    const long double value = std::exp(log_residual) / zk.value;
    const long double rel = std::expm1(8.0L / std::pow(static_cast<long double>(cutoff), k)) + zk.rel_err + 1e-15L;
    return {static_cast<double>(value), static_cast<double>(value * rel + 1e-16L)};
}

// ---------------------------------------------------------------------------
// Corank of random matrices over F_p (cross-check oracle, not a headline value)

namespace detail {

inline std::size_t rank_mod_p(std::vector<std::uint64_t> a, std::size_t rows, std::size_t cols, std::uint64_t p) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a[rank * cols + j], a[pivot * cols + j]);
        // inverse by Fermat
        std::uint64_t inv = 1, base = a[rank * cols + c], e = p - 2;
        while (e) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i * cols + c] == 0) continue;
            const std::uint64_t f = a[i * cols + c] * inv % p;
            for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = (a[i * cols + j] + (p - f) * a[rank * cols + j]) % p;
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

/// Corank distribution of a uniform m x r matrix over F_p by enumerating
/// all p^{mr} matrices.
inline std::vector<double> corank_dist_mod_p_enumerate(int m, int r, std::uint64_t p) {
    if (!detail::is_prime(p)) throw Error(ErrorCode::invalid_prime, std::to_string(p) + " is not prime");
    const auto rows = static_cast<std::size_t>(m), cols = static_cast<std::size_t>(r);
    const std::size_t cells = rows * cols;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < cells; ++i) total *= p;
    std::vector<std::uint64_t> counts(rows + 1, 0);
    std::vector<std::uint64_t> a(cells, 0);
    for (std::uint64_t index = 0; index < total; ++index) {
        std::uint64_t rest = index;
        for (std::size_t i = 0; i < cells; ++i) a[i] = rest % p, rest /= p;
        ++counts[rows - detail::rank_mod_p(a, rows, cols, p)];
    }
    std::vector<double> out(rows + 1);
    for (std::size_t i = 0; i <= rows; ++i) out[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return out;
}

/// Same distribution by adding columns one at a time: with current rank k
/// a uniform new column lies in the span with probability p^{k-m}.
inline std::vector<double> corank_dist_mod_p_recursive(int m, int r, std::uint64_t p) {
    if (!detail::is_prime(p)) throw Error(ErrorCode::invalid_prime, std::to_string(p) + " is not prime");
    std::vector<long double> by_rank(static_cast<std::size_t>(m) + 1, 0.0L);
    by_rank[0] = 1.0L;
    for (int c = 0; c < r; ++c) {
        std::vector<long double> next(by_rank.size(), 0.0L);
        for (int k = 0; k <= m; ++k) {
            const long double stay = std::pow(static_cast<long double>(p), static_cast<long double>(k - m));
            next[k] += by_rank[k] * stay;
            if (k < m) next[k + 1] += by_rank[k] * (1.0L - stay);
        }
        by_rank = std::move(next);
    }
    std::vector<double> out(by_rank.size());
    for (int k = 0; k <= m; ++k) out[m - k] = static_cast<double>(by_rank[k]);
    return out;
}

/// Corank distribution (index = corank 0..m), by enumeration when
/// p^{mr} <= 10^7 and by the column recursion otherwise.
inline std::vector<double> corank_dist_mod_p(int m, int r, std::uint64_t p) {
    if (m < 0 || r < 0) throw Error(ErrorCode::invalid_argument, "negative dimensions");
    long double size = std::pow(static_cast<long double>(p), static_cast<long double>(m) * r);
    if (size <= 1e7L) return corank_dist_mod_p_enumerate(m, r, p);
    return corank_dist_mod_p_recursive(m, r, p);
}

// ---------------------------------------------------------------------------
// Presentation helpers

/// floor(x * 10^digits) / 10^digits: truncation, not rounding.
inline double truncate_digits(double x, int digits) {
    const double scale = std::pow(10.0, digits);
    return std::floor(x * scale) / scale;
}

/// ".6079"-style text of the truncated value of x in [0, 1).
inline std::string truncated_string(double x, int digits) {
    const double scale = std::pow(10.0, digits);
    const auto n = static_cast<long long>(std::floor(x * scale));
    std::string body = std::to_string(n);
    if (static_cast<int>(body.size()) < digits) body.insert(0, static_cast<std::size_t>(digits) - body.size(), '0');
    return "." + body;
}

/// True when every value within err_bound truncates to the same digits.
inline bool truncation_is_certain(const ProbValue& v, int digits) {
    return truncate_digits(v.value - v.err_bound, digits) == truncate_digits(v.value + v.err_bound, digits);
}

} // namespace nilrand
