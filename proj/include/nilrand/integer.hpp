#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nilrand {

/// Arbitrary-precision signed integer used for every exact computation.
using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

/// Non-negative gcd; gcd(0, 0) = 0 and gcd(d, 0) = |d|.
inline Integer gcd(const Integer& a, const Integer& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    return boost::multiprecision::gcd(abs(a), abs(b));
}

/// Floor division (rounds toward negative infinity); b must be nonzero.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

/// Non-negative residue of a modulo |b|.
inline Integer mod_floor(const Integer& a, const Integer& b) {
    Integer r = a % b;
    if (r < 0) r += abs(b);
    return r;
}

inline std::string to_string(const Integer& x) { return x.str(); }

inline std::vector<Integer> to_integers(std::span<const std::int64_t> values) {
    return {values.begin(), values.end()};
}

} // namespace nilrand
