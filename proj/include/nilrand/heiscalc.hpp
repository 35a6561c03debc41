#pragma once

// Exact arithmetic in the integer Heisenberg group H(Z) = N_{2,2}.
//
// Conventions: generators a, b and central c = [a,b] = a b a^{-1} b^{-1};
// every element has a unique normal form a^A b^B c^C. With these choices
// b a = a b c^{-1}, so
//
//     (A,B,C) * (A',B',C') = (A+A', B+B', C+C' - A'B).
//
// All coordinates are arbitrary precision.

#include "nilrand/error.hpp"
#include "nilrand/integer.hpp"
#include "nilrand/randwalk.hpp"

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <vector>

namespace nilrand {

struct MalcevTriple {
    Integer A;
    Integer B;
    Integer C;

    friend bool operator==(const MalcevTriple&, const MalcevTriple&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const MalcevTriple& t) {
    return os << '(' << t.A << ',' << t.B << ',' << t.C << ')';
}

/// Exponent sums of a word, one entry per generator.
struct WeightVector {
    std::vector<Integer> entries;

    std::size_t size() const noexcept { return entries.size(); }
    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

inline MalcevTriple heis_mul(const MalcevTriple& g, const MalcevTriple& h) {
    return {g.A + h.A, g.B + h.B, g.C + h.C - h.A * g.B};
}

inline MalcevTriple heis_inv(const MalcevTriple& g) { return {-g.A, -g.B, -g.C - g.A * g.B}; }

/// h g h^{-1}
inline MalcevTriple heis_conj(const MalcevTriple& g, const MalcevTriple& h) {
    return {g.A, g.B, g.C + h.A * g.B - h.B * g.A};
}

/// g^n for any integer n: (nA, nB, nC - AB n(n-1)/2).
inline MalcevTriple heis_pow(const MalcevTriple& g, const Integer& n) {
    const Integer binom = n * (n - 1) / 2;
    return {n * g.A, n * g.B, n * g.C - g.A * g.B * binom};
}

inline MalcevTriple heis_identity() { return {0, 0, 0}; }

namespace detail {

inline void require_heisenberg_word(const Word& w) {
    if (w.m != 2) throw Error(ErrorCode::wrong_rank, "Heisenberg coordinates need a rank-2 word");
}

// |A|, |B| <= n and |C| <= n^2, so int64 cannot overflow below this length.
inline constexpr std::size_t k_int64_safe_length = std::size_t{1} << 30;

} // namespace detail

/// Normal form of the element spelled by `w`: left fold of heis_mul over
/// the letters a -> (1,0,0), b -> (0,1,0).
inline MalcevTriple malcev_coords(const Word& w) {
    detail::require_heisenberg_word(w);
    if (w.size() < detail::k_int64_safe_length) {
        std::int64_t A = 0, B = 0, C = 0;
        for (int x : w.letters) {
            switch (x) {
            case 1: ++A; C -= B; break;
            case -1: --A; C += B; break;
            case 2: ++B; break;
            default: --B; break;
            }
        }
        return {A, B, C};
    }
    MalcevTriple acc = heis_identity();
    for (int x : w.letters) {
        const MalcevTriple letter = std::abs(x) == 1 ? MalcevTriple{x > 0 ? 1 : -1, 0, 0}
                                                     : MalcevTriple{0, x > 0 ? 1 : -1, 0};
        acc = heis_mul(acc, letter);
    }
    return acc;
}

/// Signed area of the lattice path of `w` (a = +x, b = +y), closed against
/// the x-axis and the vertical through the endpoint. Accumulated from the
/// vertical steps as sum(x dy) - X*Y, independently of heis_mul; it always
/// equals malcev_coords(w).C.
inline Integer signed_area(const Word& w) {
    detail::require_heisenberg_word(w);
    if (w.size() < detail::k_int64_safe_length) {
        std::int64_t x = 0, y = 0, sum = 0;
        for (int letter : w.letters) {
            switch (letter) {
            case 1: ++x; break;
            case -1: --x; break;
            case 2: sum += x; ++y; break;
            default: sum -= x; --y; break;
            }
        }
        return Integer(sum) - Integer(x) * y;
    }
    Integer x = 0, y = 0, sum = 0;
    for (int letter : w.letters) {
        switch (letter) {
        case 1: ++x; break;
        case -1: --x; break;
        case 2: sum += x; ++y; break;
        default: sum -= x; --y; break;
        }
    }
    return sum - x * y;
}

inline WeightVector weight_vector(const Word& w) {
    std::vector<std::int64_t> sums(static_cast<std::size_t>(w.m), 0);
    for (int x : w.letters) {
        if (x == 0 || std::abs(x) > w.m) throw Error(ErrorCode::wrong_rank, "letter outside rank");
        sums[static_cast<std::size_t>(std::abs(x) - 1)] += x > 0 ? 1 : -1;
    }
    return {to_integers(sums)};
}

/// Effect of the basis-changing automorphism that sends a^A b^B c^C to
/// b^d c^mu.
struct BasisChange {
    Integer d;  ///< gcd(A, B) > 0
    Integer mu; ///< (AB / 2d)(d - 1) + C
};

inline BasisChange basis_change_reduce(const MalcevTriple& t) {
    if (t.A == 0 && t.B == 0)
        throw Error(ErrorCode::central_element, "relator lies in the center; no basis change applies");
    const Integer d = gcd(t.A, t.B);
    // AB/d^2 is an integer and d(d-1)/2 is an integer.
    const Integer scaled = (t.A / d) * (t.B / d);
    return {d, scaled * (d * (d - 1) / 2) + t.C};
}

} // namespace nilrand
