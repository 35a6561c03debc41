#pragma once

// Random relators: uniform freely reduced words (non-backtracking walk on
// the free group) and uniform unreduced strings (simple walk), drawn from
// deterministic per-trial streams.

#include "nilrand/error.hpp"

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

namespace nilrand {

/// A word over a_1..a_m and their inverses. Letter +i is a_i, -i is a_i^{-1}.
struct Word {
    int m = 1;
    std::vector<int> letters;

    std::size_t size() const noexcept { return letters.size(); }
    bool empty() const noexcept { return letters.empty(); }

    friend bool operator==(const Word&, const Word&) = default;
};

/// True iff every letter is in range and no adjacent pair cancels.
inline bool is_freely_reduced(const Word& w) {
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        const int x = w.letters[i];
        if (x == 0 || std::abs(x) > w.m) return false;
        if (i > 0 && w.letters[i - 1] == -x) return false;
    }
    return true;
}

/// Concatenation without free reduction.
inline Word concat(const Word& u, const Word& v) {
    if (u.m != v.m) throw Error(ErrorCode::wrong_rank, "concatenating words of different rank");
    Word out{u.m, u.letters};
    out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
    return out;
}

/// Letters as text: a..z for the first 26 generators, capitals for inverses,
/// e.g. "baBA". Higher generators are written as x<i> / X<i>.
inline std::string to_string(const Word& w) {
    std::string out;
    for (int x : w.letters) {
        const int i = std::abs(x);
        if (i <= 26) {
            out.push_back(static_cast<char>((x > 0 ? 'a' : 'A') + i - 1));
        } else {
            out += (x > 0 ? "x" : "X") + std::to_string(i);
        }
    }
    return out;
}

/// Parses the notation of to_string for generators a..z (capital = inverse).
inline Word parse_word(const std::string& text, int m) {
    Word w{m, {}};
    for (char ch : text) {
        int x = 0;
        if (ch >= 'a' && ch <= 'z') x = ch - 'a' + 1;
        else if (ch >= 'A' && ch <= 'Z') x = -(ch - 'A' + 1);
        else throw Error(ErrorCode::invalid_argument, std::string("bad letter '") + ch + "'");
        if (std::abs(x) > m) throw Error(ErrorCode::wrong_rank, "letter outside rank");
        w.letters.push_back(x);
    }
    return w;
}

/// Deterministic random stream identified by (seed, stream_id).
///
/// The engine state depends only on the pair, so trial t can be replayed in
/// isolation and workers need no shared generator. Bounded draws use
/// rejection on top of the raw 64-bit output instead of
/// std::uniform_int_distribution, whose algorithm differs between standard
/// libraries.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound); bound > 0.
    std::uint64_t uniform(std::uint64_t bound) {
        // Lemire's multiply-shift with exact rejection.
        unsigned __int128 product = static_cast<unsigned __int128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                product = static_cast<unsigned __int128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream_id),
                          static_cast<std::uint32_t>(stream_id >> 32), 0x6e696c72u};
        return std::mt19937_64(seq);
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

namespace detail {

// Codes 0..2m-1: code c < m is a_{c+1}, code c >= m is a_{c-m+1}^{-1}.
inline int letter_from_code(std::uint64_t code, int m) {
    const int c = static_cast<int>(code);
    return c < m ? c + 1 : -(c - m + 1);
}

inline std::uint64_t code_from_letter(int x, int m) {
    return x > 0 ? static_cast<std::uint64_t>(x - 1) : static_cast<std::uint64_t>(m - x - 1);
}

inline void require_rank(int m) {
    if (m < 1) throw Error(ErrorCode::invalid_rank, "rank must be at least 1");
}

} // namespace detail

/// Uniform freely reduced word of exactly `len` letters.
inline Word random_reduced_word(int m, std::size_t len, RngStream& rng) {
    detail::require_rank(m);
    Word w{m, {}};
    w.letters.reserve(len);
    if (len == 0) return w;
    const auto alphabet = static_cast<std::uint64_t>(2 * m);
    w.letters.push_back(detail::letter_from_code(rng.uniform(alphabet), m));
    for (std::size_t i = 1; i < len; ++i) {
        const std::uint64_t banned = detail::code_from_letter(-w.letters.back(), m);
        std::uint64_t code = rng.uniform(alphabet - 1);
        if (code >= banned) ++code;
        w.letters.push_back(detail::letter_from_code(code, m));
    }
    return w;
}

/// Relator of length `len` or `len - 1`, each with probability 1/2.
inline Word random_relator(int m, std::size_t len, RngStream& rng) {
    detail::require_rank(m);
    if (len == 0) throw Error(ErrorCode::invalid_length, "relator length must be at least 1");
    const std::size_t actual = rng.uniform(2) == 0 ? len : len - 1;
    return random_reduced_word(m, actual, rng);
}

/// `len` i.i.d. uniform letters; cancelling pairs are kept.
inline std::vector<int> random_string(int m, std::size_t len, RngStream& rng) {
    detail::require_rank(m);
    std::vector<int> out;
    out.reserve(len);
    const auto alphabet = static_cast<std::uint64_t>(2 * m);
    for (std::size_t i = 0; i < len; ++i) out.push_back(detail::letter_from_code(rng.uniform(alphabet), m));
    return out;
}

} // namespace nilrand
