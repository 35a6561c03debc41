#pragma once

// Property suites shared by the unit tests (small scale) and the
// acceptance runner (full scale). Each returns ok plus a short detail line.

#include "nilrand/nilrand.hpp"
#include "oracles.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace props {

using namespace nilrand;

struct Outcome {
    bool ok = true;
    std::string detail;
};

inline Outcome fail(const std::string& why) { return {false, why}; }

inline std::vector<MalcevTriple> random_heis_relators(RngStream& rng, int r, std::size_t len) {
    std::vector<MalcevTriple> R;
    for (int i = 0; i < r; ++i) R.push_back(malcev_coords(random_relator(2, len, rng)));
    return R;
}

inline bool same_order_data(const QuotientOrder& a, const QuotientOrder& b) {
    return a.Delta == b.Delta && a.gamma == b.gamma && a.order == b.order;
}

/// Nielsen moves preserve the normal closure, hence (Delta, gamma, |G|).
inline Outcome nielsen_invariance(std::size_t sets, int moves, std::uint64_t seed) {
    for (std::size_t t = 0; t < sets; ++t) {
        RngStream rng(seed, t);
        const int r = 2 + static_cast<int>(rng.uniform(4));
        const std::size_t len = 10 + rng.uniform(41);
        std::vector<MalcevTriple> R = random_heis_relators(rng, r, len);
        const QuotientOrder base = heis_quotient_order(R);
        for (int k = 0; k < moves; ++k) {
            const auto i = static_cast<std::size_t>(rng.uniform(static_cast<std::uint64_t>(r)));
            auto j = static_cast<std::size_t>(rng.uniform(static_cast<std::uint64_t>(r - 1)));
            if (j >= i) ++j;
            switch (rng.uniform(3)) {
            case 0: std::swap(R[i], R[j]); break;
            case 1: R[i] = heis_inv(R[i]); break;
            default: {
                const MalcevTriple h = malcev_coords(random_reduced_word(2, rng.uniform(8), rng));
                const MalcevTriple conj = heis_conj(rng.uniform(2) ? R[j] : heis_inv(R[j]), h);
                R[i] = rng.uniform(2) ? heis_mul(R[i], conj) : heis_mul(conj, R[i]);
            }
            }
            const QuotientOrder now = heis_quotient_order(R);
            if (!same_order_data(base, now)) {
                std::ostringstream os;
                os << "set " << t << " move " << k << ": (Delta, gamma) changed from (" << base.Delta << ", "
                   << base.gamma << ") to (" << now.Delta << ", " << now.gamma << ")";
                return fail(os.str());
            }
        }
    }
    return {true, std::to_string(sets) + " sets x " + std::to_string(moves) + " moves"};
}

/// The one-relator center order from the descriptor agrees with gamma.
inline Outcome gamma_consistency(std::size_t count, std::uint64_t seed) {
    std::size_t central = 0, skipped = 0;
    for (std::size_t t = 0; t < count; ++t) {
        RngStream rng(seed, t);
        MalcevTriple g;
        // Mix long random relators with small explicit triples so the
        // central and d > 1 branches are exercised often.
        if (t % 2 == 0) {
            g = malcev_coords(random_relator(2, 1 + rng.uniform(1000), rng));
        } else {
            auto draw = [&](std::uint64_t b) { return Integer(static_cast<std::int64_t>(rng.uniform(2 * b + 1)) - static_cast<std::int64_t>(b)); };
            const Integer s = 1 + rng.uniform(6);
            g = {s * draw(6), s * draw(6), draw(50)};
            if (rng.uniform(10) == 0) g.A = g.B = 0;
        }
        if (g == heis_identity()) {
            ++skipped;
            continue;
        }
        const GroupDescriptor desc = classify_one_relator(g);
        const QuotientOrder q = heis_quotient_order({g});
        const Integer expected = desc.kind == RelatorKind::central_relator ? *desc.k : desc.d;
        if (desc.kind == RelatorKind::central_relator) ++central;
        if (q.gamma != expected) {
            std::ostringstream os;
            os << "relator " << g << ": gamma " << q.gamma << " vs descriptor " << expected;
            return fail(os.str());
        }
        // Invariance of the descriptor under the basis change.
        if (desc.kind == RelatorKind::generic) {
            const GroupDescriptor reduced = classify_one_relator({0, desc.d, desc.mu});
            if (!desc.same_class(reduced)) {
                std::ostringstream os;
                os << "relator " << g << " and its reduced form classify differently";
                return fail(os.str());
            }
        }
    }
    return {true, std::to_string(count - skipped) + " relators (" + std::to_string(central) + " central)"};
}

/// A relator set from the normal closure built from conjugates of R.
inline MalcevTriple random_closure_element(RngStream& rng, const std::vector<MalcevTriple>& R) {
    MalcevTriple g = heis_identity();
    const int pieces = 1 + static_cast<int>(rng.uniform(4));
    for (int k = 0; k < pieces; ++k) {
        const MalcevTriple& r = R[rng.uniform(R.size())];
        const MalcevTriple h = malcev_coords(random_reduced_word(2, rng.uniform(12), rng));
        g = heis_mul(g, heis_conj(rng.uniform(2) ? r : heis_inv(r), h));
    }
    return g;
}

struct FiniteQuotientStats {
    std::size_t built = 0;
    std::size_t oracle_checked = 0;
    std::size_t largest = 0;
};

/// Draws short random relator sets until `count` finite quotients of order
/// <= max_order have been built, and checks each table.
inline Outcome finite_quotient_checks(std::size_t count, std::size_t max_order, std::uint64_t seed,
                                      FiniteQuotientStats* stats = nullptr) {
    FiniteQuotientStats s;
    for (std::uint64_t t = 0; s.built < count; ++t) {
        if (t > 1000 * count) return fail("could not find enough finite quotients");
        RngStream rng(seed, t);
        const int r = 2 + static_cast<int>(rng.uniform(3));
        const std::size_t span = t % 2 ? 9 : 80;
        const std::vector<MalcevTriple> R = random_heis_relators(rng, r, 4 + rng.uniform(span));
        const QuotientOrder q = heis_quotient_order(R);
        if (!q.order || *q.order > max_order) continue;
        const FiniteGroupTable T = build_finite_quotient(R);
        ++s.built;
        s.largest = std::max(s.largest, T.size());
        std::ostringstream who;
        who << "trial " << t << " order " << *q.order;
        if (T.size() != *q.order) return fail(who.str() + ": table size " + std::to_string(T.size()));
        const TableCheck c = verify_table(T, 10000, t);
        if (!c.ok()) return fail(who.str() + ": group axioms failed");
        // Table entries agree with exact multiplication of representatives.
        for (int k = 0; k < 200; ++k) {
            const auto i = static_cast<std::uint32_t>(rng.uniform(T.size()));
            const auto j = static_cast<std::uint32_t>(rng.uniform(T.size()));
            if (T.mul(i, j) != T.index_of(heis_mul(T.elements()[i], T.elements()[j])))
                return fail(who.str() + ": table disagrees with exact product");
        }
        // Canonical reduction is constant on cosets of the normal closure.
        for (int k = 0; k < 5; ++k) {
            const auto i = static_cast<std::uint32_t>(rng.uniform(T.size()));
            const MalcevTriple n = random_closure_element(rng, R);
            if (T.index_of(heis_mul(T.elements()[i], n)) != i || T.index_of(heis_mul(n, T.elements()[i])) != i)
                return fail(who.str() + ": reduction not constant on a coset");
        }
        // Independent order by enumeration inside H(Z/n).
        if (*q.order <= 200) {
            const auto n = q.order->convert_to<std::int64_t>();
            if (oracle::quotient_order_mod(R, n) != n) return fail(who.str() + ": enumeration oracle disagrees");
            ++s.oracle_checked;
        }
        // d^3 divides |G| for nonabelian finite quotients.
        if (q.gamma != 1 && *q.order % (q.d * q.d * q.d) != 0) return fail(who.str() + ": d^3 does not divide |G|");
    }
    if (stats) *stats = s;
    return {true, std::to_string(s.built) + " tables, " + std::to_string(s.oracle_checked) +
                      " enumeration-checked, largest " + std::to_string(s.largest)};
}

/// Span-min-gcd equals brute force on every 2 x cols matrix with entries in
/// [-bound, bound], using combinations with |coef| <= coef_bound.
inline Outcome span_min_gcd_exhaustive(std::size_t cols, int bound, int coef_bound) {
    const int base = 2 * bound + 1;
    std::size_t total = 1;
    for (std::size_t k = 0; k < 2 * cols; ++k) total *= static_cast<std::size_t>(base);
    IntMatrix M(2, cols);
    oracle::Grid grid(2, std::vector<Integer>(cols));
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t k = 0; k < 2 * cols; ++k, c /= static_cast<std::size_t>(base)) {
            const Integer v = static_cast<int>(c % static_cast<std::size_t>(base)) - bound;
            M(k / cols, k % cols) = v;
            grid[k / cols][k % cols] = v;
        }
        const Integer expected = span_min_gcd(M);
        if (oracle::brute_span_min_gcd(grid, coef_bound, expected) != expected) {
            std::ostringstream os;
            os << "matrix " << M << ": span_min_gcd " << expected;
            return fail(os.str());
        }
    }
    return {true, std::to_string(total) + " matrices"};
}

/// SNF invariants against the minor-gcd oracle for every shape up to 4 x 4.
inline Outcome snf_minor_oracle(int per_shape, std::uint64_t seed) {
    std::size_t checked = 0;
    for (std::size_t rows = 1; rows <= 4; ++rows)
        for (std::size_t cols = 1; cols <= 4; ++cols) {
            RngStream rng(seed, rows * 16 + cols);
            for (int t = 0; t < per_shape; ++t) {
                IntMatrix M(rows, cols);
                for (std::size_t i = 0; i < rows; ++i)
                    for (std::size_t j = 0; j < cols; ++j) M(i, j) = static_cast<int>(rng.uniform(11)) - 5;
                if (t % 4 == 1 && rows > 1)
                    for (std::size_t j = 0; j < cols; ++j) M(rows - 1, j) = 2 * M(0, j);
                if (t % 4 == 2)
                    for (std::size_t i = 0; i < rows; ++i) M(i, 0) *= 6;
                const SmithForm S = snf(M);
                const auto grid = oracle::to_grid(M);
                Integer prod = 1;
                for (std::size_t k = 1; k <= S.invariants.size(); ++k) {
                    prod *= S.invariants[k - 1];
                    if (prod != oracle::minor_gcd(grid, k)) {
                        std::ostringstream os;
                        os << "matrix " << M << " fails at k=" << k;
                        return fail(os.str());
                    }
                }
                ++checked;
            }
        }
    return {true, std::to_string(checked) + " matrices"};
}

/// Every matrix of every shape up to rows x cols with entries in [lo, hi].
inline Outcome snf_minor_exhaustive(std::size_t max_rows, std::size_t max_cols, int lo, int hi,
                                    std::size_t max_cells) {
    const auto base = static_cast<std::size_t>(hi - lo + 1);
    std::size_t checked = 0;
    for (std::size_t rows = 1; rows <= max_rows; ++rows)
        for (std::size_t cols = 1; cols <= max_cols; ++cols) {
            if (rows * cols > max_cells) continue;
            std::size_t total = 1;
            for (std::size_t c = 0; c < rows * cols; ++c) total *= base;
            for (std::size_t code = 0; code < total; ++code) {
                IntMatrix M(rows, cols);
                std::size_t x = code;
                for (std::size_t i = 0; i < rows; ++i)
                    for (std::size_t j = 0; j < cols; ++j, x /= base) M(i, j) = lo + static_cast<int>(x % base);
                const SmithForm S = snf(M);
                const auto grid = oracle::to_grid(M);
                Integer prod = 1;
                for (std::size_t k = 1; k <= S.invariants.size(); ++k) {
                    prod *= S.invariants[k - 1];
                    if (prod != oracle::minor_gcd(grid, k)) {
                        std::ostringstream os;
                        os << "matrix " << M << " fails at k=" << k;
                        return fail(os.str());
                    }
                }
                ++checked;
            }
        }
    return {true, std::to_string(checked) + " matrices"};
}

/// Exact coordinate distributions: total mass, symmetry and strict
/// monotonicity for every length up to max_len.
inline Outcome monotonicity_suite(const std::vector<int>& ranks, std::size_t max_len) {
    for (int m : ranks) {
        CoordDist d = exact_coord_dist(m, 0);
        for (std::size_t len = 0; len <= max_len; ++len) {
            if (len > 0) d = next_coord_dist(d);
            Integer total = 0;
            for (const Integer& c : d.counts) total += c;
            const auto L = static_cast<std::int64_t>(len);
            bool symmetric = true;
            for (std::int64_t x = 1; x <= L && symmetric; ++x) symmetric = d.count(x) == d.count(-x);
            if (total != d.denominator || !symmetric || !check_monotonicity(d))
                return fail("m=" + std::to_string(m) + " len=" + std::to_string(len));
        }
    }
    return {true, std::to_string(ranks.size()) + " ranks, lengths 0.." + std::to_string(max_len)};
}

} // namespace props
