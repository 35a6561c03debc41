#pragma once

// Quotients of the Heisenberg group H(Z) = N_{2,2} by relator sets, and
// abelianization-level data for quotients of free nilpotent groups N_{s,m}.

#include "nilrand/error.hpp"
#include "nilrand/heiscalc.hpp"
#include "nilrand/integer.hpp"
#include "nilrand/intlinalg.hpp"
#include "nilrand/randwalk.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace nilrand {

// ---------------------------------------------------------------------------
// One-relator classification

enum class RelatorKind { central_relator, generic };

inline const char* to_string(RelatorKind kind) noexcept {
    return kind == RelatorKind::central_relator ? "CENTRAL_RELATOR" : "GENERIC";
}

/// Isomorphism data of H(Z)/<<g>> for a single relator g = a^A b^B c^C.
///
/// GENERIC: G = (Z/(d^2/DD) x Z/DD) x| Z with d = gcd(A,B), mu from the
/// basis change and DD = gcd(d, mu).
/// CENTRAL_RELATOR (A = B = 0): G = (Z x Z/k) x| Z with k = |C|; here d = 0,
/// mu = C, DD = k so the torsion pair reads (0, k) with Z/0 = Z.
struct GroupDescriptor {
    RelatorKind kind = RelatorKind::generic;
    Integer d;
    Integer mu;
    Integer DD;
    std::optional<Integer> k;
    std::pair<Integer, Integer> torsion_pair;
    bool is_abelian = false;
    bool is_cyclic_Z = false;
    bool is_bs_type = false;

    /// Same isomorphism class as far as the descriptor records it.
    bool same_class(const GroupDescriptor& other) const {
        if (kind != other.kind) return false;
        return kind == RelatorKind::central_relator ? k == other.k : torsion_pair == other.torsion_pair;
    }
};

inline std::string describe(const GroupDescriptor& g) {
    auto cyclic = [](const Integer& n) { return n == 0 ? std::string("Z") : "Z/" + n.str(); };
    if (g.kind == RelatorKind::central_relator) {
        if (*g.k == 1) return "Z^2";
        return "(Z x " + cyclic(*g.k) + ") x| Z";
    }
    if (g.d == 1) return "Z";
    std::string torsion = cyclic(g.torsion_pair.first);
    if (g.torsion_pair.second != 1) torsion += " x " + cyclic(g.torsion_pair.second);
    return "(" + torsion + ") x| Z";
}

inline GroupDescriptor classify_one_relator(const MalcevTriple& t) {
    if (t.A == 0 && t.B == 0 && t.C == 0)
        throw Error(ErrorCode::degenerate_relator, "the trivial relator leaves H(Z) unchanged");
    GroupDescriptor g;
    if (t.A == 0 && t.B == 0) {
        g.kind = RelatorKind::central_relator;
        g.d = 0;
        g.mu = t.C;
        g.k = abs(t.C);
        g.DD = *g.k;
        g.torsion_pair = {0, *g.k};
        g.is_abelian = *g.k == 1;
        return g;
    }
    auto [d, mu] = basis_change_reduce(t);
    g.kind = RelatorKind::generic;
    g.DD = gcd(d, mu);
    g.torsion_pair = {d * d / g.DD, g.DD};
    g.d = std::move(d);
    g.mu = std::move(mu);
    g.is_abelian = g.d == 1;
    g.is_cyclic_Z = g.d == 1;
    g.is_bs_type = g.DD == 1 && g.d > 1;
    return g;
}

// ---------------------------------------------------------------------------
// Orders of multi-relator quotients

/// Order data of H(Z)/<<R>>: c has order gamma = gcd(d, K) and the
/// abelianization has order Delta, so |G| = Delta * gamma.
/// A gamma of 0 means c has infinite order.
struct QuotientOrder {
    Integer d;     ///< gcd of all a- and b-exponents
    Integer Delta; ///< co-area of the weight lattice; 0 when it has rank < 2
    Integer K;     ///< K-factor: gcd of k * W, 0 when the kernel is trivial
    Integer gamma;
    std::optional<Integer> order; ///< nullopt when infinite
    std::vector<Integer> abelian_invariants; ///< cokernel of the 2 x r weight matrix

    bool is_finite() const noexcept { return order.has_value(); }
};

/// The 2 x r matrix whose columns are the relators' (A, B).
inline IntMatrix heis_weight_matrix(const std::vector<MalcevTriple>& R) {
    IntMatrix M(2, R.size());
    for (std::size_t j = 0; j < R.size(); ++j) {
        M(0, j) = R[j].A;
        M(1, j) = R[j].B;
    }
    return M;
}

inline QuotientOrder heis_quotient_order(const std::vector<MalcevTriple>& R) {
    if (R.empty()) throw Error(ErrorCode::empty_relator_set, "need at least one relator");
    QuotientOrder q;
    const IntMatrix M = heis_weight_matrix(R);
    q.d = span_min_gcd(M);
    q.abelian_invariants = cokernel_invariants(M);
    q.Delta = q.abelian_invariants[0] * q.abelian_invariants[1];

    const IntMatrix W = kernel_matrix(M);
    std::vector<Integer> kW(W.cols());
    for (std::size_t j = 0; j < W.cols(); ++j)
        for (std::size_t a = 0; a < R.size(); ++a) kW[j] += R[a].C * W(a, j);
    q.K = gcd_vec(kW);
    q.gamma = gcd(q.d, q.K);
    if (q.Delta > 0) q.order = q.Delta * q.gamma;
    return q;
}

// ---------------------------------------------------------------------------
// Finite quotients as explicit multiplication tables

/// Multiplication table of a finite quotient H(Z)/<<R>>.
///
/// Elements are the canonical coset representatives (x, y, z) with
/// 0 <= x < h11, 0 <= y < h22, 0 <= z < gamma, where (h11, 0), (h21, h22)
/// is the Hermite basis of the weight lattice. Index of (x, y, z) is
/// (x * h22 + y) * gamma + z; the identity is index 0.
class FiniteGroupTable {
public:
    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<MalcevTriple>& elements() const noexcept { return elements_; }
    const QuotientOrder& meta() const noexcept { return meta_; }
    const std::vector<MalcevTriple>& relators() const noexcept { return relators_; }

    std::uint32_t identity() const noexcept { return 0; }
    std::uint32_t mul(std::uint32_t i, std::uint32_t j) const { return table_[i * size() + j]; }

    /// Canonical representative of the coset of g.
    MalcevTriple reduce(const MalcevTriple& g) const {
        MalcevTriple t = heis_mul(g, heis_pow(lift2_, -floor_div(g.B, h22_)));
        t = heis_mul(t, heis_pow(lift1_, -floor_div(t.A, h11_)));
        t.C = mod_floor(t.C, gamma_);
        return t;
    }

    std::uint32_t index_of(const MalcevTriple& g) const {
        const MalcevTriple t = reduce(g);
        return static_cast<std::uint32_t>(((t.A * h22_ + t.B) * gamma_ + t.C).convert_to<std::uint64_t>());
    }

    std::uint32_t generator_a() const { return index_of({1, 0, 0}); }
    std::uint32_t generator_b() const { return index_of({0, 1, 0}); }

    /// Lattice vectors (h11, 0), (h21, h22) and their c-lifts.
    const MalcevTriple& lift1() const noexcept { return lift1_; }
    const MalcevTriple& lift2() const noexcept { return lift2_; }

private:
    friend FiniteGroupTable build_finite_quotient(const std::vector<MalcevTriple>&, std::size_t);

    std::vector<MalcevTriple> elements_;
    std::vector<std::uint32_t> table_;
    QuotientOrder meta_;
    std::vector<MalcevTriple> relators_;
    Integer h11_, h22_, gamma_;
    MalcevTriple lift1_, lift2_;
};

inline constexpr std::size_t k_default_table_cap = 10000;

/// Builds the multiplication table of a finite H(Z)/<<R>>.
///
/// Each Hermite basis vector v is written as sum(eps_a * w_a) over relator
/// weights; the lift g_1^{eps_1} ... g_r^{eps_r} lies in the normal closure
/// and has weight v. Two such lifts differ by a central element of the
/// normal closure, i.e. by a power of c^gamma, so reduction is well defined.
inline FiniteGroupTable build_finite_quotient(const std::vector<MalcevTriple>& R,
                                              std::size_t cap = k_default_table_cap) {
    QuotientOrder q = heis_quotient_order(R);
    if (!q.order) throw Error(ErrorCode::infinite_group, "quotient has infinite order");
    if (*q.order > cap) throw Error(ErrorCode::cap_exceeded, "order " + q.order->str() + " exceeds cap");

    const HermiteBasis H = hermite_column_basis(heis_weight_matrix(R));
    if (H.basis.cols() != 2 || H.pivot_rows != std::vector<std::size_t>{0, 1})
        throw Error(ErrorCode::internal, "finite quotient without a rank-2 weight lattice");

    FiniteGroupTable T;
    T.meta_ = q;
    T.relators_ = R;
    T.h11_ = H.basis(0, 0);
    T.h22_ = H.basis(1, 1);
    T.gamma_ = q.gamma;
    auto lift = [&](std::size_t k) {
        MalcevTriple g = heis_identity();
        for (std::size_t a = 0; a < R.size(); ++a) g = heis_mul(g, heis_pow(R[a], H.coefficients(a, k)));
        return g;
    };
    T.lift1_ = lift(0);
    T.lift2_ = lift(1);

    const auto h11 = T.h11_.convert_to<std::size_t>();
    const auto h22 = T.h22_.convert_to<std::size_t>();
    const auto gam = T.gamma_.convert_to<std::size_t>();
    T.elements_.reserve(h11 * h22 * gam);
    for (std::size_t x = 0; x < h11; ++x)
        for (std::size_t y = 0; y < h22; ++y)
            for (std::size_t z = 0; z < gam; ++z)
                T.elements_.push_back({Integer(x), Integer(y), Integer(z)});

    // Products of representatives stay below (2 h11, 2 h22), so one step of
    // each reduction suffices and only C mod gamma has to be tracked.
    using wide = __int128;
    const auto h21 = static_cast<wide>(H.basis(0, 1).convert_to<std::int64_t>());
    const wide c1 = mod_floor(T.lift1_.C, T.gamma_).convert_to<std::int64_t>();
    const wide c2 = mod_floor(T.lift2_.C, T.gamma_).convert_to<std::int64_t>();
    const wide H11 = static_cast<wide>(h11), H22 = static_cast<wide>(h22), G = static_cast<wide>(gam);
    auto wrap = [G](wide v) { v %= G; return v < 0 ? v + G : v; };

    const std::size_t n = T.elements_.size();
    T.table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const wide x = static_cast<wide>(i / (h22 * gam)), y = static_cast<wide>((i / gam) % h22),
                   z = static_cast<wide>(i % gam);
        for (std::size_t j = 0; j < n; ++j) {
            const wide x2 = static_cast<wide>(j / (h22 * gam)), y2 = static_cast<wide>((j / gam) % h22),
                       z2 = static_cast<wide>(j % gam);
            wide A = x + x2, B = y + y2, C = z + z2 - x2 * y;
            // times lift2^{-q2} = (-q2 h21, -q2 h22, -q2 c2 - h21 h22 q2 (q2 + 1) / 2)
            const wide q2 = B / H22;
            const wide pA = -q2 * h21;
            C = wrap(C - q2 * c2 - wrap(h21 * H22 * (q2 * (q2 + 1) / 2)) - pA * B);
            A += pA;
            B -= q2 * H22;
            // times lift1^{-q1} = (-q1 h11, 0, -q1 c1)
            wide q1 = A / H11;
            if (A % H11 < 0) --q1;
            C = wrap(C - q1 * c1 + q1 * H11 * B);
            A -= q1 * H11;
            T.table_[i * n + j] = static_cast<std::uint32_t>((A * H22 + B) * G + C);
        }
    }
    return T;
}

/// Outcome of checking a table against the group axioms and its relators.
struct TableCheck {
    bool size_matches = false;  ///< |G| = Delta * gamma
    bool has_identity = false;
    bool has_inverses = false;
    bool associative = false;   ///< exhaustive up to 64 elements, sampled above
    bool kills_relators = false;
    bool generated_by_ab = false;

    bool ok() const noexcept {
        return size_matches && has_identity && has_inverses && associative && kills_relators && generated_by_ab;
    }
};

inline TableCheck verify_table(const FiniteGroupTable& T, std::size_t sampled_triples = 10000,
                               std::uint64_t seed = 0) {
    TableCheck c;
    const auto n = static_cast<std::uint32_t>(T.size());
    c.size_matches = T.meta().order && *T.meta().order == n;

    c.has_identity = true;
    for (std::uint32_t i = 0; i < n && c.has_identity; ++i)
        c.has_identity = T.mul(0, i) == i && T.mul(i, 0) == i;

    c.has_inverses = true;
    for (std::uint32_t i = 0; i < n && c.has_inverses; ++i) {
        bool found = false;
        for (std::uint32_t j = 0; j < n && !found; ++j) found = T.mul(i, j) == 0 && T.mul(j, i) == 0;
        c.has_inverses = found;
    }

    c.associative = true;
    if (n <= 64) {
        for (std::uint32_t i = 0; i < n && c.associative; ++i)
            for (std::uint32_t j = 0; j < n && c.associative; ++j)
                for (std::uint32_t k = 0; k < n; ++k)
                    if (T.mul(T.mul(i, j), k) != T.mul(i, T.mul(j, k))) {
                        c.associative = false;
                        break;
                    }
    } else {
        RngStream rng(seed, 0);
        for (std::size_t s = 0; s < sampled_triples && c.associative; ++s) {
            const auto i = static_cast<std::uint32_t>(rng.uniform(n));
            const auto j = static_cast<std::uint32_t>(rng.uniform(n));
            const auto k = static_cast<std::uint32_t>(rng.uniform(n));
            c.associative = T.mul(T.mul(i, j), k) == T.mul(i, T.mul(j, k));
        }
    }

    c.kills_relators = std::all_of(T.relators().begin(), T.relators().end(),
                                   [&](const MalcevTriple& g) { return T.index_of(g) == 0; });

    std::vector<bool> seen(n, false);
    std::deque<std::uint32_t> frontier{0};
    seen[0] = true;
    const std::uint32_t gens[] = {T.generator_a(), T.generator_b()};
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const std::uint32_t x = frontier.front();
        frontier.pop_front();
        for (std::uint32_t g : gens) {
            const std::uint32_t y = T.mul(x, g);
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                frontier.push_back(y);
            }
        }
    }
    // In a finite group the monoid generated by a, b is the whole subgroup.
    c.generated_by_ab = reached == n;
    return c;
}

/// Order of each element, as a map order -> count.
inline std::map<std::size_t, std::size_t> element_order_census(const FiniteGroupTable& T) {
    std::map<std::size_t, std::size_t> census;
    for (std::uint32_t i = 0; i < T.size(); ++i) {
        std::size_t order = 1;
        for (std::uint32_t p = i; p != T.identity(); p = T.mul(p, i)) ++order;
        ++census[order];
    }
    return census;
}

namespace detail {

inline std::vector<std::pair<std::size_t, int>> factorize(std::size_t n) {
    std::vector<std::pair<std::size_t, int>> out;
    for (std::size_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// Invariant factors (ascending) of a finite abelian group given the order
// of each of its elements.
inline std::vector<std::size_t> abelian_invariants_from_orders(const std::vector<std::size_t>& orders) {
    const std::size_t n = orders.size();
    std::vector<std::size_t> factors;
    std::vector<std::pair<std::size_t, std::vector<int>>> parts;
    for (auto [p, e] : factorize(n)) {
        // log_p #{g : ord(g) | p^k} = sum_i min(k, e_i)
        std::vector<int> logs{0};
        std::size_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            const auto count = static_cast<std::size_t>(
                std::count_if(orders.begin(), orders.end(), [&](std::size_t o) { return pk % o == 0; }));
            int lg = 0;
            for (std::size_t c = count; c > 1; c /= p) ++lg;
            logs.push_back(lg);
        }
        // e_i >= k for (logs[k] - logs[k-1]) indices i.
        std::vector<int> exps;
        for (int k = 1; k <= e; ++k) {
            const int at_least_k = logs[k] - logs[k - 1];
            const int at_least_next = k < e ? logs[k + 1] - logs[k] : 0;
            for (int c = 0; c < at_least_k - at_least_next; ++c) exps.push_back(k);
        }
        std::sort(exps.rbegin(), exps.rend());
        parts.emplace_back(p, std::move(exps));
    }
    std::size_t length = 0;
    for (const auto& part : parts) length = std::max(length, part.second.size());
    factors.assign(length, 1);
    for (const auto& [p, exps] : parts)
        for (std::size_t i = 0; i < exps.size(); ++i)
            for (int k = 0; k < exps[i]; ++k) factors[i] *= p;
    std::reverse(factors.begin(), factors.end());
    return factors;
}

inline bool table_is_abelian(const FiniteGroupTable& T) {
    for (std::uint32_t i = 0; i < T.size(); ++i)
        for (std::uint32_t j = i + 1; j < T.size(); ++j)
            if (T.mul(i, j) != T.mul(j, i)) return false;
    return true;
}

inline std::uint32_t table_inverse(const FiniteGroupTable& T, std::uint32_t i) {
    for (std::uint32_t j = 0; j < T.size(); ++j)
        if (T.mul(i, j) == T.identity()) return j;
    throw Error(ErrorCode::internal, "element without inverse");
}

// Orders of the elements of G/[G,G], one entry per coset.
inline std::vector<std::size_t> abelianization_orders(const FiniteGroupTable& T) {
    const auto n = static_cast<std::uint32_t>(T.size());
    std::vector<std::uint32_t> inv(n);
    for (std::uint32_t i = 0; i < n; ++i) inv[i] = table_inverse(T, i);
    std::vector<bool> in_derived(n, false);
    in_derived[T.identity()] = true;
    std::vector<std::uint32_t> derived{T.identity()};
    for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t y = 0; y < n; ++y) {
            const std::uint32_t c = T.mul(T.mul(x, y), T.mul(inv[x], inv[y]));
            if (!in_derived[c]) {
                in_derived[c] = true;
                derived.push_back(c);
            }
        }
    for (std::size_t i = 0; i < derived.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            for (std::uint32_t p : {T.mul(derived[i], derived[j]), T.mul(derived[j], derived[i])})
                if (!in_derived[p]) {
                    in_derived[p] = true;
                    derived.push_back(p);
                }
    std::vector<std::size_t> coset_of(n, SIZE_MAX);
    std::vector<std::size_t> orders;
    for (std::uint32_t g = 0; g < n; ++g) {
        if (coset_of[g] != SIZE_MAX) continue;
        const std::size_t id = orders.size();
        for (std::uint32_t h : derived) coset_of[T.mul(g, h)] = id;
        std::size_t order = 1;
        for (std::uint32_t p = g; !in_derived[p]; p = T.mul(p, g)) ++order;
        orders.push_back(order);
    }
    return orders;
}

inline std::string join_factors(const std::vector<std::size_t>& factors) {
    if (factors.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "xZ" : "Z") + std::to_string(factors[i]);
    return out;
}

} // namespace detail

/// Name of a small group: "Q8"/"D4" for the nonabelian groups of order 8,
/// "Z2xZ4"-style invariant factors for abelian groups, otherwise a
/// signature "order=..;ab=..;census=.." built from the order, the
/// abelianization and the element-order census.
inline std::string identify_small_group(const FiniteGroupTable& T) {
    const auto census = element_order_census(T);
    const bool abelian = detail::table_is_abelian(T);
    if (abelian) {
        std::vector<std::size_t> orders;
        for (std::uint32_t i = 0; i < T.size(); ++i) {
            std::size_t order = 1;
            for (std::uint32_t p = i; p != T.identity(); p = T.mul(p, i)) ++order;
            orders.push_back(order);
        }
        return detail::join_factors(detail::abelian_invariants_from_orders(orders));
    }
    const std::size_t involutions = census.count(2) ? census.at(2) : 0;
    if (T.size() == 8 && involutions == 1) return "Q8";
    if (T.size() == 8 && involutions == 5) return "D4";
    std::ostringstream sig;
    sig << "order=" << T.size()
        << ";ab=" << detail::join_factors(detail::abelian_invariants_from_orders(detail::abelianization_orders(T)))
        << ";census=";
    bool first = true;
    for (auto [order, count] : census) {
        sig << (first ? "" : ",") << order << ':' << count;
        first = false;
    }
    return sig.str();
}

// ---------------------------------------------------------------------------
// General nilpotent quotients through the abelianization

/// Rank and finiteness of N_{s,m}/<<R>>, valid for every step s: a set
/// generates a nilpotent group iff its image generates the abelianization,
/// and the group is finite iff its abelianization is.
struct NilpotentProfile {
    std::vector<Integer> invariants; ///< cokernel of the m x |R| weight matrix
    std::size_t rank = 0;
    std::size_t dim = 0;
    bool is_trivial = false;
    bool is_finite = false;
    bool is_cyclic = false;
};

inline IntMatrix weight_matrix(int m, const std::vector<Word>& R) {
    IntMatrix M(static_cast<std::size_t>(m), R.size());
    for (std::size_t j = 0; j < R.size(); ++j) {
        if (R[j].m != m) throw Error(ErrorCode::wrong_rank, "relator rank differs from ambient rank");
        const WeightVector w = weight_vector(R[j]);
        for (std::size_t i = 0; i < w.size(); ++i) M(i, j) = w.entries[i];
    }
    return M;
}

inline NilpotentProfile nilpotent_quotient_profile(int m, const std::vector<Word>& R) {
    if (m < 1) throw Error(ErrorCode::invalid_rank, "rank must be at least 1");
    NilpotentProfile p;
    p.invariants = cokernel_invariants(weight_matrix(m, R));
    const RankDim rd = rank_and_dim(p.invariants);
    p.rank = rd.rank;
    p.dim = rd.dim;
    p.is_trivial = p.rank == 0;
    p.is_finite = p.dim == 0;
    p.is_cyclic = p.rank <= 1;
    return p;
}

/// Lower central series data for G = H(Z)/<<R>> and the corresponding
/// one-step-deeper statements about Gamma = F_2/<<R>>.
struct LcsReport {
    int step = 0;                      ///< nilpotency class of G
    bool gamma_perfect = false;        ///< G trivial: Gamma = [Gamma, Gamma]
    bool gamma_stabilizes = false;     ///< step 1: Gamma_2 = Gamma_3 = ...
    bool quotients_agree_to_2 = false; ///< step 2: Gamma_i/Gamma_{i+1} = G_i/G_{i+1}, i <= 2
    std::string summary;
};

inline LcsReport lcs_report(int m, int s, const std::vector<MalcevTriple>& R) {
    if (m != 2 || s != 2) throw Error(ErrorCode::unsupported, "LCS report is exact only for s = 2, m = 2");
    LcsReport out;
    if (R.empty()) {
        out.step = 2;
    } else {
        const QuotientOrder q = heis_quotient_order(R);
        const bool trivial = q.order && *q.order == 1;
        out.step = trivial ? 0 : (q.gamma == 1 ? 1 : 2);
    }
    switch (out.step) {
    case 0:
        out.gamma_perfect = true;
        out.summary = "G trivial; Gamma is perfect (Gamma = Gamma_2)";
        break;
    case 1:
        out.gamma_stabilizes = true;
        out.summary = "G abelian nontrivial; Gamma_2 = Gamma_3 = ...";
        break;
    default:
        out.quotients_agree_to_2 = true;
        out.summary = "G has step 2; Gamma_i/Gamma_{i+1} = G_i/G_{i+1} for i <= 2";
        break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mal'cev basis sizes

inline int moebius(std::uint64_t n) {
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

/// Number of basic commutators of weight j on m generators:
/// (1/j) sum_{e | j} moebius(e) m^{j/e}.
inline Integer necklace(std::uint64_t j, std::uint64_t m) {
    if (j < 1 || m < 1) throw Error(ErrorCode::invalid_argument, "necklace needs j, m >= 1");
    Integer sum = 0;
    for (std::uint64_t e = 1; e <= j; ++e) {
        if (j % e) continue;
        const int mu = moebius(e);
        if (mu == 0) continue;
        Integer power = boost::multiprecision::pow(Integer(m), static_cast<unsigned>(j / e));
        sum += mu > 0 ? power : Integer(-power);
    }
    return sum / j;
}

/// Hirsch length of N_{s,m}.
inline Integer hirsch_length(std::uint64_t s, std::uint64_t m) {
    if (s < 1 || m < 1) throw Error(ErrorCode::invalid_argument, "Hirsch length needs s, m >= 1");
    Integer total = 0;
    for (std::uint64_t j = 1; j <= s; ++j) total += necklace(j, m);
    return total;
}

} // namespace nilrand
