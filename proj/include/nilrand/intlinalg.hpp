#pragma once

// Exact integer linear algebra: gcds, Smith and Hermite forms with
// unimodular transforms, integer kernels, cokernel invariants, determinants.
//
// Invariant factors are always listed in ascending divisibility order
// d_1 | d_2 | ... with zeros (free summands) last.

#include "nilrand/error.hpp"
#include "nilrand/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace nilrand {

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<Integer>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw Error(ErrorCode::shape, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
        return I;
    }

    /// Matrix whose j-th column is columns[j]; every column has `rows` entries.
    static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<Integer>>& columns) {
        IntMatrix M(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw Error(ErrorCode::shape, "column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) M(i, j) = columns[j][i];
        }
        return M;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Integer> entries() const noexcept { return data_; }

    std::vector<Integer> column(std::size_t j) const {
        std::vector<Integer> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    IntMatrix transpose() const {
        IntMatrix T(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
        return T;
    }

    friend IntMatrix operator*(const IntMatrix& X, const IntMatrix& Y) {
        if (X.cols_ != Y.rows_) throw Error(ErrorCode::shape, "matrix product shape mismatch");
        IntMatrix P(X.rows_, Y.cols_);
        for (std::size_t i = 0; i < X.rows_; ++i)
            for (std::size_t k = 0; k < X.cols_; ++k) {
                const Integer& x = X(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < Y.cols_; ++j) P(i, j) += x * Y(k, j);
            }
        return P;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    // Elementary operations, used by the normal-form routines.
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& factor) {
        if (factor == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
    }
    /// col[dst] += factor * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& factor) {
        if (factor == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }
    void negate_col(std::size_t c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& M) {
    os << '[';
    for (std::size_t i = 0; i < M.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < M.cols(); ++j) os << (j ? "," : "") << M(i, j);
        os << ']';
    }
    return os << ']';
}

/// gcd of all entries; 0 for an empty or zero vector.
inline Integer gcd_vec(std::span<const Integer> v) {
    Integer g = 0;
    for (const Integer& x : v) {
        g = gcd(g, x);
        if (g == 1) break;
    }
    return g;
}

inline bool is_primitive(std::span<const Integer> v) { return gcd_vec(v) == 1; }

/// Smallest gcd over nonzero vectors in the column span, which equals the
/// gcd of all entries of M.
inline Integer span_min_gcd(const IntMatrix& M) { return gcd_vec(M.entries()); }

struct SmithForm {
    std::vector<Integer> invariants; ///< length min(rows, cols), ascending, zeros last
    IntMatrix U;                     ///< rows x rows, unimodular
    IntMatrix V;                     ///< cols x cols, unimodular; U * M * V = diag(invariants)

    std::size_t rank() const {
        return static_cast<std::size_t>(std::count_if(invariants.begin(), invariants.end(),
                                                      [](const Integer& d) { return d != 0; }));
    }
};

namespace detail {

// Position of the nonzero entry of smallest magnitude in D[t.., t..].
inline std::optional<std::pair<std::size_t, std::size_t>> smallest_pivot(const IntMatrix& D, std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < D.rows(); ++i)
        for (std::size_t j = t; j < D.cols(); ++j) {
            if (D(i, j) == 0) continue;
            Integer a = abs(D(i, j));
            if (!best || a < best_abs) {
                best = {i, j};
                best_abs = std::move(a);
                if (best_abs == 1) return best;
            }
        }
    return best;
}

} // namespace detail

/// Smith normal form with transforms, by smallest-magnitude pivoting.
inline SmithForm snf(const IntMatrix& M) {
    IntMatrix D = M;
    IntMatrix U = IntMatrix::identity(M.rows());
    IntMatrix V = IntMatrix::identity(M.cols());
    const std::size_t n = std::min(M.rows(), M.cols());

    for (std::size_t t = 0; t < n; ++t) {
        auto pivot = detail::smallest_pivot(D, t);
        if (!pivot) break;
        D.swap_rows(t, pivot->first);
        U.swap_rows(t, pivot->first);
        D.swap_cols(t, pivot->second);
        V.swap_cols(t, pivot->second);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < D.rows(); ++i) {
                if (D(i, t) == 0) continue;
                const Integer q = D(i, t) / D(t, t);
                D.add_row(i, t, -q);
                U.add_row(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < D.cols(); ++j) {
                if (D(t, j) == 0) continue;
                const Integer q = D(t, j) / D(t, t);
                D.add_col(j, t, -q);
                V.add_col(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot survived; promote it.
                std::size_t bi = t, bj = t;
                Integer best = abs(D(t, t));
                for (std::size_t i = t + 1; i < D.rows(); ++i)
                    if (D(i, t) != 0 && abs(D(i, t)) < best) best = abs(D(i, t)), bi = i, bj = t;
                for (std::size_t j = t + 1; j < D.cols(); ++j)
                    if (D(t, j) != 0 && abs(D(t, j)) < best) best = abs(D(t, j)), bi = t, bj = j;
                D.swap_rows(t, bi);
                U.swap_rows(t, bi);
                D.swap_cols(t, bj);
                V.swap_cols(t, bj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            std::optional<std::size_t> offender;
            for (std::size_t i = t + 1; i < D.rows() && !offender; ++i)
                for (std::size_t j = t + 1; j < D.cols(); ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        offender = i;
                        break;
                    }
            if (!offender) break;
            D.add_row(t, *offender, 1);
            U.add_row(t, *offender, 1);
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            U.negate_row(t);
        }
    }

    SmithForm out{std::vector<Integer>(n), std::move(U), std::move(V)};
    for (std::size_t t = 0; t < n; ++t) out.invariants[t] = D(t, t);
    return out;
}

/// Invariant factors of Z^rows / (column span of M), padded with 1s (kept
/// from the Smith form) and 0s (free summands) to exactly `rows` entries.
inline std::vector<Integer> cokernel_invariants(const IntMatrix& M) {
    std::vector<Integer> out = snf(M).invariants;
    out.resize(M.rows(), Integer(0));
    return out;
}

struct RankDim {
    std::size_t rank = 0; ///< minimal number of generators: entries != 1
    std::size_t dim = 0;  ///< free rank: entries == 0
};

inline RankDim rank_and_dim(std::span<const Integer> invariants) {
    RankDim out;
    for (const Integer& d : invariants) {
        if (d != 1) ++out.rank;
        if (d == 0) ++out.dim;
    }
    return out;
}

/// Columns form a basis of the integer kernel {x : Mx = 0}; shape cols x q.
inline IntMatrix kernel_matrix(const IntMatrix& M) {
    const SmithForm S = snf(M);
    const std::size_t r = S.rank();
    IntMatrix W(M.cols(), M.cols() - r);
    for (std::size_t j = r; j < M.cols(); ++j)
        for (std::size_t i = 0; i < M.cols(); ++i) W(i, j - r) = S.V(i, j);
    return W;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer det(const IntMatrix& M) {
    if (M.rows() != M.cols()) throw Error(ErrorCode::shape, "determinant of a non-square matrix");
    const std::size_t n = M.rows();
    if (n == 0) return 1;
    IntMatrix A = M;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A(k, k) == 0) {
            std::size_t swap_with = k + 1;
            while (swap_with < n && A(swap_with, k) == 0) ++swap_with;
            if (swap_with == n) return 0;
            A.swap_rows(k, swap_with);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

/// Echelon basis of the column lattice of M.
///
/// Rows are cleared bottom-up, so the basis column owning pivot row p has
/// zeros below p, a positive pivot, and every other basis column has its
/// row-p entry reduced into [0, pivot). Columns are ordered by pivot row.
/// For a full-rank 2 x r matrix this is ((h11, 0), (h21, h22)) with
/// 0 <= h21 < h11 and h11 * h22 the index of the lattice.
struct HermiteBasis {
    IntMatrix basis;        ///< rows x rank
    IntMatrix coefficients; ///< cols x rank; M * coefficients = basis
    std::vector<std::size_t> pivot_rows;
};

inline HermiteBasis hermite_column_basis(const IntMatrix& M) {
    IntMatrix D = M;
    IntMatrix V = IntMatrix::identity(M.cols());
    std::vector<bool> active(M.cols(), true);
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, column)

    for (std::size_t p = M.rows(); p-- > 0;) {
        for (;;) {
            std::optional<std::size_t> best;
            bool other_nonzero = false;
            for (std::size_t j = 0; j < M.cols(); ++j) {
                if (!active[j] || D(p, j) == 0) continue;
                if (!best || abs(D(p, j)) < abs(D(p, *best))) {
                    if (best) other_nonzero = true;
                    best = j;
                } else {
                    other_nonzero = true;
                }
            }
            if (!best) break;
            if (!other_nonzero) {
                if (D(p, *best) < 0) {
                    D.negate_col(*best);
                    V.negate_col(*best);
                }
                active[*best] = false;
                pivots.emplace_back(p, *best);
                break;
            }
            for (std::size_t j = 0; j < M.cols(); ++j) {
                if (j == *best || !active[j] || D(p, j) == 0) continue;
                const Integer q = D(p, j) / D(p, *best);
                D.add_col(j, *best, -q);
                V.add_col(j, *best, -q);
            }
        }
    }
    std::sort(pivots.begin(), pivots.end());
    // Reduce entries at each pivot row in the columns that own lower pivots,
    // bottom row first so later steps leave reduced rows untouched.
    for (std::size_t a = pivots.size(); a-- > 0;) {
        const auto [row, col] = pivots[a];
        for (std::size_t b = a + 1; b < pivots.size(); ++b) {
            const std::size_t other = pivots[b].second;
            const Integer q = floor_div(D(row, other), D(row, col));
            D.add_col(other, col, -q);
            V.add_col(other, col, -q);
        }
    }
    HermiteBasis out{IntMatrix(M.rows(), pivots.size()), IntMatrix(M.cols(), pivots.size()), {}};
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        out.pivot_rows.push_back(pivots[k].first);
        for (std::size_t i = 0; i < M.rows(); ++i) out.basis(i, k) = D(i, pivots[k].second);
        for (std::size_t i = 0; i < M.cols(); ++i) out.coefficients(i, k) = V(i, pivots[k].second);
    }
    return out;
}

} // namespace nilrand
