#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cochains/rational.hpp"

namespace cochains {

/*
 * Exact linear algebra over Q. Two independent elimination strategies are
 * kept side by side on purpose: a sparse rational elimination with
 * Markowitz-style pivot selection (the workhorse) and a dense fraction-free
 * integer elimination (the cross-check). Rank questions can be answered by
 * either; they must always agree.
 */

/// Sparse vector: (index, coefficient) pairs, index ascending, no zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// Column-major sparse matrix over Q.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseVector> columns;  // size cols, each sorted by row index

  static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVector> columns) {
    SparseMatrix m;
    m.rows = rows;
    m.cols = columns.size();
    m.columns = std::move(columns);
    return m;
  }

  Rational entry(std::size_t row, std::size_t col) const {
    for (const auto& [r, v] : columns[col])
      if (r == row) return v;
    return Rational(0);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
  }
};

namespace detail {

/// out = a - factor * b for sorted sparse rows.
inline SparseVector sparse_axpy(const SparseVector& a, const Rational& factor,
                                const SparseVector& b) {
  SparseVector out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      out.push_back(a[i++]);
    } else if (b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -factor * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - factor * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i, ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.emplace_back(b[j].first, -factor * b[j].second);
  return out;
}

}  // namespace detail

/// Rank by sparse Gaussian elimination. Pivots are chosen to minimise the
/// Markowitz fill estimate (row_nnz - 1) * (col_nnz - 1), ties broken by
/// smallest column then smallest row, which keeps runs deterministic.
inline std::size_t rank_sparse(const SparseMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  std::vector<SparseVector> rows(m.rows);
  for (std::size_t j = 0; j < m.cols; ++j)
    for (const auto& [i, v] : m.columns[j]) rows[i].emplace_back(j, v);
  // Column-major input visits each row in ascending column order already,
  // but sort defensively: downstream merging relies on it.
  for (auto& row : rows)
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<char> row_active(m.rows, 1), col_active(m.cols, 1);
  std::vector<std::size_t> col_count(m.cols, 0);
  std::size_t rank = 0;
  for (;;) {
    std::fill(col_count.begin(), col_count.end(), 0);
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (!row_active[r]) continue;
      for (const auto& [c, v] : rows[r])
        if (col_active[c]) ++col_count[c];
    }
    std::size_t best_row = m.rows, best_col = m.cols;
    unsigned long long best_score = ~0ULL;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (!row_active[r]) continue;
      std::size_t row_nnz = 0;
      for (const auto& [c, v] : rows[r])
        if (col_active[c]) ++row_nnz;
      if (row_nnz == 0) continue;
      for (const auto& [c, v] : rows[r]) {
        if (!col_active[c]) continue;
        const unsigned long long score =
            static_cast<unsigned long long>(row_nnz - 1) * (col_count[c] - 1);
        if (score < best_score ||
            (score == best_score && (c < best_col || (c == best_col && r < best_row)))) {
          best_score = score;
          best_row = r;
          best_col = c;
        }
      }
    }
    if (best_row == m.rows) return rank;
    ++rank;
    const Rational pivot = [&] {
      for (const auto& [c, v] : rows[best_row])
        if (c == best_col) return v;
      return Rational(0);  // unreachable
    }();
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (!row_active[r] || r == best_row) continue;
      auto it = std::lower_bound(rows[r].begin(), rows[r].end(), best_col,
                                 [](const auto& e, std::size_t c) { return e.first < c; });
      if (it == rows[r].end() || it->first != best_col) continue;
      rows[r] = detail::sparse_axpy(rows[r], it->second / pivot, rows[best_row]);
    }
    row_active[best_row] = 0;
    col_active[best_col] = 0;
  }
}

/// Rank by dense fraction-free (Bareiss) elimination over the integers,
/// after clearing each row's denominators. Full pivoting with row and
/// column swaps; intended as the independent check on rank_sparse.
inline std::size_t rank_bareiss(const SparseMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  std::vector<std::vector<Rational>> dense(m.rows, std::vector<Rational>(m.cols, Rational(0)));
  for (std::size_t j = 0; j < m.cols; ++j)
    for (const auto& [i, v] : m.columns[j]) dense[i][j] = v;
  std::vector<std::vector<Integer>> a(m.rows, std::vector<Integer>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i) {
    Integer common(1);
    for (const auto& v : dense[i]) common = lcm(common, Integer(denominator(v)));
    for (std::size_t j = 0; j < m.cols; ++j)
      a[i][j] = Integer(numerator(dense[i][j])) * (common / Integer(denominator(dense[i][j])));
  }

  const std::size_t steps = std::min(m.rows, m.cols);
  Integer prev(1);
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t pr = m.rows, pc = m.cols;
    for (std::size_t j = k; j < m.cols && pr == m.rows; ++j)
      for (std::size_t i = k; i < m.rows; ++i)
        if (a[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == m.rows) return k;
    std::swap(a[pr], a[k]);
    if (pc != k)
      for (std::size_t i = 0; i < m.rows; ++i) std::swap(a[i][pc], a[i][k]);
    for (std::size_t i = k + 1; i < m.rows; ++i) {
      for (std::size_t j = k + 1; j < m.cols; ++j)
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;  // exact by Sylvester
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return steps;
}

/// Default rank backend.
inline std::size_t rank(const SparseMatrix& m) { return rank_sparse(m); }

/// Reduced row echelon form, computed densely in column order. RREF is
/// unique, so every consumer sees the same pivots and entries no matter
/// how the matrix was assembled.
struct RrefResult {
  std::size_t cols = 0;
  std::vector<std::vector<Rational>> rows;  // nonzero rows, pivot columns increasing
  std::vector<std::size_t> pivot_cols;

  std::size_t rank() const { return rows.size(); }
};

inline RrefResult rref(const SparseMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows, std::vector<Rational>(m.cols, Rational(0)));
  for (std::size_t j = 0; j < m.cols; ++j)
    for (const auto& [i, v] : m.columns[j]) a[i][j] = v;

  RrefResult result;
  result.cols = m.cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows && a[pivot][col] == 0) ++pivot;
    if (pivot == m.rows) continue;
    std::swap(a[pivot], a[row]);
    const Rational inv = Rational(1) / a[row][col];
    for (std::size_t j = col; j < m.cols; ++j) a[row][j] *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = col; j < m.cols; ++j) a[i][j] -= f * a[row][j];
    }
    result.pivot_cols.push_back(col);
    ++row;
  }
  result.rows.assign(a.begin(), a.begin() + row);
  return result;
}

/// Canonical kernel basis read off the RREF: one vector per free column,
/// free columns ascending, with the free coordinate set to 1. Deterministic
/// and independent of assembly order.
inline std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& m) {
  RrefResult r = rref(m);
  std::vector<char> is_pivot(m.cols, 0);
  for (std::size_t p : r.pivot_cols) is_pivot[p] = 1;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols, Rational(0));
    v[f] = 1;
    for (std::size_t t = 0; t < r.pivot_cols.size(); ++t) v[r.pivot_cols[t]] = -r.rows[t][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves A x = b over Q. Returns the canonical solution (free variables
/// zero) or nullopt when b is outside the column span.
inline std::optional<std::vector<Rational>> solve_in_span(const SparseMatrix& A,
                                                          const std::vector<Rational>& b) {
  std::vector<std::vector<Rational>> a(A.rows, std::vector<Rational>(A.cols + 1, Rational(0)));
  for (std::size_t j = 0; j < A.cols; ++j)
    for (const auto& [i, v] : A.columns[j]) a[i][j] = v;
  for (std::size_t i = 0; i < A.rows && i < b.size(); ++i) a[i][A.cols] = b[i];

  std::size_t row = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  for (std::size_t col = 0; col < A.cols && row < A.rows; ++col) {
    std::size_t pivot = row;
    while (pivot < A.rows && a[pivot][col] == 0) ++pivot;
    if (pivot == A.rows) continue;
    std::swap(a[pivot], a[row]);
    const Rational inv = Rational(1) / a[row][col];
    for (std::size_t j = col; j <= A.cols; ++j) a[row][j] *= inv;
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = col; j <= A.cols; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.emplace_back(row, col);
    ++row;
  }
  for (std::size_t i = row; i < A.rows; ++i)
    if (a[i][A.cols] != 0) return std::nullopt;
  std::vector<Rational> x(A.cols, Rational(0));
  for (const auto& [r, c] : pivots) x[c] = a[r][A.cols];
  return x;
}

/// Incremental row-space tracker (full Gauss-Jordan form): feed vectors in,
/// ask whether each enlarged the span, and read back fully reduced
/// residuals. Used to pick cocycle representatives modulo boundaries.
class RowReducer {
 public:
  explicit RowReducer(std::size_t width) : width_(width) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }

  /// Reduces v against the stored rows (no insertion).
  std::vector<Rational> reduce(std::vector<Rational> v) const {
    for (const auto& [pivot, row] : rows_) {
      if (v[pivot] == 0) continue;
      const Rational f = v[pivot];
      for (std::size_t j = 0; j < width_; ++j) v[j] -= f * row[j];
    }
    return v;
  }

  bool contains(const std::vector<Rational>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
  }

  /// Reduces v and, if a nonzero residual remains, normalizes its leading
  /// coefficient to 1, inserts it, and returns it. Returns nullopt when v
  /// was already in the span.
  std::optional<std::vector<Rational>> insert(std::vector<Rational> v) {
    v = reduce(std::move(v));
    std::size_t pivot = width_;
    for (std::size_t j = 0; j < width_; ++j)
      if (v[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot == width_) return std::nullopt;
    const Rational inv = Rational(1) / v[pivot];
    for (std::size_t j = pivot; j < width_; ++j) v[j] *= inv;
    for (auto& [p, row] : rows_) {
      if (row[pivot] == 0) continue;
      const Rational f = row[pivot];
      for (std::size_t j = 0; j < width_; ++j) row[j] -= f * v[j];
    }
    rows_.emplace_back(pivot, v);
    return v;
  }

 private:
  std::size_t width_;
  std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

}  // namespace cochains
