#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cochains/differential.hpp"
#include "cochains/exact_linalg.hpp"

namespace cochains {

/*
 * The engine: per-degree monomial bases, differential matrices, Betti
 * numbers, cocycle representatives, and the ring structure on cohomology,
 * all through the presentation's truncation degree.
 */

/// Caps on the combinatorial size of a computation. Polynomial generators
/// make per-degree bases grow quickly; the engine fails fast instead of
/// thrashing when a degree exceeds the cap.
struct EngineLimits {
  std::size_t max_basis_entries = 200000;  // per degree
};

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ordered monomial basis of one degree slice: (base index, monomial)
/// pairs in the canonical term order.
struct DegreeBasis {
  int degree = 0;
  std::vector<std::pair<std::size_t, Monomial>> entries;

  std::size_t size() const { return entries.size(); }
};

namespace detail {

inline bool basis_key_less(const std::pair<std::size_t, Monomial>& a,
                           const std::pair<std::size_t, Monomial>& b) {
  if (a.first != b.first) return a.first < b.first;
  return std::lexicographical_compare(b.second.exponents.begin(), b.second.exponents.end(),
                                      a.second.exponents.begin(), a.second.exponents.end());
}

/// Position of (base, mono) in a DegreeBasis, or size() when absent.
inline std::size_t basis_index(const DegreeBasis& basis, std::size_t base, const Monomial& mono) {
  const std::pair<std::size_t, Monomial> key{base, mono};
  auto it = std::lower_bound(basis.entries.begin(), basis.entries.end(), key, basis_key_less);
  if (it == basis.entries.end() || it->first != base || !(it->second == mono))
    return basis.entries.size();
  return static_cast<std::size_t>(it - basis.entries.begin());
}

}  // namespace detail

/**
 * Enumerates the complete basis of the degree-n slice in canonical order:
 * base index ascending, then exponent vectors in descending lexicographic
 * order. Descending-first recursion produces that order directly, so no
 * sort pass is needed.
 */
inline DegreeBasis enumerate_basis(const ComplexSpec& spec, int n, const EngineLimits& limits = {}) {
  if (!spec.validated)
    throw std::logic_error("enumerate_basis called on a spec that has not passed check_differential");
  if (n < 0 || n > spec.max_degree + 1)
    throw std::out_of_range("degree " + std::to_string(n) + " out of range [0, " +
                            std::to_string(spec.max_degree + 1) + "]");
  const GradedAlgebra& alg = spec.algebra;
  const std::size_t gens = alg.generators.size();
  DegreeBasis basis;
  basis.degree = n;

  std::vector<std::uint32_t> exponents(gens, 0);
  auto fill = [&](auto&& self, std::size_t base, std::size_t k, int remaining) -> void {
    if (k == gens) {
      if (remaining != 0) return;
      if (basis.entries.size() >= limits.max_basis_entries)
        throw ResourceLimitError("basis of degree " + std::to_string(n) + " exceeds cap of " +
                                 std::to_string(limits.max_basis_entries) + " entries");
      basis.entries.emplace_back(base, Monomial{exponents});
      return;
    }
    const int d = alg.generators[k].degree;
    int max_exp = remaining / d;
    if (alg.generators[k].is_odd() && max_exp > 1) max_exp = 1;
    for (int e = max_exp; e >= 0; --e) {
      exponents[k] = static_cast<std::uint32_t>(e);
      self(self, base, k + 1, remaining - e * d);
    }
    exponents[k] = 0;
  };
  for (std::size_t b = 0; b < alg.base.dim(); ++b) {
    const int remaining = n - alg.base.basis[b].degree;
    if (remaining < 0) continue;
    fill(fill, b, 0, remaining);
  }
  return basis;
}

/// Per-degree dimensions of the complex, n = 0 … up_to.
inline std::vector<std::size_t> dimensions(const ComplexSpec& spec, int up_to,
                                           const EngineLimits& limits = {}) {
  std::vector<std::size_t> dims;
  for (int n = 0; n <= up_to; ++n) dims.push_back(enumerate_basis(spec, n, limits).size());
  return dims;
}

/// The matrix of d from one enumerated degree basis to the next; column j
/// holds the coordinates of d applied to basis element j.
inline SparseMatrix matrix_of_d(const ComplexSpec& spec, const DegreeBasis& from,
                                const DegreeBasis& to) {
  std::vector<SparseVector> columns(from.size());
  for (std::size_t j = 0; j < from.size(); ++j) {
    const auto& [base, mono] = from.entries[j];
    Element image = detail::apply_d_impl(spec, Element{{Term{Rational(1), base, mono}}});
    SparseVector column;
    column.reserve(image.terms.size());
    for (const auto& t : image.terms) {
      const std::size_t row = detail::basis_index(to, t.base, t.mono);
      if (row == to.size())
        throw std::logic_error("differential image leaves the enumerated basis (internal error)");
      column.emplace_back(row, t.coeff);
    }
    // Element term order equals basis order, so rows are already ascending.
    columns[j] = std::move(column);
  }
  return SparseMatrix::from_columns(to.size(), std::move(columns));
}

/// Convenience overload enumerating both bases itself.
inline SparseMatrix matrix_of_d(const ComplexSpec& spec, int n, const EngineLimits& limits = {}) {
  DegreeBasis from = enumerate_basis(spec, n, limits);
  DegreeBasis to = enumerate_basis(spec, n + 1, limits);
  return matrix_of_d(spec, from, to);
}

namespace detail {

inline void require_window(const ComplexSpec& spec, int up_to) {
  if (!spec.validated)
    throw std::logic_error("engine called on a spec that has not passed check_differential");
  if (up_to < 0) throw std::invalid_argument("requested degree must be nonnegative");
  if (up_to > spec.max_degree - 1)
    throw std::invalid_argument(
        "truncation too small: degrees through " + std::to_string(up_to) +
        " require max_degree >= " + std::to_string(up_to + 1) + " (have " +
        std::to_string(spec.max_degree) + ")");
}

}  // namespace detail

/// Betti numbers b_0 … b_{up_to}:
///   b_n = dim ker d_n − rank d_{n−1} = dim C^n − rank d_n − rank d_{n−1}.
/// Requires up_to ≤ max_degree − 1 so every kernel is computed against a
/// complete next degree.
inline std::map<int, std::size_t> betti(const ComplexSpec& spec, int up_to,
                                        const EngineLimits& limits = {}) {
  detail::require_window(spec, up_to);
  std::vector<DegreeBasis> bases;
  for (int n = 0; n <= up_to + 1; ++n) bases.push_back(enumerate_basis(spec, n, limits));
  std::map<int, std::size_t> result;
  std::size_t prev_rank = 0;
  for (int n = 0; n <= up_to; ++n) {
    const std::size_t r = rank(matrix_of_d(spec, bases[n], bases[n + 1]));
    result[n] = bases[n].size() - r - prev_rank;
    prev_rank = r;
  }
  return result;
}

namespace detail {

inline std::vector<Rational> dense_column(const SparseVector& column, std::size_t rows) {
  std::vector<Rational> v(rows, Rational(0));
  for (const auto& [i, c] : column) v[i] = c;
  return v;
}

inline Element coords_to_element(const DegreeBasis& basis, const std::vector<Rational>& coords) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < basis.entries.size(); ++i)
    if (coords[i] != 0)
      terms.push_back(Term{coords[i], basis.entries[i].first, basis.entries[i].second});
  return Element{std::move(terms)};  // basis order is canonical term order
}

inline std::vector<Rational> element_to_coords(const DegreeBasis& basis, const Element& e) {
  std::vector<Rational> coords(basis.size(), Rational(0));
  for (const auto& t : e.terms) {
    const std::size_t i = basis_index(basis, t.base, t.mono);
    if (i == basis.size())
      throw std::logic_error("element has a term outside the degree basis (internal error)");
    coords[i] = t.coeff;
  }
  return coords;
}

/// Representatives of H^n given d_{n−1} and d_n: seed a row reducer with
/// the boundary columns, then insert the canonical kernel basis of d_n;
/// each vector that enlarges the span is kept (reduced against boundaries
/// and earlier picks, leading coefficient 1).
inline std::vector<std::vector<Rational>> representative_coords(const SparseMatrix& d_in,
                                                                const SparseMatrix& d_out) {
  RowReducer reducer(d_out.cols);
  for (const auto& column : d_in.columns) reducer.insert(dense_column(column, d_in.rows));
  std::vector<std::vector<Rational>> reps;
  for (auto& v : kernel_basis(d_out))
    if (auto reduced = reducer.insert(std::move(v))) reps.push_back(std::move(*reduced));
  return reps;
}

}  // namespace detail

/// Cocycle representatives whose classes form a basis of H^n.
inline std::vector<Element> representatives(const ComplexSpec& spec, int n,
                                            const EngineLimits& limits = {}) {
  detail::require_window(spec, n);
  DegreeBasis basis = enumerate_basis(spec, n, limits);
  DegreeBasis next = enumerate_basis(spec, n + 1, limits);
  SparseMatrix d_out = matrix_of_d(spec, basis, next);
  SparseMatrix d_in;
  if (n > 0) {
    DegreeBasis prev = enumerate_basis(spec, n - 1, limits);
    d_in = matrix_of_d(spec, prev, basis);
  } else {
    d_in = SparseMatrix::from_columns(basis.size(), {});
  }
  std::vector<Element> result;
  for (const auto& coords : detail::representative_coords(d_in, d_out))
    result.push_back(detail::coords_to_element(basis, coords));
  return result;
}

/// Everything the engine can say about one complex through a window.
struct CohomologyResult {
  int max_reliable_degree = -1;
  std::map<int, std::size_t> betti;
  std::map<int, std::vector<Element>> representatives;
  /// Key {d1, i1, d2, i2}: class i1 of H^{d1} times class i2 of H^{d2},
  /// as coefficients over the representatives of H^{d1+d2}.
  std::map<std::array<int, 4>, std::vector<Rational>> ring_constants;
  /// Pairs of stored classes whose product degree exceeds the window.
  std::vector<std::array<int, 4>> unknown_products;
  std::vector<std::size_t> dims;     // n = 0 … max_reliable_degree + 1
  std::vector<std::size_t> d_ranks;  // rank of d_n, n = 0 … max_reliable_degree
};

/**
 * Full computation: Betti numbers, representatives, and ring structure
 * through degree up_to. Products of representatives are resolved against
 * [representatives | boundary columns] of the product degree; the
 * representative part of such a solution is unique, so the constants do
 * not depend on how the solver breaks ties.
 */
inline CohomologyResult ring_structure(const ComplexSpec& spec, int up_to,
                                       const EngineLimits& limits = {}) {
  detail::require_window(spec, up_to);
  const GradedAlgebra& alg = spec.algebra;

  std::vector<DegreeBasis> bases;
  for (int n = 0; n <= up_to + 1; ++n) bases.push_back(enumerate_basis(spec, n, limits));
  std::vector<SparseMatrix> d;  // d[n]: degree n → n+1
  for (int n = 0; n <= up_to; ++n) d.push_back(matrix_of_d(spec, bases[n], bases[n + 1]));

  CohomologyResult result;
  result.max_reliable_degree = up_to;
  for (int n = 0; n <= up_to + 1; ++n) result.dims.push_back(bases[n].size());
  for (int n = 0; n <= up_to; ++n) result.d_ranks.push_back(rank(d[n]));

  std::vector<std::vector<std::vector<Rational>>> rep_coords(up_to + 1);
  for (int n = 0; n <= up_to; ++n) {
    SparseMatrix d_in = n > 0 ? d[n - 1] : SparseMatrix::from_columns(bases[0].size(), {});
    rep_coords[n] = detail::representative_coords(d_in, d[n]);
    result.betti[n] = rep_coords[n].size();
    auto& elements = result.representatives[n];
    for (const auto& coords : rep_coords[n])
      elements.push_back(detail::coords_to_element(bases[n], coords));
  }

  // Sanity: both routes to b_n must coincide.
  for (int n = 0; n <= up_to; ++n) {
    const std::size_t via_ranks =
        bases[n].size() - result.d_ranks[n] - (n > 0 ? result.d_ranks[n - 1] : 0);
    if (via_ranks != result.betti[n])
      throw std::logic_error("rank bookkeeping disagrees with representative count (internal error)");
  }

  for (int n1 = 0; n1 <= up_to; ++n1) {
    for (int n2 = 0; n2 <= up_to; ++n2) {
      if (result.betti[n1] == 0 || result.betti[n2] == 0) continue;
      const int degree = n1 + n2;
      if (degree > up_to) {
        for (std::size_t i1 = 0; i1 < rep_coords[n1].size(); ++i1)
          for (std::size_t i2 = 0; i2 < rep_coords[n2].size(); ++i2)
            result.unknown_products.push_back({n1, static_cast<int>(i1), n2, static_cast<int>(i2)});
        continue;
      }
      // Columns: representatives of the product degree, then boundaries.
      std::vector<SparseVector> columns;
      for (const auto& rep : rep_coords[degree]) {
        SparseVector col;
        for (std::size_t i = 0; i < rep.size(); ++i)
          if (rep[i] != 0) col.emplace_back(i, rep[i]);
        columns.push_back(std::move(col));
      }
      const std::size_t rep_count = columns.size();
      if (degree > 0)
        for (const auto& col : d[degree - 1].columns) columns.push_back(col);
      SparseMatrix span = SparseMatrix::from_columns(bases[degree].size(), std::move(columns));

      for (std::size_t i1 = 0; i1 < rep_coords[n1].size(); ++i1)
        for (std::size_t i2 = 0; i2 < rep_coords[n2].size(); ++i2) {
          Element product = multiply(alg, result.representatives[n1][i1],
                                     result.representatives[n2][i2]);
          auto solution = solve_in_span(span, detail::element_to_coords(bases[degree], product));
          if (!solution)
            throw std::logic_error(
                "product of cocycles not expressible over representatives and boundaries "
                "(internal error)");
          std::vector<Rational> constants(solution->begin(),
                                          solution->begin() + static_cast<long>(rep_count));
          result.ring_constants[{n1, static_cast<int>(i1), n2, static_cast<int>(i2)}] =
              std::move(constants);
        }
    }
  }
  return result;
}

/// Sorted (degree, betti) presentation.
inline std::vector<std::pair<int, std::size_t>> poincare_table(const CohomologyResult& result) {
  std::vector<std::pair<int, std::size_t>> table(result.betti.begin(), result.betti.end());
  return table;  // std::map iterates in key order
}

}  // namespace cochains
