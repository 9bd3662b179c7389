#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cochains/differential.hpp"

namespace cochains {

/*
 * A deliberately naive re-computation of Betti numbers, used only to
 * cross-check the engine. It shares the Element arithmetic but none of the
 * engine's basis enumeration, differential assembly, or elimination code:
 * bases come from a plain exponent odometer, the differential from a
 * word-by-word Leibniz expansion, and ranks from textbook dense
 * elimination. A bug in the engine's sparse machinery cannot hide here.
 */

/// Guards for the oracle's dense computations.
struct OracleLimits {
  std::size_t max_basis_entries = 2000;   // per degree
  std::size_t max_odometer_states = 5000000;
};

class OracleCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace oracle_detail {

/// Every exponent vector of exact total degree `target`, by odometer
/// iteration over the full bounding box (odd generators capped at 1).
inline std::vector<std::vector<std::uint32_t>> monomials_of_degree(const GradedAlgebra& alg,
                                                                   int target,
                                                                   const OracleLimits& limits) {
  const std::size_t gens = alg.generators.size();
  std::vector<std::vector<std::uint32_t>> result;
  if (target < 0) return result;
  std::vector<std::uint32_t> bounds(gens, 0), e(gens, 0);
  for (std::size_t j = 0; j < gens; ++j) {
    bounds[j] = static_cast<std::uint32_t>(target / alg.generators[j].degree);
    if (alg.generators[j].is_odd() && bounds[j] > 1) bounds[j] = 1;
  }
  std::size_t states = 0;
  for (;;) {
    if (++states > limits.max_odometer_states)
      throw OracleCapError("oracle odometer exceeded " +
                           std::to_string(limits.max_odometer_states) + " states");
    int degree = 0;
    for (std::size_t j = 0; j < gens; ++j)
      degree += static_cast<int>(e[j]) * alg.generators[j].degree;
    if (degree == target) result.push_back(e);
    std::size_t j = 0;
    while (j < gens && e[j] == bounds[j]) e[j++] = 0;
    if (j == gens) break;
    ++e[j];
  }
  return result;
}

struct DenseBasis {
  std::vector<std::pair<std::size_t, Monomial>> entries;
};

inline DenseBasis basis_of_degree(const ComplexSpec& spec, int n, const OracleLimits& limits) {
  DenseBasis basis;
  const GradedAlgebra& alg = spec.algebra;
  for (std::size_t b = 0; b < alg.base.dim(); ++b) {
    for (auto& exponents : monomials_of_degree(alg, n - alg.base.basis[b].degree, limits)) {
      if (basis.entries.size() >= limits.max_basis_entries)
        throw OracleCapError("oracle basis of degree " + std::to_string(n) + " exceeds cap of " +
                             std::to_string(limits.max_basis_entries) + " entries");
      basis.entries.emplace_back(b, Monomial{std::move(exponents)});
    }
  }
  return basis;
}

/// d of one basis entry, by writing it as an explicit word
/// b · g · g · … and summing d over each letter with the prefix sign.
inline Element differentiate_entry(const ComplexSpec& spec, std::size_t base, const Monomial& mono) {
  const GradedAlgebra& alg = spec.algebra;
  std::vector<Element> letters;         // the word, letter by letter
  std::vector<const Element*> letter_d; // d of each letter
  std::vector<int> letter_degree;
  letters.push_back(base_element(alg, base));
  letter_d.push_back(&spec.base_d[base]);
  letter_degree.push_back(alg.base.basis[base].degree);
  for (std::size_t j = 0; j < mono.exponents.size(); ++j)
    for (std::uint32_t rep = 0; rep < mono.exponents[j]; ++rep) {
      letters.push_back(generator_element(alg, j));
      letter_d.push_back(&spec.generator_d[j]);
      letter_degree.push_back(alg.generators[j].degree);
    }

  Element result = Element::zero();
  int prefix_parity = 0;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!letter_d[i]->is_zero()) {
      Element piece = unit_element(alg);
      for (std::size_t t = 0; t < i; ++t) piece = multiply(alg, piece, letters[t]);
      piece = multiply(alg, piece, *letter_d[i]);
      for (std::size_t t = i + 1; t < letters.size(); ++t)
        piece = multiply(alg, piece, letters[t]);
      if (prefix_parity & 1) piece = negate(piece);
      result = add(result, piece);
    }
    prefix_parity += letter_degree[i];
  }
  return result;
}

inline std::size_t index_in(const DenseBasis& basis, std::size_t base, const Monomial& mono) {
  for (std::size_t i = 0; i < basis.entries.size(); ++i)
    if (basis.entries[i].first == base && basis.entries[i].second == mono) return i;
  return basis.entries.size();
}

using DenseMatrix = std::vector<std::vector<Rational>>;  // rows of equal length

inline DenseMatrix matrix_between(const ComplexSpec& spec, const DenseBasis& from,
                                  const DenseBasis& to) {
  DenseMatrix m(to.entries.size(), std::vector<Rational>(from.entries.size(), Rational(0)));
  for (std::size_t j = 0; j < from.entries.size(); ++j) {
    Element image = differentiate_entry(spec, from.entries[j].first, from.entries[j].second);
    for (const auto& t : image.terms) {
      const std::size_t i = index_in(to, t.base, t.mono);
      if (i == to.entries.size())
        throw std::logic_error("oracle: differential image misses the enumerated basis");
      m[i][j] = t.coeff;
    }
  }
  return m;
}

/// Textbook row-echelon rank: scan columns left to right, first nonzero
/// row as pivot, eliminate below. No pivoting strategy, no sparsity.
inline std::size_t naive_rank(DenseMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (m[i][col] == 0) continue;
      const Rational f = m[i][col] / m[rank][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline bool product_is_zero(const DenseMatrix& a, const DenseMatrix& b) {
  // a: p×q, b: q×r; check a·b = 0 without materializing the product.
  if (a.empty() || b.empty()) return true;
  const std::size_t p = a.size(), q = b.size(), r = b[0].size();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      Rational sum(0);
      for (std::size_t j = 0; j < q; ++j)
        if (a[i][j] != 0 && b[j][k] != 0) sum += a[i][j] * b[j][k];
      if (sum != 0) return false;
    }
  return true;
}

}  // namespace oracle_detail

/**
 * Betti numbers recomputed the slow way, with a d² = 0 matrix-product
 * check on every consecutive pair of differentials. Throws OracleCapError
 * when an instance is too large for dense treatment.
 */
inline std::map<int, std::size_t> dense_betti(const ComplexSpec& spec, int up_to,
                                              const OracleLimits& limits = {}) {
  if (!spec.validated)
    throw std::logic_error("dense_betti called on a spec that has not passed check_differential");
  if (up_to < 0) throw std::invalid_argument("requested degree must be nonnegative");
  if (up_to > spec.max_degree - 1)
    throw std::invalid_argument("truncation too small: degrees through " + std::to_string(up_to) +
                                " require max_degree >= " + std::to_string(up_to + 1));

  std::vector<oracle_detail::DenseBasis> bases;
  for (int n = 0; n <= up_to + 1; ++n)
    bases.push_back(oracle_detail::basis_of_degree(spec, n, limits));
  std::vector<oracle_detail::DenseMatrix> d;
  for (int n = 0; n <= up_to; ++n)
    d.push_back(oracle_detail::matrix_between(spec, bases[n], bases[n + 1]));

  for (int n = 0; n + 1 <= up_to; ++n)
    if (!oracle_detail::product_is_zero(d[n + 1], d[n]))
      throw std::logic_error("oracle: d∘d is nonzero between degrees " + std::to_string(n) +
                             " and " + std::to_string(n + 2));

  std::map<int, std::size_t> result;
  std::size_t previous_rank = 0;
  for (int n = 0; n <= up_to; ++n) {
    const std::size_t r = oracle_detail::naive_rank(d[n]);
    result[n] = bases[n].entries.size() - r - previous_rank;
    previous_rank = r;
  }
  return result;
}

}  // namespace cochains
