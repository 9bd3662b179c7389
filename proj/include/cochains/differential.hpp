#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cochains/graded_core.hpp"

namespace cochains {

/*
 * A cochain complex presentation: the ambient algebra B (x) LW together
 * with the differential, given on the B-basis and on the free generators
 * and extended to everything else by linearity and the graded Leibniz rule
 *   d(uv) = d(u) v + (-1)^{deg u} u d(v).
 */

/// Differential data for one algebra. `base_d[i]` is d of the i-th base
/// basis element; `generator_d[k]` is d of the k-th free generator. A
/// ComplexSpec must pass check_differential() before use; apply_d refuses
/// to run on an unvalidated spec so that no computation can silently start
/// from a non-complex.
struct ComplexSpec {
  GradedAlgebra algebra;
  std::vector<Element> base_d;
  std::vector<Element> generator_d;
  int max_degree = 0;  // truncation: bases are complete through max_degree + 1
  bool validated = false;

  bool operator==(const ComplexSpec&) const = default;
};

namespace detail {

/// d on a single term via the two-factor Leibniz split
///   d(b (x) m) = d(b) (1 (x) m) + (-1)^{deg b} (b (x) 1) d(1 (x) m)
/// with d on a monomial peeled one generator power at a time:
///   d(g^e rest) = e d(g) g^{e-1} rest + (g^e) d(rest)  [sign per parity].
/// No validation check; callers go through apply_d.
inline Element apply_d_impl(const ComplexSpec& spec, const Element& element) {
  const GradedAlgebra& alg = spec.algebra;
  const std::size_t gens = alg.generators.size();
  Element result = Element::zero();
  for (const auto& term : element.terms) {
    // d(b) (x) m
    Element db = scale(term.coeff, spec.base_d[term.base]);
    if (!db.is_zero()) {
      Element mono_only{{Term{Rational(1), alg.base.unit, term.mono}}};
      result = add(result, multiply(alg, db, mono_only));
    }
    // (-1)^{deg b} b (x) d(m), one generator at a time
    int sign = (alg.base.basis[term.base].degree & 1) ? -1 : 1;
    Monomial remaining = term.mono;
    for (std::size_t k = 0; k < gens; ++k) {
      const std::uint32_t e = remaining.exponents[k];
      if (e == 0) continue;
      if (!spec.generator_d[k].is_zero()) {
        // prefix: b (x) (gens < k at full power); d hits g_k^e as e*d(g_k)*g_k^{e-1}
        Monomial suffix = remaining;
        suffix.exponents[k] = e - 1;
        Element prefix{{Term{term.coeff * sign, term.base, Monomial{std::vector<std::uint32_t>(gens, 0)}}}};
        for (std::size_t j = 0; j < k; ++j) {
          prefix.terms[0].mono.exponents[j] = term.mono.exponents[j];
          suffix.exponents[j] = 0;
        }
        Element piece = multiply(alg, prefix, scale(Rational(e), spec.generator_d[k]));
        piece = multiply(alg, piece, Element{{Term{Rational(1), alg.base.unit, suffix}}});
        result = add(result, piece);
      }
      // walking past g_k^e flips the sign by its parity (odd gen, e = 1)
      if ((alg.generators[k].degree & 1) && (e & 1)) sign = -sign;
    }
  }
  return result;
}

}  // namespace detail

/// Applies the differential to an element of a validated complex.
inline Element apply_d(const ComplexSpec& spec, const Element& element) {
  if (!spec.validated)
    throw std::logic_error("apply_d called on a spec that has not passed check_differential");
  return detail::apply_d_impl(spec, element);
}

/**
 * Validates a would-be complex and stamps it on success. Checks, in order:
 *   - the base multiplication table laws (via validate_base);
 *   - shape: one differential entry per base element / generator;
 *   - homogeneity: d raises degree by exactly 1 on every symbol;
 *   - the Leibniz rule on all base pairs, d(b b') against the table;
 *   - d(d(s)) = 0 for every base element and generator s.
 * The d^2 check on symbols suffices: d is a derivation by construction,
 * so d^2 is one too, and a derivation vanishing on generators vanishes.
 */
inline ValidationReport check_differential(ComplexSpec& spec) {
  ValidationReport report = validate_base(spec.algebra.base);
  auto issue = [&](std::string code, std::string symbol, std::string message) {
    report.issues.push_back({std::move(code), std::move(symbol), std::move(message)});
  };
  if (!report.ok()) {
    // A broken multiplication table makes every later expansion unreliable.
    spec.validated = false;
    return report;
  }

  const auto& alg = spec.algebra;
  if (spec.max_degree < 1)
    issue("truncation", "-", "max_degree must be a positive integer");
  if (spec.base_d.size() != alg.base.dim() || spec.generator_d.size() != alg.generators.size()) {
    issue("shape", "-", "differential entry count does not match the symbol lists");
    spec.validated = false;
    return report;
  }

  auto check_degree = [&](const Element& image, int source_degree, const std::string& symbol) {
    if (!degree_of(alg, image).is_homogeneous_of(source_degree + 1))
      issue("homogeneity", symbol, "d does not raise degree by exactly 1");
  };
  for (std::size_t i = 0; i < alg.base.dim(); ++i)
    check_degree(spec.base_d[i], alg.base.basis[i].degree, alg.base.basis[i].name);
  for (std::size_t k = 0; k < alg.generators.size(); ++k)
    check_degree(spec.generator_d[k], alg.generators[k].degree, alg.generators[k].name);
  if (!report.ok()) {
    // Degree errors make the Leibniz/d^2 expansions meaningless; stop here.
    spec.validated = false;
    return report;
  }

  // Leibniz consistency of the table data: d(b_i b_j) computed through the
  // table must equal d(b_i) b_j + (-1)^{deg b_i} b_i d(b_j).
  for (std::size_t i = 0; i < alg.base.dim(); ++i)
    for (std::size_t j = 0; j < alg.base.dim(); ++j) {
      Element product = Element::zero();
      for (const auto& [k, coeff] : alg.base.product(i, j))
        product = add(product, scale(coeff, base_element(alg, k)));
      Element lhs = detail::apply_d_impl(spec, product);
      Element rhs = multiply(alg, spec.base_d[i], base_element(alg, j));
      int sign = (alg.base.basis[i].degree & 1) ? -1 : 1;
      rhs = add(rhs, scale(Rational(sign), multiply(alg, base_element(alg, i), spec.base_d[j])));
      if (lhs != rhs)
        issue("leibniz", alg.base.basis[i].name + "*" + alg.base.basis[j].name,
              "differential violates the Leibniz rule on this base pair");
    }

  for (std::size_t i = 0; i < alg.base.dim(); ++i)
    if (!detail::apply_d_impl(spec, spec.base_d[i]).is_zero())
      issue("d-squared", alg.base.basis[i].name, "d(d(" + alg.base.basis[i].name + ")) != 0");
  for (std::size_t k = 0; k < alg.generators.size(); ++k)
    if (!detail::apply_d_impl(spec, spec.generator_d[k]).is_zero())
      issue("d-squared", alg.generators[k].name, "d(d(" + alg.generators[k].name + ")) != 0");

  spec.validated = report.ok();
  return report;
}

/// Convenience assembler from expressions keyed by symbol name. Symbols
/// with no entry get d = 0. Unknown names throw std::invalid_argument.
inline ComplexSpec make_complex(GradedAlgebra algebra,
                                const std::vector<std::pair<std::string, Expression>>& differentials,
                                int max_degree) {
  ComplexSpec spec;
  spec.max_degree = max_degree;
  const std::size_t dim = algebra.base.dim();
  const std::size_t gens = algebra.generators.size();
  spec.base_d.assign(dim, Element::zero());
  spec.generator_d.assign(gens, Element::zero());
  for (const auto& [name, expr] : differentials) {
    Element image = resolve(algebra, expr);
    if (auto b = algebra.base.index_of(name)) {
      spec.base_d[*b] = std::move(image);
    } else if (auto g = algebra.generator_index(name)) {
      spec.generator_d[*g] = std::move(image);
    } else {
      throw std::invalid_argument("symbol '" + name + "' not found in spec");
    }
  }
  spec.algebra = std::move(algebra);
  return spec;
}

}  // namespace cochains
