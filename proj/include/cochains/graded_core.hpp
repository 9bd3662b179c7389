#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cochains/rational.hpp"

namespace cochains {

/*
 * Canonical representation and graded-commutative arithmetic for elements
 * of B (x) LW, where B is a finite-dimensional graded algebra given by
 * structure constants and LW is free graded-commutative on a list of
 * generators: polynomial on the even-degree ones, exterior on the odd ones.
 */

/// A free generator. Parity is derived from the degree: odd degree means
/// exterior (exponent 0 or 1), even degree means polynomial.
struct GeneratorSpec {
  std::string name;
  int degree = 0;

  bool is_odd() const { return (degree & 1) != 0; }
  bool operator==(const GeneratorSpec&) const = default;
};

/// A finite-dimensional graded algebra described by an ordered basis and a
/// total multiplication table over that basis.
struct BaseAlgebraSpec {
  struct BasisElement {
    std::string name;
    int degree = 0;

    bool operator==(const BasisElement&) const = default;
  };
  /// Sparse combination of basis elements, sorted by index, no zeros.
  using Combination = std::vector<std::pair<std::size_t, Rational>>;

  std::vector<BasisElement> basis;
  std::size_t unit = 0;
  std::vector<Combination> products;  // row-major dim() x dim()

  std::size_t dim() const { return basis.size(); }

  const Combination& product(std::size_t left, std::size_t right) const {
    return products[left * dim() + right];
  }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].name == name) return i;
    return std::nullopt;
  }

  bool operator==(const BaseAlgebraSpec&) const = default;
};

inline BaseAlgebraSpec::Combination normalized_combination(BaseAlgebraSpec::Combination c) {
  std::sort(c.begin(), c.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  BaseAlgebraSpec::Combination out;
  for (auto& [idx, coeff] : c) {
    if (coeff == 0) continue;
    if (!out.empty() && out.back().first == idx)
      out.back().second += coeff;
    else
      out.emplace_back(idx, coeff);
  }
  std::erase_if(out, [](const auto& p) { return p.second == 0; });
  return out;
}

/// One validation finding; `code` is a short machine-readable tag and
/// `symbol` names the offending basis element, generator, or pair.
struct ValidationIssue {
  std::string code;
  std::string symbol;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }

  std::string summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& issue : issues)
      os << "[" << issue.code << "] " << issue.symbol << ": " << issue.message << "\n";
    return os.str();
  }
};

/**
 * Assembles a BaseAlgebraSpec from named products. Products may be given in
 * one orientation only; the builder fills the transposed entry with the
 * Koszul sign. Products involving the unit default to the forced values;
 * everything else omitted defaults to zero. The completed table is still
 * subject to validate_base().
 */
class BaseAlgebraBuilder {
 public:
  BaseAlgebraBuilder& add_element(std::string name, int degree) {
    if (find(name)) throw std::invalid_argument("duplicate base element '" + name + "'");
    elements_.push_back({std::move(name), degree});
    return *this;
  }

  BaseAlgebraBuilder& set_unit(std::string_view name) {
    unit_name_ = std::string(name);
    return *this;
  }

  BaseAlgebraBuilder& set_product(std::string_view left, std::string_view right,
                                  std::vector<std::pair<std::string, Rational>> combo) {
    explicit_products_.push_back({std::string(left), std::string(right), std::move(combo)});
    return *this;
  }

  BaseAlgebraSpec build() const {
    BaseAlgebraSpec spec;
    for (const auto& e : elements_) spec.basis.push_back({e.name, e.degree});
    const std::size_t n = spec.dim();
    if (n == 0) throw std::invalid_argument("base algebra needs at least a unit element");
    auto unit = spec.index_of(unit_name_);
    if (!unit) throw std::invalid_argument("unit element '" + unit_name_ + "' not in basis");
    spec.unit = *unit;

    std::vector<std::optional<BaseAlgebraSpec::Combination>> table(n * n);
    for (const auto& p : explicit_products_) {
      auto l = spec.index_of(p.left);
      auto r = spec.index_of(p.right);
      if (!l) throw std::invalid_argument("unknown base element '" + p.left + "' in product");
      if (!r) throw std::invalid_argument("unknown base element '" + p.right + "' in product");
      BaseAlgebraSpec::Combination combo;
      for (const auto& [name, coeff] : p.result) {
        auto idx = spec.index_of(name);
        if (!idx) throw std::invalid_argument("unknown base element '" + name + "' in product result");
        combo.emplace_back(*idx, coeff);
      }
      auto& slot = table[*l * n + *r];
      if (slot) throw std::invalid_argument("product '" + p.left + "*" + p.right + "' given twice");
      slot = normalized_combination(std::move(combo));
    }

    // Transpose fill: b'*b = (-1)^{deg b deg b'} b*b'.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!table[i * n + j] || table[j * n + i]) continue;
        auto combo = *table[i * n + j];
        const bool flip = (spec.basis[i].degree & 1) && (spec.basis[j].degree & 1);
        if (flip)
          for (auto& [idx, coeff] : combo) coeff = -coeff;
        table[j * n + i] = std::move(combo);
      }

    spec.products.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto& slot = table[i * n + j];
        if (slot) {
          spec.products[i * n + j] = std::move(*slot);
        } else if (i == spec.unit) {
          spec.products[i * n + j] = {{j, Rational(1)}};
        } else if (j == spec.unit) {
          spec.products[i * n + j] = {{i, Rational(1)}};
        }  // else zero
      }
    return spec;
  }

 private:
  struct Pending {
    std::string left, right;
    std::vector<std::pair<std::string, Rational>> result;
  };

  const BaseAlgebraSpec::BasisElement* find(std::string_view name) const {
    for (const auto& e : elements_)
      if (e.name == name) return &e;
    return nullptr;
  }

  std::vector<BaseAlgebraSpec::BasisElement> elements_;
  std::string unit_name_;
  std::vector<Pending> explicit_products_;
};

/// Checks the structural laws of a base algebra table: a unique degree-0
/// unit that acts as identity, degree-additive products, graded
/// commutativity, and associativity on all basis triples.
inline ValidationReport validate_base(const BaseAlgebraSpec& spec) {
  ValidationReport report;
  auto issue = [&](std::string code, std::string symbol, std::string message) {
    report.issues.push_back({std::move(code), std::move(symbol), std::move(message)});
  };

  const std::size_t n = spec.dim();
  if (n == 0) {
    issue("unit", "-", "base algebra is empty");
    return report;
  }
  if (spec.products.size() != n * n) {
    issue("table", "-", "product table has wrong size");
    return report;
  }
  std::size_t degree_zero = 0;
  for (const auto& b : spec.basis) {
    if (b.degree == 0) ++degree_zero;
    if (b.degree < 0) issue("degree", b.name, "negative degree");
  }
  if (degree_zero != 1)
    issue("unit", "-", "base algebra must have exactly one degree-0 element");
  if (spec.unit >= n || spec.basis[spec.unit].degree != 0)
    issue("unit", "-", "unit is not the degree-0 basis element");

  auto name = [&](std::size_t i) { return spec.basis[i].name; };
  auto pair_symbol = [&](std::size_t i, std::size_t j) { return name(i) + "*" + name(j); };

  for (std::size_t i = 0; i < n; ++i) {
    const auto& left_unit = spec.product(spec.unit, i);
    const auto& right_unit = spec.product(i, spec.unit);
    BaseAlgebraSpec::Combination expect = {{i, Rational(1)}};
    if (left_unit != expect) issue("unit", pair_symbol(spec.unit, i), "unit does not act as identity");
    if (right_unit != expect) issue("unit", pair_symbol(i, spec.unit), "unit does not act as identity");
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int expected = spec.basis[i].degree + spec.basis[j].degree;
      for (const auto& [k, coeff] : spec.product(i, j)) {
        if (k >= n) {
          issue("table", pair_symbol(i, j), "product references an out-of-range index");
          continue;
        }
        if (coeff == 0) issue("table", pair_symbol(i, j), "stored zero coefficient");
        if (spec.basis[k].degree != expected)
          issue("degree", pair_symbol(i, j),
                "product term " + name(k) + " breaks degree additivity");
      }
    }

  // b*b' = (-1)^{deg b deg b'} b'*b
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto forward = spec.product(i, j);
      auto backward = spec.product(j, i);
      const bool flip = (spec.basis[i].degree & 1) && (spec.basis[j].degree & 1);
      if (flip)
        for (auto& [idx, coeff] : backward) coeff = -coeff;
      if (normalized_combination(forward) != normalized_combination(backward))
        issue("graded-commutativity", pair_symbol(i, j), "table is not graded-commutative");
    }

  // (b_i b_j) b_k = b_i (b_j b_k) expanded through the table
  auto times = [&](const BaseAlgebraSpec::Combination& combo, std::size_t right) {
    BaseAlgebraSpec::Combination out;
    for (const auto& [idx, coeff] : combo)
      for (const auto& [target, c2] : spec.product(idx, right))
        out.emplace_back(target, coeff * c2);
    return normalized_combination(std::move(out));
  };
  auto times_left = [&](std::size_t left, const BaseAlgebraSpec::Combination& combo) {
    BaseAlgebraSpec::Combination out;
    for (const auto& [idx, coeff] : combo)
      for (const auto& [target, c2] : spec.product(left, idx))
        out.emplace_back(target, coeff * c2);
    return normalized_combination(std::move(out));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto lhs = times(spec.product(i, j), k);
        auto rhs = times_left(i, spec.product(j, k));
        if (lhs != rhs)
          issue("associativity", name(i) + "*" + name(j) + "*" + name(k),
                "table is not associative");
      }
  return report;
}

/// The ambient algebra B (x) LW: a base algebra plus the free generator
/// list. Immutable after construction; every Element lives relative to one
/// of these.
struct GradedAlgebra {
  BaseAlgebraSpec base;
  std::vector<GeneratorSpec> generators;

  std::optional<std::size_t> generator_index(std::string_view name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].name == name) return i;
    return std::nullopt;
  }

  bool operator==(const GradedAlgebra&) const = default;
};

/// Builds the ambient algebra, enforcing generator degrees >= 1 and a
/// single namespace for base-element and generator names.
inline GradedAlgebra make_algebra(BaseAlgebraSpec base, std::vector<GeneratorSpec> generators) {
  for (const auto& g : generators) {
    if (g.degree < 1)
      throw std::invalid_argument("generator '" + g.name + "' must have degree >= 1");
    if (base.index_of(g.name))
      throw std::invalid_argument("duplicate symbol '" + g.name + "'");
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (generators[i].name == generators[j].name)
        throw std::invalid_argument("duplicate symbol '" + generators[i].name + "'");
  return GradedAlgebra{std::move(base), std::move(generators)};
}

/// Exponent vector over the generator list, declaration order. Odd
/// generators carry exponent 0 or 1.
struct Monomial {
  std::vector<std::uint32_t> exponents;

  bool is_unit() const {
    return std::all_of(exponents.begin(), exponents.end(),
                       [](std::uint32_t e) { return e == 0; });
  }

  bool operator==(const Monomial&) const = default;
};

inline int monomial_degree(const GradedAlgebra& algebra, const Monomial& m) {
  long long degree = 0;
  for (std::size_t i = 0; i < m.exponents.size(); ++i)
    degree += static_cast<long long>(m.exponents[i]) * algebra.generators[i].degree;
  if (degree > (1LL << 30)) throw std::invalid_argument("monomial degree out of range");
  return static_cast<int>(degree);
}

struct Term {
  Rational coeff;
  std::size_t base = 0;
  Monomial mono;

  bool operator==(const Term&) const = default;
};

inline int term_degree(const GradedAlgebra& algebra, const Term& t) {
  return algebra.base.basis[t.base].degree + monomial_degree(algebra, t.mono);
}

/// Canonical term order: base index ascending, then exponent vectors in
/// descending lexicographic order (y2^2 lists before y4).
inline bool term_key_less(const Term& a, const Term& b) {
  if (a.base != b.base) return a.base < b.base;
  return std::lexicographical_compare(b.mono.exponents.begin(), b.mono.exponents.end(),
                                      a.mono.exponents.begin(), a.mono.exponents.end());
}

/// A sparse Q-linear combination of (base element (x) generator monomial)
/// terms in canonical order. The zero element has no terms.
struct Element {
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  static Element zero() { return {}; }

  bool operator==(const Element&) const = default;
};

/// Canonicalizing constructor: sorts, merges duplicate keys, and drops
/// zero coefficients. Rejects terms that violate the monomial invariants.
inline Element make_element(const GradedAlgebra& algebra, std::vector<Term> terms) {
  const std::size_t gens = algebra.generators.size();
  for (const auto& t : terms) {
    if (t.base >= algebra.base.dim())
      throw std::invalid_argument("term references an out-of-range base index");
    if (t.mono.exponents.size() != gens)
      throw std::invalid_argument("monomial has wrong exponent-vector length");
    for (std::size_t i = 0; i < gens; ++i)
      if (algebra.generators[i].is_odd() && t.mono.exponents[i] > 1)
        throw std::invalid_argument("odd generator '" + algebra.generators[i].name +
                                    "' cannot carry exponent >= 2");
  }
  std::sort(terms.begin(), terms.end(), term_key_less);
  Element out;
  for (auto& t : terms) {
    if (t.coeff == 0) continue;
    if (!out.terms.empty() && out.terms.back().base == t.base &&
        out.terms.back().mono == t.mono)
      out.terms.back().coeff += t.coeff;
    else
      out.terms.push_back(std::move(t));
  }
  std::erase_if(out.terms, [](const Term& t) { return t.coeff == 0; });
  return out;
}

inline Element unit_element(const GradedAlgebra& algebra) {
  return Element{{Term{Rational(1), algebra.base.unit,
                       Monomial{std::vector<std::uint32_t>(algebra.generators.size(), 0)}}}};
}

inline Element base_element(const GradedAlgebra& algebra, std::size_t index) {
  return Element{{Term{Rational(1), index,
                       Monomial{std::vector<std::uint32_t>(algebra.generators.size(), 0)}}}};
}

inline Element generator_element(const GradedAlgebra& algebra, std::size_t index) {
  Monomial m{std::vector<std::uint32_t>(algebra.generators.size(), 0)};
  m.exponents[index] = 1;
  return Element{{Term{Rational(1), algebra.base.unit, std::move(m)}}};
}

/// Multiplies two generator monomials. Returns the Koszul sign, or nullopt
/// when an odd generator would acquire exponent 2. The sign counts the odd
/// transpositions needed to merge the two exponent words back into
/// declaration order.
inline std::optional<int> multiply_monomials(const GradedAlgebra& algebra, const Monomial& a,
                                             const Monomial& b, Monomial& out) {
  const std::size_t n = algebra.generators.size();
  out.exponents.assign(n, 0);
  long long transpositions = 0;
  long long odd_tail_of_a = 0;  // odd generators of a with index > current
  for (std::size_t i = 0; i < n; ++i)
    if (algebra.generators[i].is_odd() && a.exponents[i] > 0) ++odd_tail_of_a;
  for (std::size_t i = 0; i < n; ++i) {
    const bool odd = algebra.generators[i].is_odd();
    if (odd && a.exponents[i] > 0) --odd_tail_of_a;
    const std::uint32_t sum = a.exponents[i] + b.exponents[i];
    if (odd && sum > 1) return std::nullopt;
    if (odd && b.exponents[i] > 0) transpositions += odd_tail_of_a;
    out.exponents[i] = sum;
  }
  return (transpositions & 1) ? -1 : 1;
}

/// Graded-commutative product. Sign convention, fixed globally:
///   (b (x) m)(b' (x) m') = (-1)^{deg m * deg b'} (b b') (x) (m m').
inline Element multiply(const GradedAlgebra& algebra, const Element& a, const Element& b) {
  std::vector<Term> out;
  Monomial product_mono;
  for (const auto& ta : a.terms) {
    const int mono_deg = monomial_degree(algebra, ta.mono);
    for (const auto& tb : b.terms) {
      auto mono_sign = multiply_monomials(algebra, ta.mono, tb.mono, product_mono);
      if (!mono_sign) continue;
      const int base_deg_b = algebra.base.basis[tb.base].degree;
      int sign = *mono_sign;
      if ((mono_deg & 1) && (base_deg_b & 1)) sign = -sign;
      const Rational scale = ta.coeff * tb.coeff * sign;
      for (const auto& [target, coeff] : algebra.base.product(ta.base, tb.base))
        out.push_back(Term{scale * coeff, target, product_mono});
    }
  }
  return make_element(algebra, std::move(out));
}

inline Element add(const Element& a, const Element& b) {
  Element out;
  out.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    if (term_key_less(a.terms[i], b.terms[j])) {
      out.terms.push_back(a.terms[i++]);
    } else if (term_key_less(b.terms[j], a.terms[i])) {
      out.terms.push_back(b.terms[j++]);
    } else {
      Term merged = a.terms[i++];
      merged.coeff += b.terms[j++].coeff;
      if (merged.coeff != 0) out.terms.push_back(std::move(merged));
    }
  }
  for (; i < a.terms.size(); ++i) out.terms.push_back(a.terms[i]);
  for (; j < b.terms.size(); ++j) out.terms.push_back(b.terms[j]);
  return out;
}

inline Element scale(const Rational& c, const Element& a) {
  if (c == 0) return Element::zero();
  Element out = a;
  for (auto& t : out.terms) t.coeff *= c;
  return out;
}

inline Element negate(const Element& a) { return scale(Rational(-1), a); }

inline Element subtract(const Element& a, const Element& b) { return add(a, negate(b)); }

/// Total degree of an element. Zero matches any degree; an element whose
/// terms disagree is flagged as mixed.
struct DegreeInfo {
  enum class Kind { zero, homogeneous, mixed };
  Kind kind = Kind::zero;
  int degree = 0;  // meaningful only for homogeneous

  bool is_homogeneous_of(int d) const {
    return kind == Kind::zero || (kind == Kind::homogeneous && degree == d);
  }
};

inline DegreeInfo degree_of(const GradedAlgebra& algebra, const Element& a) {
  if (a.is_zero()) return {DegreeInfo::Kind::zero, 0};
  DegreeInfo info{DegreeInfo::Kind::homogeneous, term_degree(algebra, a.terms.front())};
  for (const auto& t : a.terms)
    if (term_degree(algebra, t) != info.degree) return {DegreeInfo::Kind::mixed, 0};
  return info;
}

/// One term of a symbolic expression: coefficient, base-element name, and
/// generator exponents by name. The exchange form used by problem files
/// and the model constructors.
struct ExprTerm {
  Rational coeff;
  std::string base;
  std::vector<std::pair<std::string, int>> exponents;
};

using Expression = std::vector<ExprTerm>;

/// Resolves an expression against an algebra's symbol table.
inline Element resolve(const GradedAlgebra& algebra, const Expression& expr) {
  std::vector<Term> terms;
  for (const auto& et : expr) {
    auto base = algebra.base.index_of(et.base);
    if (!base) throw std::invalid_argument("symbol '" + et.base + "' not found in spec");
    Monomial mono{std::vector<std::uint32_t>(algebra.generators.size(), 0)};
    for (const auto& [gen, exp] : et.exponents) {
      auto idx = algebra.generator_index(gen);
      if (!idx) throw std::invalid_argument("symbol '" + gen + "' not found in spec");
      if (exp < 1) throw std::invalid_argument("exponent of '" + gen + "' must be positive");
      if (algebra.generators[*idx].is_odd() && (exp > 1 || mono.exponents[*idx] > 0))
        throw std::invalid_argument("odd generator '" + gen + "' cannot carry exponent >= 2");
      mono.exponents[*idx] += static_cast<std::uint32_t>(exp);
    }
    terms.push_back(Term{et.coeff, *base, std::move(mono)});
  }
  return make_element(algebra, std::move(terms));
}

inline Element make_term(const GradedAlgebra& algebra, const Rational& coeff,
                         std::string_view base,
                         std::vector<std::pair<std::string, int>> exponents = {}) {
  ExprTerm et{coeff, std::string(base), std::move(exponents)};
  return resolve(algebra, {et});
}

/// Inverse of resolve: a name-based expression for an element, suitable
/// for re-resolution against any algebra sharing the symbol names.
inline Expression to_expression(const GradedAlgebra& algebra, const Element& element) {
  Expression expr;
  for (const auto& t : element.terms) {
    ExprTerm et{t.coeff, algebra.base.basis[t.base].name, {}};
    for (std::size_t k = 0; k < t.mono.exponents.size(); ++k)
      if (t.mono.exponents[k] > 0)
        et.exponents.emplace_back(algebra.generators[k].name,
                                  static_cast<int>(t.mono.exponents[k]));
    expr.push_back(std::move(et));
  }
  return expr;
}

inline std::string to_string(const GradedAlgebra& algebra, const Element& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : a.terms) {
    Rational c = t.coeff;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    } else if (c == -1) {
      // "-y4" reads better than "-1*y4"; longer negatives keep the explicit factor.
      os << "-";
      c = 1;
    }
    first = false;
    std::vector<std::string> factors;
    if (t.base != algebra.base.unit) factors.push_back(algebra.base.basis[t.base].name);
    for (std::size_t i = 0; i < t.mono.exponents.size(); ++i) {
      if (t.mono.exponents[i] == 0) continue;
      std::string f = algebra.generators[i].name;
      if (t.mono.exponents[i] > 1) f += "^" + std::to_string(t.mono.exponents[i]);
      factors.push_back(std::move(f));
    }
    if (c != 1 || factors.empty()) {
      os << to_string(c);
      if (!factors.empty()) os << "*";
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) os << "*";
      os << factors[i];
    }
  }
  return os.str();
}

}  // namespace cochains
