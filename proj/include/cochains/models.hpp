#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cochains/differential.hpp"

namespace cochains {

/*
 * Ready-made complex constructors: free models of compact-group type
 * (exterior generators transgressing to polynomial ones), bundle models
 * where the fiber generators are sent to characteristic elements of the
 * base, the equivariant variant with polynomial symmetry generators, and
 * named example fixtures built from these.
 */

/// One characteristic assignment: the degree of the transgressing class
/// and its value in the base complex. An empty expression means zero. The
/// attached fiber generator gets degree `degree - 1`.
struct CharacteristicPair {
  int degree = 0;
  Expression value;
};

using CharacteristicData = std::vector<CharacteristicPair>;

/// A base algebra together with its differential on base elements
/// (omitted entries are zero), the raw material for the bundle models.
struct BaseWithDifferential {
  BaseAlgebraSpec spec;
  std::vector<std::pair<std::string, Expression>> differential;
};

namespace detail {

/// First free name from stem, stem_2, stem_3, … against base + generators.
inline std::string unique_generator_name(const std::string& stem, const BaseAlgebraSpec& base,
                                         const std::vector<GeneratorSpec>& generators) {
  auto taken = [&](const std::string& name) {
    if (base.index_of(name)) return true;
    for (const auto& g : generators)
      if (g.name == name) return true;
    return false;
  };
  if (!taken(stem)) return stem;
  for (int k = 2;; ++k) {
    std::string candidate = stem + "_" + std::to_string(k);
    if (!taken(candidate)) return candidate;
  }
}

inline BaseAlgebraSpec trivial_base() {
  BaseAlgebraBuilder builder;
  builder.add_element("1", 0).set_unit("1");
  return builder.build();
}

/// Assembles, validates, and stamps a spec; input-level failures surface
/// as std::invalid_argument carrying the validation report.
inline ComplexSpec finish_model(GradedAlgebra algebra,
                                std::vector<std::pair<std::string, Expression>> differentials,
                                int truncation) {
  ComplexSpec spec = make_complex(std::move(algebra), differentials, truncation);
  ValidationReport report = check_differential(spec);
  if (!report.ok())
    throw std::invalid_argument("model assembly failed validation:\n" + report.summary());
  return spec;
}

/// Shared assembly of the bundle models: fiber generators of degree
/// (deg c_i - 1) sent to the characteristic elements c_i. The caller has
/// already vetted the degree parity; this vets homogeneity/closedness.
inline ComplexSpec bundle_model(const BaseWithDifferential& base, const CharacteristicData& data,
                                int truncation, const std::string& stem_prefix) {
  std::vector<GeneratorSpec> generators;
  for (const auto& pair : data) {
    std::string name = unique_generator_name(stem_prefix + std::to_string(pair.degree - 1),
                                             base.spec, generators);
    generators.push_back({std::move(name), pair.degree - 1});
  }
  GradedAlgebra algebra = make_algebra(base.spec, generators);

  std::vector<std::pair<std::string, Expression>> differentials = base.differential;
  for (std::size_t i = 0; i < data.size(); ++i) {
    Element c = resolve(algebra, data[i].value);
    if (!degree_of(algebra, c).is_homogeneous_of(data[i].degree))
      throw std::invalid_argument("characteristic element for degree " +
                                  std::to_string(data[i].degree) +
                                  " is not homogeneous of that degree");
    differentials.emplace_back(generators[i].name, data[i].value);
  }

  ComplexSpec spec = make_complex(std::move(algebra), differentials, truncation);
  for (std::size_t i = 0; i < data.size(); ++i) {
    Element c = resolve(spec.algebra, data[i].value);
    if (!detail::apply_d_impl(spec, c).is_zero())
      throw std::invalid_argument("characteristic element for degree " +
                                  std::to_string(data[i].degree) + " is not closed");
  }
  ValidationReport report = check_differential(spec);
  if (!report.ok())
    throw std::invalid_argument("model assembly failed validation:\n" + report.summary());
  return spec;
}

}  // namespace detail

/// Free acyclic model: generators x_d (odd) and y_{d-1} (even) per listed
/// degree, d(y) = x. Cohomology is a single class in degree 0.
inline ComplexSpec contractible_model(const std::vector<int>& degrees, int truncation) {
  std::vector<GeneratorSpec> generators;
  BaseAlgebraSpec base = detail::trivial_base();
  std::vector<std::pair<std::string, Expression>> differentials;
  for (int d : degrees) {
    if (d < 3 || d % 2 == 0)
      throw std::invalid_argument("contractible_model degrees must be odd integers >= 3 (got " +
                                  std::to_string(d) + ")");
    std::string x = detail::unique_generator_name("x" + std::to_string(d), base, generators);
    generators.push_back({x, d});
    std::string y = detail::unique_generator_name("y" + std::to_string(d - 1), base, generators);
    generators.push_back({y, d - 1});
    differentials.emplace_back(y, Expression{{Rational(1), "1", {{x, 1}}}});
  }
  return detail::finish_model(make_algebra(std::move(base), std::move(generators)),
                              std::move(differentials), truncation);
}

/// Free polynomial model with zero differential: one even generator
/// y_{d-1} per listed odd degree d.
inline ComplexSpec loop_space_model(const std::vector<int>& degrees, int truncation) {
  std::vector<GeneratorSpec> generators;
  BaseAlgebraSpec base = detail::trivial_base();
  for (int d : degrees) {
    if (d < 3 || d % 2 == 0)
      throw std::invalid_argument("loop_space_model degrees must be odd integers >= 3 (got " +
                                  std::to_string(d) + ")");
    std::string y = detail::unique_generator_name("y" + std::to_string(d - 1), base, generators);
    generators.push_back({y, d - 1});
  }
  return detail::finish_model(make_algebra(std::move(base), std::move(generators)), {}, truncation);
}

/// Bundle model with odd fiber generators: z_i of degree deg c_i - 1 and
/// d(z_i) = c_i, over a base complex. Class degrees must be even.
inline ComplexSpec ghv_bundle_model(const BaseWithDifferential& base, const CharacteristicData& data,
                                    int truncation) {
  for (const auto& pair : data)
    if (pair.degree < 2 || pair.degree % 2 != 0)
      throw std::invalid_argument("ghv_bundle_model class degrees must be even integers >= 2 (got " +
                                  std::to_string(pair.degree) + ")");
  return detail::bundle_model(base, data, truncation, "z");
}

/// Bundle model with even (polynomial) fiber generators: y_i of degree
/// deg c_i - 1 and d(y_i) = c_i. Class degrees must be odd and >= 3.
inline ComplexSpec loop_bundle_model(const BaseWithDifferential& base, const CharacteristicData& data,
                                     int truncation) {
  for (const auto& pair : data)
    if (pair.degree < 3 || pair.degree % 2 == 0)
      throw std::invalid_argument("loop_bundle_model class degrees must be odd integers >= 3 (got " +
                                  std::to_string(pair.degree) + ")");
  return detail::bundle_model(base, data, truncation, "y");
}

/// loop_bundle_model over a cohomology ring: the base differential must be
/// identically zero (the classes are the base elements themselves).
inline ComplexSpec formal_loop_bundle_model(const BaseWithDifferential& base,
                                            const CharacteristicData& data, int truncation) {
  GradedAlgebra probe = make_algebra(base.spec, {});
  for (const auto& [name, expr] : base.differential)
    if (!resolve(probe, expr).is_zero())
      throw std::invalid_argument("formal_loop_bundle_model requires a zero base differential, but d(" +
                                  name + ") is nonzero");
  return loop_bundle_model(base, data, truncation);
}

/// Equivariant bundle model: the supplied base encodes the symmetry-
/// reduced complex, extra even polynomial generators u_j (d = 0) carry the
/// symmetry weights, and the fiber generators transgress to c_i as usual.
inline ComplexSpec equivariant_loop_bundle_model(const BaseWithDifferential& base,
                                                 const std::vector<GeneratorSpec>& polynomial_generators,
                                                 const CharacteristicData& data, int truncation) {
  for (const auto& u : polynomial_generators)
    if (u.degree < 2 || u.degree % 2 != 0)
      throw std::invalid_argument("polynomial generator '" + u.name +
                                  "' must have even degree >= 2");
  for (const auto& pair : data)
    if (pair.degree < 3 || pair.degree % 2 == 0)
      throw std::invalid_argument("equivariant class degrees must be odd integers >= 3 (got " +
                                  std::to_string(pair.degree) + ")");

  std::vector<GeneratorSpec> generators = polynomial_generators;
  std::vector<std::pair<std::string, Expression>> differentials = base.differential;
  for (const auto& pair : data) {
    std::string name =
        detail::unique_generator_name("y" + std::to_string(pair.degree - 1), base.spec, generators);
    generators.push_back({name, pair.degree - 1});
    differentials.emplace_back(name, pair.value);
  }
  GradedAlgebra algebra = make_algebra(base.spec, std::move(generators));

  ComplexSpec spec = make_complex(std::move(algebra), differentials, truncation);
  for (const auto& pair : data) {
    Element c = resolve(spec.algebra, pair.value);
    if (!degree_of(spec.algebra, c).is_homogeneous_of(pair.degree))
      throw std::invalid_argument("characteristic element for degree " +
                                  std::to_string(pair.degree) +
                                  " is not homogeneous of that degree");
    if (!detail::apply_d_impl(spec, c).is_zero())
      throw std::invalid_argument("characteristic element for degree " +
                                  std::to_string(pair.degree) + " is not closed");
  }
  ValidationReport report = check_differential(spec);
  if (!report.ok())
    throw std::invalid_argument("model assembly failed validation:\n" + report.summary());
  return spec;
}

/// The worked rank-one example: base {1, x5} with x5^2 = 0 and zero
/// differential, fiber generators y2 (d = 0) and y4 (d = x5).
inline ComplexSpec su3_so3_example(int truncation) {
  if (truncation < 2) throw std::invalid_argument("su3_so3_example needs truncation >= 2");
  BaseAlgebraBuilder builder;
  builder.add_element("1", 0).add_element("x5", 5).set_unit("1");
  builder.set_product("x5", "x5", {});
  BaseWithDifferential base{builder.build(), {}};
  CharacteristicData data;
  data.push_back({3, {}});                                // the degree-3 class vanishes
  data.push_back({5, {{Rational(1), "x5", {}}}});         // the degree-5 class survives
  return formal_loop_bundle_model(base, data, truncation);
}

/// Names accepted by make_fixture, in display order.
inline std::vector<std::string> fixture_names() {
  return {"su3-so3",  "loop-su2",  "loop-su3",
          "koszul-su3", "equivariant-point-su2", "conjugation-gg"};
}

/// Built-in fixtures by name. Throws std::invalid_argument for names not
/// in fixture_names().
inline ComplexSpec make_fixture(const std::string& name, int truncation) {
  if (name == "su3-so3") return su3_so3_example(truncation);
  if (name == "loop-su2") return loop_space_model({3}, truncation);
  if (name == "loop-su3") return loop_space_model({3, 5}, truncation);
  if (name == "koszul-su3") return contractible_model({3, 5}, truncation);
  if (name == "equivariant-point-su2") {
    BaseWithDifferential base{detail::trivial_base(), {}};
    return equivariant_loop_bundle_model(base, {{"u4", 4}}, {{3, {}}}, truncation);
  }
  if (name == "conjugation-gg") {
    BaseAlgebraBuilder builder;
    builder.add_element("1", 0).add_element("x3", 3).set_unit("1");
    builder.set_product("x3", "x3", {});
    BaseWithDifferential base{builder.build(), {}};
    return equivariant_loop_bundle_model(base, {{"u4", 4}}, {}, truncation);
  }
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace cochains
