#pragma once

#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cochains/cohomology.hpp"
#include "cochains/models.hpp"

namespace cochains {

/*
 * The problem-document format (JSON) and result serialization. Documents
 * describe a complex either by raw structure data (base table, generators,
 * differential) or by a model block naming one of the constructors; both
 * parse into a validated ComplexSpec. All coefficients travel as exact
 * rational strings, and serialized output is canonical: sorted keys,
 * lowest-terms rationals, fixed array orders — byte-identical across runs.
 */

/// Malformed input: bad JSON, wrong shape, unknown model name.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally well-formed input describing an invalid complex.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io_detail {

using nlohmann::json;

inline const json& require(const json& object, const char* key, const std::string& context) {
  if (!object.is_object())
    throw ParseError(context + " must be an object");
  auto it = object.find(key);
  if (it == object.end())
    throw ParseError(context + " is missing required field '" + key + "'");
  return *it;
}

inline std::string require_string(const json& object, const char* key, const std::string& context) {
  const json& v = require(object, key, context);
  if (!v.is_string()) throw ParseError(context + "." + key + " must be a string");
  return v.get<std::string>();
}

inline int require_int(const json& object, const char* key, const std::string& context) {
  const json& v = require(object, key, context);
  if (!v.is_number_integer()) throw ParseError(context + "." + key + " must be an integer");
  return v.get<int>();
}

inline Rational coefficient_from(const json& v, const std::string& context) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(context + ": " + e.what());
  }
  throw ParseError(context + " must be a rational string like \"3/4\" or an integer");
}

inline Expression expression_from(const json& value, const std::string& context) {
  if (!value.is_array()) throw ParseError(context + " must be an array of terms");
  Expression expr;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string term_context = context + "[" + std::to_string(i) + "]";
    const json& term = value[i];
    ExprTerm et;
    et.coeff = coefficient_from(require(term, "coeff", term_context), term_context + ".coeff");
    et.base = require_string(term, "base", term_context);
    if (auto it = term.find("exponents"); it != term.end()) {
      if (!it->is_object()) throw ParseError(term_context + ".exponents must be an object");
      for (const auto& [gen, exp] : it->items()) {
        if (!exp.is_number_integer() || exp.get<int>() < 1)
          throw ParseError(term_context + ".exponents." + gen + " must be a positive integer");
        et.exponents.emplace_back(gen, exp.get<int>());
      }
    }
    expr.push_back(std::move(et));
  }
  return expr;
}

inline BaseAlgebraSpec base_from(const json& base) {
  BaseAlgebraBuilder builder;
  const json& basis = require(base, "basis", "base");
  if (!basis.is_array()) throw ParseError("base.basis must be an array");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string context = "base.basis[" + std::to_string(i) + "]";
    builder.add_element(require_string(basis[i], "name", context),
                        require_int(basis[i], "degree", context));
  }
  builder.set_unit(require_string(base, "unit", "base"));
  if (auto it = base.find("products"); it != base.end()) {
    if (!it->is_array()) throw ParseError("base.products must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string context = "base.products[" + std::to_string(i) + "]";
      const json& product = (*it)[i];
      const json& result = require(product, "result", context);
      if (!result.is_array()) throw ParseError(context + ".result must be an array");
      std::vector<std::pair<std::string, Rational>> combo;
      for (std::size_t k = 0; k < result.size(); ++k) {
        const json& pair = result[k];
        const std::string pair_context = context + ".result[" + std::to_string(k) + "]";
        if (!pair.is_array() || pair.size() != 2)
          throw ParseError(pair_context + " must be a [coeff, name] pair");
        Rational coeff = coefficient_from(pair[0], pair_context + "[0]");
        if (!pair[1].is_string()) throw ParseError(pair_context + "[1] must be a name string");
        combo.emplace_back(pair[1].get<std::string>(), std::move(coeff));
      }
      builder.set_product(require_string(product, "left", context),
                          require_string(product, "right", context), std::move(combo));
    }
  }
  return builder.build();
}

inline std::vector<GeneratorSpec> generators_from(const json& generators, const std::string& context) {
  if (!generators.is_array()) throw ParseError(context + " must be an array");
  std::vector<GeneratorSpec> result;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const std::string item = context + "[" + std::to_string(i) + "]";
    result.push_back({require_string(generators[i], "name", item),
                      require_int(generators[i], "degree", item)});
  }
  return result;
}

inline std::vector<std::pair<std::string, Expression>> differential_from(const json& differential,
                                                                         const std::string& context) {
  if (!differential.is_array()) throw ParseError(context + " must be an array");
  std::vector<std::pair<std::string, Expression>> result;
  for (std::size_t i = 0; i < differential.size(); ++i) {
    const std::string item = context + "[" + std::to_string(i) + "]";
    result.emplace_back(require_string(differential[i], "on", item),
                        expression_from(require(differential[i], "value", item), item + ".value"));
  }
  return result;
}

inline CharacteristicData classes_from(const json& classes, const std::string& context) {
  if (!classes.is_array()) throw ParseError(context + " must be an array");
  CharacteristicData data;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const std::string item = context + "[" + std::to_string(i) + "]";
    CharacteristicPair pair;
    pair.degree = require_int(classes[i], "degree", item);
    if (auto it = classes[i].find("value"); it != classes[i].end())
      pair.value = expression_from(*it, item + ".value");
    data.push_back(std::move(pair));
  }
  return data;
}

inline ComplexSpec spec_from_model(const json& model, int max_degree) {
  const std::string name = require_string(model, "name", "model");
  auto degrees_of = [&]() {
    const json& degrees = require(model, "degrees", "model");
    if (!degrees.is_array()) throw ParseError("model.degrees must be an array of integers");
    std::vector<int> out;
    for (const auto& d : degrees) {
      if (!d.is_number_integer()) throw ParseError("model.degrees must be an array of integers");
      out.push_back(d.get<int>());
    }
    return out;
  };
  auto base_of = [&]() {
    BaseWithDifferential base;
    base.spec = base_from(require(model, "base", "model"));
    if (auto it = model.find("base_differential"); it != model.end())
      base.differential = differential_from(*it, "model.base_differential");
    return base;
  };

  if (name == "contractible") return contractible_model(degrees_of(), max_degree);
  if (name == "loop-space") return loop_space_model(degrees_of(), max_degree);
  if (name == "ghv-bundle")
    return ghv_bundle_model(base_of(), classes_from(require(model, "classes", "model"), "model.classes"),
                            max_degree);
  if (name == "loop-bundle")
    return loop_bundle_model(base_of(), classes_from(require(model, "classes", "model"), "model.classes"),
                             max_degree);
  if (name == "formal-loop-bundle")
    return formal_loop_bundle_model(base_of(),
                                    classes_from(require(model, "classes", "model"), "model.classes"),
                                    max_degree);
  if (name == "equivariant-loop-bundle")
    return equivariant_loop_bundle_model(
        base_of(),
        generators_from(require(model, "polynomial_generators", "model"), "model.polynomial_generators"),
        classes_from(require(model, "classes", "model"), "model.classes"), max_degree);
  throw ParseError("unknown model name '" + name + "'");
}

inline json expression_to_json(const GradedAlgebra& algebra, const Element& element) {
  json terms = json::array();
  for (const auto& t : element.terms) {
    json term;
    term["coeff"] = to_string(t.coeff);
    term["base"] = algebra.base.basis[t.base].name;
    json exponents = json::object();
    for (std::size_t k = 0; k < t.mono.exponents.size(); ++k)
      if (t.mono.exponents[k] > 0)
        exponents[algebra.generators[k].name] = t.mono.exponents[k];
    term["exponents"] = std::move(exponents);
    terms.push_back(std::move(term));
  }
  return terms;
}

}  // namespace io_detail

/**
 * Parses and validates a problem document. Throws ParseError for malformed
 * input, ValidationError when the described complex fails
 * check_differential (the report text is the exception message).
 */
inline ComplexSpec parse_problem(const std::string& text) {
  using nlohmann::json;
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("document is not valid JSON: ") + e.what());
  }
  if (!document.is_object()) throw ParseError("document must be a JSON object");
  const int max_degree = io_detail::require_int(document, "max_degree", "document");

  const bool has_model = document.contains("model");
  const bool has_raw = document.contains("base") || document.contains("generators") ||
                       document.contains("differential");
  if (has_model && has_raw)
    throw ParseError("document must supply either raw spec fields or a model block, not both");

  try {
    if (has_model) {
      ComplexSpec spec = io_detail::spec_from_model(document["model"], max_degree);
      return spec;  // constructors validate
    }
    BaseAlgebraSpec base = io_detail::base_from(io_detail::require(document, "base", "document"));
    std::vector<GeneratorSpec> generators = io_detail::generators_from(
        io_detail::require(document, "generators", "document"), "generators");
    std::vector<std::pair<std::string, Expression>> differential;
    if (auto it = document.find("differential"); it != document.end())
      differential = io_detail::differential_from(*it, "differential");
    ComplexSpec spec =
        make_complex(make_algebra(std::move(base), std::move(generators)), differential, max_degree);
    ValidationReport report = check_differential(spec);
    if (!report.ok()) throw ValidationError(report.summary());
    return spec;
  } catch (const std::invalid_argument& e) {
    // Symbol-table problems (duplicate names, unknown symbols, bad degrees)
    // describe an invalid complex, not unreadable input.
    throw ValidationError(e.what());
  }
}

/// Canonical serialization: raw fields (models are lowered), sorted keys,
/// two-space indent, trailing newline. parse_problem ∘ serialize_problem
/// is the identity on validated specs.
inline std::string serialize_problem(const ComplexSpec& spec) {
  using nlohmann::json;
  const GradedAlgebra& alg = spec.algebra;
  json document;

  json basis = json::array();
  for (const auto& b : alg.base.basis) basis.push_back({{"name", b.name}, {"degree", b.degree}});
  json products = json::array();
  for (std::size_t i = 0; i < alg.base.dim(); ++i)
    for (std::size_t j = 0; j < alg.base.dim(); ++j) {
      if (i == alg.base.unit || j == alg.base.unit) continue;  // forced by the unit law
      const auto& combo = alg.base.product(i, j);
      if (combo.empty()) continue;  // omitted products default to zero
      json result = json::array();
      for (const auto& [k, coeff] : combo)
        result.push_back({to_string(coeff), alg.base.basis[k].name});
      products.push_back({{"left", alg.base.basis[i].name},
                          {"right", alg.base.basis[j].name},
                          {"result", std::move(result)}});
    }
  document["base"] = {{"basis", std::move(basis)},
                      {"unit", alg.base.basis[alg.base.unit].name},
                      {"products", std::move(products)}};

  json generators = json::array();
  for (const auto& g : alg.generators) generators.push_back({{"name", g.name}, {"degree", g.degree}});
  document["generators"] = std::move(generators);

  json differential = json::array();
  for (std::size_t i = 0; i < alg.base.dim(); ++i)
    if (!spec.base_d[i].is_zero())
      differential.push_back({{"on", alg.base.basis[i].name},
                              {"value", io_detail::expression_to_json(alg, spec.base_d[i])}});
  for (std::size_t k = 0; k < alg.generators.size(); ++k)
    if (!spec.generator_d[k].is_zero())
      differential.push_back({{"on", alg.generators[k].name},
                              {"value", io_detail::expression_to_json(alg, spec.generator_d[k])}});
  document["differential"] = std::move(differential);
  document["max_degree"] = spec.max_degree;
  return document.dump(2) + "\n";
}

/// Output formats shared by the reporting subcommands.
enum class OutputFormat { table, json, csv };

inline OutputFormat parse_format(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw ParseError("unknown format '" + name + "' (expected table, json, or csv)");
}

inline std::string format_betti(const std::map<int, std::size_t>& betti, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::table: {
      os << std::setw(6) << "degree" << std::setw(8) << "betti" << "\n";
      for (const auto& [n, b] : betti) os << std::setw(6) << n << std::setw(8) << b << "\n";
      break;
    }
    case OutputFormat::json: {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& [n, b] : betti) rows.push_back({n, b});
      os << nlohmann::json{{"betti", std::move(rows)}}.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv: {
      os << "degree,betti\n";
      for (const auto& [n, b] : betti) os << n << "," << b << "\n";
      break;
    }
  }
  return os.str();
}

inline std::string format_dimensions(const std::vector<std::size_t>& dims, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::table: {
      os << std::setw(6) << "degree" << std::setw(10) << "dim" << "\n";
      for (std::size_t n = 0; n < dims.size(); ++n)
        os << std::setw(6) << n << std::setw(10) << dims[n] << "\n";
      break;
    }
    case OutputFormat::json: {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t n = 0; n < dims.size(); ++n) rows.push_back({n, dims[n]});
      os << nlohmann::json{{"dimensions", std::move(rows)}}.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv: {
      os << "degree,dimension\n";
      for (std::size_t n = 0; n < dims.size(); ++n) os << n << "," << dims[n] << "\n";
      break;
    }
  }
  return os.str();
}

namespace io_detail {

inline std::string class_label(int degree, std::size_t index) {
  return "[" + std::to_string(degree) + "." + std::to_string(index) + "]";
}

inline std::string combination_label(const std::vector<Rational>& coefficients, int degree) {
  std::string out;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (coefficients[i] != 1) out += to_string(coefficients[i]) + "*";
    out += class_label(degree, i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace io_detail

inline std::string format_ring(const GradedAlgebra& algebra, const CohomologyResult& result,
                               OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::table: {
      os << "cohomology through degree " << result.max_reliable_degree << "\n";
      for (const auto& [n, reps] : result.representatives) {
        os << "degree " << n << ": betti " << result.betti.at(n) << "\n";
        for (std::size_t i = 0; i < reps.size(); ++i)
          os << "  " << io_detail::class_label(n, i) << " = " << to_string(algebra, reps[i]) << "\n";
      }
      os << "products:\n";
      for (const auto& [key, coefficients] : result.ring_constants)
        os << "  " << io_detail::class_label(key[0], key[1]) << "*"
           << io_detail::class_label(key[2], key[3]) << " = "
           << io_detail::combination_label(coefficients, key[0] + key[2]) << "\n";
      for (const auto& key : result.unknown_products)
        os << "  " << io_detail::class_label(key[0], key[1]) << "*"
           << io_detail::class_label(key[2], key[3]) << " = ? (degree "
           << key[0] + key[2] << " beyond window)\n";
      break;
    }
    case OutputFormat::json: {
      nlohmann::json document;
      nlohmann::json betti_rows = nlohmann::json::array();
      for (const auto& [n, b] : result.betti) betti_rows.push_back({n, b});
      document["betti"] = std::move(betti_rows);
      document["max_reliable_degree"] = result.max_reliable_degree;
      nlohmann::json reps = nlohmann::json::array();
      for (const auto& [n, elements] : result.representatives)
        for (std::size_t i = 0; i < elements.size(); ++i)
          reps.push_back({{"degree", n},
                          {"index", i},
                          {"element", io_detail::expression_to_json(algebra, elements[i])}});
      document["representatives"] = std::move(reps);
      nlohmann::json products = nlohmann::json::array();
      for (const auto& [key, coefficients] : result.ring_constants) {
        nlohmann::json coeff_rows = nlohmann::json::array();
        for (const auto& c : coefficients) coeff_rows.push_back(to_string(c));
        products.push_back({{"left", {key[0], key[1]}},
                            {"right", {key[2], key[3]}},
                            {"coefficients", std::move(coeff_rows)}});
      }
      document["products"] = std::move(products);
      nlohmann::json unknown = nlohmann::json::array();
      for (const auto& key : result.unknown_products)
        unknown.push_back({key[0], key[1], key[2], key[3]});
      document["unknown_products"] = std::move(unknown);
      os << document.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv: {
      os << "left_degree,left_index,right_degree,right_index,target_index,coefficient\n";
      for (const auto& [key, coefficients] : result.ring_constants)
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
          if (coefficients[i] == 0) continue;
          os << key[0] << "," << key[1] << "," << key[2] << "," << key[3] << "," << i << ","
             << to_string(coefficients[i]) << "\n";
        }
      break;
    }
  }
  return os.str();
}

}  // namespace cochains
