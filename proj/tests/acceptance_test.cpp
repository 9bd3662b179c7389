// Acceptance suite: demonstrates the advertised behaviors end to end and
// prints one [PASS]/[FAIL] line per criterion. Exits nonzero if any fail.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cochains/cli.hpp"
#include "cochains/cohomology.hpp"
#include "cochains/models.hpp"
#include "cochains/oracle.hpp"
#include "test_support.hpp"

using namespace cochains;

namespace {

int failures = 0;

void report(int index, const std::string& label, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << index << ": " << label;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!pass) ++failures;
}

void run_criterion(int index, const std::string& label, bool (*body)(std::string&)) {
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("unexpected exception: ") + e.what();
  }
  report(index, label, pass, detail);
}

struct Command {
  int code = -1;
  std::string out;
};

Command run_command(const std::string& command) {
  Command result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, n);
  const int status = pclose(pipe);
  if (status >= 0 && WIFEXITED(status)) result.code = WEXITSTATUS(status);
  return result;
}

std::string cli_path() { return COCHAINS_CLI_PATH; }

std::string write_temp_document(const std::string& tag, const std::string& text) {
  std::string path =
      "/tmp/cochains-acceptance-" + std::to_string(getpid()) + "-" + tag + ".json";
  std::ofstream(path) << text;
  return path;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string alternating_csv(int up_to) {
  std::string expected = "degree,betti\n";
  for (int n = 0; n <= up_to; ++n)
    expected += std::to_string(n) + "," + (n % 2 == 0 ? "1" : "0") + "\n";
  return expected;
}

std::size_t two_variable_count(int p, int q, int n) {
  std::size_t count = 0;
  for (int a = 0; p * a <= n; ++a)
    if ((n - p * a) % q == 0) ++count;
  return count;
}

/// Stored ring constants must satisfy C(a,b) = (−1)^{|a||b|} C(b,a).
bool constants_commute(const CohomologyResult& result) {
  for (const auto& [key, constants] : result.ring_constants) {
    auto it = result.ring_constants.find({key[2], key[3], key[0], key[1]});
    if (it == result.ring_constants.end()) return false;
    const Rational sign = ((key[0] & 1) && (key[2] & 1)) ? -1 : 1;
    if (constants.size() != it->second.size()) return false;
    for (std::size_t i = 0; i < constants.size(); ++i)
      if (constants[i] != sign * it->second[i]) return false;
  }
  return true;
}

/// Σ_m C(a,b)_m C((deg ab, m), c)_t = Σ_m C(b,c)_m C(a, (deg bc, m))_t for
/// every triple whose pairwise and total degrees stay inside the window.
bool constants_associate(const CohomologyResult& result, int window) {
  std::vector<std::pair<int, int>> classes;  // (degree, index)
  for (const auto& [degree, count] : result.betti)
    for (std::size_t i = 0; i < count; ++i) classes.emplace_back(degree, static_cast<int>(i));
  auto constants = [&](int d1, int i1, int d2,
                       int i2) -> const std::vector<Rational>* {
    auto it = result.ring_constants.find({d1, i1, d2, i2});
    return it == result.ring_constants.end() ? nullptr : &it->second;
  };
  for (const auto& [p, i] : classes)
    for (const auto& [q, j] : classes)
      for (const auto& [r, k] : classes) {
        if (p + q > window || q + r > window || p + q + r > window) continue;
        const std::size_t width = result.betti.count(p + q + r) ? result.betti.at(p + q + r) : 0;
        std::vector<Rational> lhs(width, Rational(0)), rhs(width, Rational(0));
        if (const auto* ab = constants(p, i, q, j))
          for (std::size_t m = 0; m < ab->size(); ++m) {
            if ((*ab)[m] == 0) continue;
            const auto* abc = constants(p + q, static_cast<int>(m), r, k);
            if (!abc) return false;
            for (std::size_t t = 0; t < width; ++t) lhs[t] += (*ab)[m] * (*abc)[t];
          }
        if (const auto* bc = constants(q, j, r, k))
          for (std::size_t m = 0; m < bc->size(); ++m) {
            if ((*bc)[m] == 0) continue;
            const auto* abc = constants(p, i, q + r, static_cast<int>(m));
            if (!abc) return false;
            for (std::size_t t = 0; t < width; ++t) rhs[t] += (*bc)[m] * (*abc)[t];
          }
        if (lhs != rhs) return false;
      }
  return true;
}

/// Rank-nullity bookkeeping plus dual-backend agreement on one instance.
bool audit_instance(const ComplexSpec& spec, int window, std::string& detail) {
  auto b = betti(spec, window);
  long long previous_rank = 0;
  for (int n = 0; n <= window; ++n) {
    SparseMatrix d = matrix_of_d(spec, n);
    const std::size_t by_markowitz = rank_sparse(d);
    const std::size_t by_bareiss = rank_bareiss(d);
    if (by_markowitz != by_bareiss) {
      detail = "rank backends disagree at degree " + std::to_string(n);
      return false;
    }
    const std::size_t dim = enumerate_basis(spec, n).size();
    if (kernel_basis(d).size() + by_markowitz != dim) {
      detail = "rank-nullity fails at degree " + std::to_string(n);
      return false;
    }
    const long long betti_n =
        static_cast<long long>(dim) - static_cast<long long>(by_markowitz) - previous_rank;
    if (betti_n < 0 || static_cast<long long>(b.at(n)) != betti_n) {
      detail = "betti bookkeeping fails at degree " + std::to_string(n);
      return false;
    }
    previous_rank = static_cast<long long>(by_markowitz);
  }
  return true;
}

bool criterion_1(std::string& detail) {
  const std::string expected = alternating_csv(20);
  const std::string cli = "'" + cli_path() + "'";
  const auto start = std::chrono::steady_clock::now();
  Command direct = run_command(cli + " example su3-so3 --max-degree 20 --format csv");
  Command piped =
      run_command(cli + " example su3-so3 --emit | " + cli + " betti - --max-degree 20 --format csv");
  const double elapsed = seconds_since(start);
  std::ostringstream note;
  note << "two CLI runs in " << elapsed << " s";
  detail = note.str();
  if (direct.code != 0 || direct.out != expected) {
    detail = "direct run: exit " + std::to_string(direct.code);
    return false;
  }
  if (piped.code != 0 || piped.out != expected) {
    detail = "piped run: exit " + std::to_string(piped.code);
    return false;
  }
  return elapsed < 10.0;
}

bool criterion_2(std::string& detail) {
  ComplexSpec spec = su3_so3_example(20);
  if (!representatives(spec, 5).empty()) {
    detail = "H^5 is not zero";
    return false;
  }
  const GradedAlgebra& alg = spec.algebra;
  for (int p = 0; 2 * p <= 18; ++p)
    for (int q = 0; 2 * p + 4 * q <= 18; ++q) {
      std::vector<std::pair<std::string, int>> exponents;
      if (p > 0) exponents.emplace_back("y2", p);
      if (q > 0) exponents.emplace_back("y4", q);
      Element image = apply_d(spec, make_term(alg, Rational(1), "1", exponents));
      Element expected = Element::zero();
      if (q > 0) {
        std::vector<std::pair<std::string, int>> shifted;
        if (p > 0) shifted.emplace_back("y2", p);
        if (q > 1) shifted.emplace_back("y4", q - 1);
        expected = make_term(alg, Rational(q), "x5", shifted);
      }
      if (image != expected) {
        detail = "d(y2^" + std::to_string(p) + " y4^" + std::to_string(q) + ") is wrong";
        return false;
      }
    }
  return true;
}

bool criterion_3(std::string& detail) {
  auto b = betti(contractible_model({3, 5}, 18), 16);
  for (int n = 0; n <= 16; ++n)
    if (b.at(n) != (n == 0 ? 1u : 0u)) {
      detail = "betti[" + std::to_string(n) + "] = " + std::to_string(b.at(n));
      return false;
    }
  return true;
}

bool criterion_4(std::string& detail) {
  auto one = betti(loop_space_model({3}, 21), 20);
  auto two = betti(loop_space_model({3, 5}, 21), 20);
  for (int n = 0; n <= 20; ++n) {
    if (one.at(n) != (n % 2 == 0 ? 1u : 0u)) {
      detail = "one-variable betti[" + std::to_string(n) + "] wrong";
      return false;
    }
    if (two.at(n) != two_variable_count(2, 4, n)) {
      detail = "two-variable betti[" + std::to_string(n) + "] wrong";
      return false;
    }
  }
  return true;
}

bool criterion_5(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20250819);
  for (int trial = 0; trial < 100; ++trial) {
    ComplexSpec spec = test_support::random_spec(rng);
    if (betti(spec, 9) != dense_betti(spec, 9)) {
      detail = "mismatch on trial " + std::to_string(trial);
      return false;
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream note;
  note << "100 specs in " << elapsed << " s";
  detail = note.str();
  return elapsed < 60.0;
}

bool criterion_6(std::string& detail) {
  const auto baseline = betti(su3_so3_example(21), 20);

  // Scaling the surviving class by a nonzero rational.
  BaseAlgebraBuilder builder;
  builder.add_element("1", 0).add_element("x5", 5).set_unit("1");
  builder.set_product("x5", "x5", {});
  BaseWithDifferential formal_base{builder.build(), {}};
  for (const Rational& lambda : {Rational(7) / 3, Rational(-2)}) {
    ComplexSpec scaled = formal_loop_bundle_model(
        formal_base, {{3, {}}, {5, {{lambda, "x5", {}}}}}, 21);
    if (betti(scaled, 20) != baseline) {
      detail = "scaling by " + to_string(lambda) + " changed the betti table";
      return false;
    }
  }

  // Shifting the class by an exact term over a base with d(a4) = b5.
  BaseAlgebraBuilder shifted;
  shifted.add_element("1", 0).add_element("a4", 4).add_element("b5", 5).add_element("x5", 5);
  shifted.set_unit("1");
  shifted.set_product("a4", "a4", {}).set_product("a4", "b5", {}).set_product("a4", "x5", {});
  shifted.set_product("b5", "b5", {}).set_product("b5", "x5", {}).set_product("x5", "x5", {});
  BaseWithDifferential live_base{shifted.build(), {{"a4", {{Rational(1), "b5", {}}}}}};
  ComplexSpec plain = loop_bundle_model(
      live_base, {{3, {}}, {5, {{Rational(1), "x5", {}}}}}, 21);
  ComplexSpec moved = loop_bundle_model(
      live_base, {{3, {}}, {5, {{Rational(1), "x5", {}}, {Rational(1), "b5", {}}}}}, 21);
  if (betti(plain, 20) != betti(moved, 20)) {
    detail = "adding an exact term changed the betti table";
    return false;
  }
  return true;
}

bool criterion_7(std::string& detail) {
  ComplexSpec spec = su3_so3_example(19);
  CohomologyResult result = ring_structure(spec, 18);
  for (int k = 1; 2 * k <= 18; ++k) {
    const auto& reps = result.representatives.at(2 * k);
    if (reps.size() != 1 ||
        reps[0] != resolve(spec.algebra, {{Rational(1), "1", {{"y2", k}}}})) {
      detail = "H^" + std::to_string(2 * k) + " representative is not y2^" + std::to_string(k);
      return false;
    }
    const auto& constants = result.ring_constants.at({2, 0, 2 * (k - 1), 0});
    if (constants != std::vector<Rational>{Rational(1)}) {
      detail = "[y2]*[y2^" + std::to_string(k - 1) + "] has the wrong constant";
      return false;
    }
  }
  if (!constants_commute(result)) {
    detail = "ring constants are not graded-commutative";
    return false;
  }
  if (!constants_associate(result, 18)) {
    detail = "ring constants are not associative";
    return false;
  }
  return true;
}

bool criterion_8(std::string& detail) {
  struct Case {
    const char* tag;
    const char* code;
    const char* symbol;
    const char* document;
  };
  const Case cases[] = {
      {"homogeneity", "homogeneity", "y2", R"({
        "max_degree": 10,
        "base": {
          "basis": [{"name": "1", "degree": 0}, {"name": "x5", "degree": 5}],
          "unit": "1",
          "products": [{"left": "x5", "right": "x5", "result": []}]
        },
        "generators": [{"name": "y2", "degree": 2}],
        "differential": [{"on": "y2", "value": [{"coeff": 1, "base": "x5"}]}]
      })"},
      {"d-squared", "d-squared", "a2", R"({
        "max_degree": 10,
        "base": {"basis": [{"name": "1", "degree": 0}], "unit": "1"},
        "generators": [{"name": "a2", "degree": 2}, {"name": "b3", "degree": 3}],
        "differential": [
          {"on": "a2", "value": [{"coeff": 1, "base": "1", "exponents": {"b3": 1}}]},
          {"on": "b3", "value": [{"coeff": 1, "base": "1", "exponents": {"a2": 2}}]}
        ]
      })"},
      {"leibniz", "leibniz", "u2*u2", R"({
        "max_degree": 10,
        "base": {
          "basis": [{"name": "1", "degree": 0}, {"name": "u2", "degree": 2},
                    {"name": "u4", "degree": 4}, {"name": "v5", "degree": 5}],
          "unit": "1",
          "products": [{"left": "u2", "right": "u2", "result": [["1", "u4"]]}]
        },
        "generators": [],
        "differential": [{"on": "u4", "value": [{"coeff": 1, "base": "v5"}]}]
      })"},
  };
  const std::string cli = "'" + cli_path() + "'";
  for (const Case& c : cases) {
    const std::string path = write_temp_document(c.tag, c.document);
    Command result = run_command(cli + " check '" + path + "'");
    std::remove(path.c_str());
    if (result.code != 1) {
      detail = std::string(c.tag) + ": exit code " + std::to_string(result.code);
      return false;
    }
    if (result.out.find("[" + std::string(c.code) + "]") == std::string::npos ||
        result.out.find(c.symbol) == std::string::npos) {
      detail = std::string(c.tag) + ": offending symbol not named";
      return false;
    }
  }
  return true;
}

bool criterion_9(std::string& detail) {
  for (const auto& name : fixture_names()) {
    ComplexSpec spec = make_fixture(name, 9);
    if (!audit_instance(spec, 8, detail)) {
      detail = name + ": " + detail;
      return false;
    }
  }
  return audit_instance(su3_so3_example(21), 20, detail);
}

bool criterion_10(std::string& detail) {
  ComplexSpec spec = make_fixture("equivariant-point-su2", 21);
  auto engine = betti(spec, 20);
  for (int n = 0; n <= 20; ++n)
    if (engine.at(n) != two_variable_count(4, 2, n)) {
      detail = "betti[" + std::to_string(n) + "] = " + std::to_string(engine.at(n));
      return false;
    }
  if (dense_betti(spec, 20) != engine) {
    detail = "oracle disagrees";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  run_criterion(1, "worked-example Betti numbers through the CLI", criterion_1);
  run_criterion(2, "boundary structure of the worked example", criterion_2);
  run_criterion(3, "contractible models are acyclic", criterion_3);
  run_criterion(4, "loop-space models are free polynomial rings", criterion_4);
  run_criterion(5, "engine matches the dense oracle on 100 random specs", criterion_5);
  run_criterion(6, "Betti tables ignore scaling and exact shifts of the classes", criterion_6);
  run_criterion(7, "powers of [y2] generate the worked example's ring", criterion_7);
  run_criterion(8, "validation names the offending symbol and exits 1", criterion_8);
  run_criterion(9, "rank-nullity audit with both elimination backends", criterion_9);
  run_criterion(10, "equivariant fixture matches monomial counts and the oracle", criterion_10);

  if (failures == 0) {
    std::cout << "all criteria passed" << std::endl;
    return 0;
  }
  std::cout << failures << " criteria failed" << std::endl;
  return 1;
}
