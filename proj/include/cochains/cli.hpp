#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cochains/cohomology.hpp"
#include "cochains/models.hpp"
#include "cochains/oracle.hpp"
#include "cochains/problem_io.hpp"

namespace cochains {

/*
 * Command-line front end. Results go to the output stream, diagnostics to
 * the error stream, and the exit code encodes the failure class:
 *   0 success, 1 validation failure, 2 parse error (document or argument),
 *   3 engine/oracle mismatch, 4 resource cap exceeded.
 */

namespace cli_detail {

inline std::string read_input(const std::string& file, std::istream& in) {
  if (file == "-") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream stream(file);
  if (!stream) throw ParseError("cannot open '" + file + "'");
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

/// Engine limits, honoring the COCHAINS_MAX_BASIS override.
inline EngineLimits limits_from_environment(std::ostream& err) {
  EngineLimits limits;
  if (const char* value = std::getenv("COCHAINS_MAX_BASIS")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(value, &end, 10);
    if (end == value || *end != '\0' || parsed == 0)
      err << "warning: ignoring invalid COCHAINS_MAX_BASIS value '" << value << "'\n";
    else
      limits.max_basis_entries = static_cast<std::size_t>(parsed);
  }
  return limits;
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"exact cohomology of differential graded algebra presentations"};
  app.name("cochains");
  app.require_subcommand(1);

  std::string file = "-";
  int max_degree = 20;
  std::string format_name = "table";
  std::string fixture;
  bool emit = false;

  CLI::App* check = app.add_subcommand("check", "validate a problem document");
  check->add_option("file", file, "problem document, or - for stdin");

  CLI::App* betti_cmd = app.add_subcommand("betti", "Betti numbers of a problem document");
  betti_cmd->add_option("file", file, "problem document, or - for stdin");
  betti_cmd->add_option("--max-degree", max_degree, "highest degree to report")->required();
  betti_cmd->add_option("--format", format_name, "table, json, or csv");

  CLI::App* ring = app.add_subcommand("ring", "representatives and ring structure");
  ring->add_option("file", file, "problem document, or - for stdin");
  ring->add_option("--max-degree", max_degree, "highest degree to report")->required();
  ring->add_option("--format", format_name, "table, json, or csv");

  CLI::App* dims = app.add_subcommand("dims", "per-degree dimensions of the complex");
  dims->add_option("file", file, "problem document, or - for stdin");
  dims->add_option("--max-degree", max_degree, "highest degree to report")->required();
  dims->add_option("--format", format_name, "table, json, or csv");

  CLI::App* example = app.add_subcommand("example", "run or emit a built-in fixture");
  example->add_option("name", fixture, "fixture name; an unknown name prints the available fixtures")
      ->required();
  example->add_flag("--emit", emit, "print the fixture's problem document instead of running it");
  example->add_option("--max-degree", max_degree, "highest degree to compute (default 20)");
  example->add_option("--format", format_name, "table, json, or csv");

  CLI::App* verify = app.add_subcommand("verify", "compare the engine against the dense oracle");
  verify->add_option("file", file, "problem document, or - for stdin");
  verify->add_option("--max-degree", max_degree, "highest degree to compare")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;  // help/version exit cleanly; bad arguments are parse errors
  }

  const EngineLimits limits = cli_detail::limits_from_environment(err);
  try {
    if (app.got_subcommand(check)) {
      try {
        parse_problem(cli_detail::read_input(file, in));
      } catch (const ValidationError& e) {
        out << e.what();
        return 1;
      }
      out << "ok\n";
      return 0;
    }
    if (app.got_subcommand(betti_cmd)) {
      ComplexSpec spec = parse_problem(cli_detail::read_input(file, in));
      out << format_betti(betti(spec, max_degree, limits), parse_format(format_name));
      return 0;
    }
    if (app.got_subcommand(ring)) {
      ComplexSpec spec = parse_problem(cli_detail::read_input(file, in));
      out << format_ring(spec.algebra, ring_structure(spec, max_degree, limits),
                         parse_format(format_name));
      return 0;
    }
    if (app.got_subcommand(dims)) {
      ComplexSpec spec = parse_problem(cli_detail::read_input(file, in));
      out << format_dimensions(dimensions(spec, max_degree, limits), parse_format(format_name));
      return 0;
    }
    if (app.got_subcommand(example)) {
      const auto names = fixture_names();
      if (std::find(names.begin(), names.end(), fixture) == names.end()) {
        err << "error: unknown fixture '" << fixture << "'; available:";
        for (const auto& name : names) err << " " << name;
        err << "\n";
        return 2;
      }
      ComplexSpec spec = make_fixture(fixture, max_degree + 1);
      if (emit)
        out << serialize_problem(spec);
      else
        out << format_betti(betti(spec, max_degree, limits), parse_format(format_name));
      return 0;
    }
    if (app.got_subcommand(verify)) {
      ComplexSpec spec = parse_problem(cli_detail::read_input(file, in));
      const auto engine = betti(spec, max_degree, limits);
      const auto dense = dense_betti(spec, max_degree);
      if (engine == dense) {
        out << "engine and oracle agree through degree " << max_degree << "\n";
        return 0;
      }
      out << "engine and oracle disagree:\n";
      out << std::setw(6) << "degree" << std::setw(8) << "engine" << std::setw(8) << "oracle"
          << "\n";
      for (int n = 0; n <= max_degree; ++n)
        out << std::setw(6) << n << std::setw(8) << engine.at(n) << std::setw(8) << dense.at(n)
            << "\n";
      return 3;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: invalid complex\n" << e.what();
    return 1;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const OracleCapError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // unreachable: require_subcommand guarantees a branch above
}

}  // namespace cochains
