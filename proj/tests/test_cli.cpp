#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cochains/cli.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  CliRun result;
  result.code = cochains::run_cli(std::move(args), in, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

const char* kRankOneDocument = R"({
  "max_degree": 12,
  "base": {
    "basis": [{"name": "1", "degree": 0}, {"name": "x5", "degree": 5}],
    "unit": "1",
    "products": [{"left": "x5", "right": "x5", "result": []}]
  },
  "generators": [{"name": "y2", "degree": 2}, {"name": "y4", "degree": 4}],
  "differential": [{"on": "y4", "value": [{"coeff": "1", "base": "x5"}]}]
})";

}  // namespace

TEST_CASE("check accepts valid documents and reports invalid ones") {
  CliRun ok = run({"check", "-"}, kRankOneDocument);
  REQUIRE(ok.code == 0);
  REQUIRE(ok.out == "ok\n");

  CliRun invalid = run({"check", "-"}, R"({
    "max_degree": 10,
    "base": {"basis": [{"name": "1", "degree": 0}], "unit": "1"},
    "generators": [{"name": "a2", "degree": 2}, {"name": "b3", "degree": 3}],
    "differential": [
      {"on": "a2", "value": [{"coeff": 1, "base": "1", "exponents": {"b3": 1}}]},
      {"on": "b3", "value": [{"coeff": 1, "base": "1", "exponents": {"a2": 2}}]}
    ]
  })");
  REQUIRE(invalid.code == 1);
  REQUIRE(invalid.out.find("d-squared") != std::string::npos);
  REQUIRE(invalid.out.find("a2") != std::string::npos);

  CliRun malformed = run({"check", "-"}, "{ not json");
  REQUIRE(malformed.code == 2);
  REQUIRE(malformed.err.find("error:") != std::string::npos);
}

TEST_CASE("betti subcommand computes from stdin documents") {
  CliRun result = run({"betti", "-", "--max-degree", "6", "--format", "csv"}, kRankOneDocument);
  REQUIRE(result.code == 0);
  REQUIRE(result.out == "degree,betti\n0,1\n1,0\n2,1\n3,0\n4,1\n5,0\n6,1\n");
}

TEST_CASE("dims subcommand reports per-degree dimensions") {
  CliRun result = run({"dims", "-", "--max-degree", "6", "--format", "csv"}, kRankOneDocument);
  REQUIRE(result.code == 0);
  REQUIRE(result.out == "degree,dimension\n0,1\n1,0\n2,1\n3,0\n4,2\n5,1\n6,2\n");
}

TEST_CASE("ring subcommand prints class tables") {
  CliRun result = run({"ring", "-", "--max-degree", "6"}, kRankOneDocument);
  REQUIRE(result.code == 0);
  REQUIRE(result.out.find("products:") != std::string::npos);
  REQUIRE(result.out.find("[2.0] = y2") != std::string::npos);
}

TEST_CASE("example runs fixtures and emits their documents") {
  CliRun direct = run({"example", "su3-so3", "--max-degree", "6", "--format", "csv"});
  REQUIRE(direct.code == 0);
  REQUIRE(direct.out == "degree,betti\n0,1\n1,0\n2,1\n3,0\n4,1\n5,0\n6,1\n");

  CliRun emitted = run({"example", "su3-so3", "--emit", "--max-degree", "6"});
  REQUIRE(emitted.code == 0);
  // The emitted document feeds straight back into the other subcommands.
  CliRun through = run({"betti", "-", "--max-degree", "6", "--format", "csv"}, emitted.out);
  REQUIRE(through.code == 0);
  REQUIRE(through.out == direct.out);

  CliRun unknown = run({"example", "so-what"});
  REQUIRE(unknown.code == 2);
  REQUIRE(unknown.err.find("unknown fixture") != std::string::npos);
  REQUIRE(unknown.err.find("su3-so3") != std::string::npos);

  for (const auto& name : cochains::fixture_names()) {
    CliRun each = run({"example", name, "--max-degree", "8"});
    INFO("fixture " << name);
    REQUIRE(each.code == 0);
  }
}

TEST_CASE("verify compares the engine against the oracle") {
  CliRun result = run({"verify", "-", "--max-degree", "8"}, kRankOneDocument);
  REQUIRE(result.code == 0);
  REQUIRE(result.out.find("agree") != std::string::npos);
}

TEST_CASE("argument errors exit with the parse-error code") {
  REQUIRE(run({}).code == 2);
  REQUIRE(run({"betti", "-"}).code == 2);  // missing required --max-degree
  REQUIRE(run({"frobnicate"}).code == 2);
  REQUIRE(run({"--help"}).code == 0);
  REQUIRE(run({"betti", "/no/such/file.json", "--max-degree", "4"}).code == 2);
  REQUIRE(run({"example", "su3-so3", "--max-degree", "4", "--format", "yaml"}).code == 2);
}

TEST_CASE("window and validation errors exit with code 1") {
  CliRun window = run({"betti", "-", "--max-degree", "12"}, kRankOneDocument);
  REQUIRE(window.code == 1);
  REQUIRE(window.err.find("truncation too small") != std::string::npos);

  CliRun invalid = run({"betti", "-", "--max-degree", "2"}, R"({
    "max_degree": 4,
    "base": {"basis": [{"name": "1", "degree": 0}], "unit": "1"},
    "generators": [{"name": "1", "degree": 2}]
  })");
  REQUIRE(invalid.code == 1);
}

TEST_CASE("resource caps exit with code 4 and honor the environment override") {
  REQUIRE(setenv("COCHAINS_MAX_BASIS", "2", 1) == 0);
  CliRun capped = run({"example", "su3-so3", "--max-degree", "10"});
  REQUIRE(capped.code == 4);
  REQUIRE(capped.err.find("error:") != std::string::npos);

  REQUIRE(setenv("COCHAINS_MAX_BASIS", "not-a-number", 1) == 0);
  CliRun warned = run({"example", "su3-so3", "--max-degree", "6"});
  REQUIRE(warned.code == 0);
  REQUIRE(warned.err.find("warning") != std::string::npos);

  REQUIRE(unsetenv("COCHAINS_MAX_BASIS") == 0);
  REQUIRE(run({"example", "su3-so3", "--max-degree", "10"}).code == 0);
}
