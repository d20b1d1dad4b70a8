#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "doctest.h"
#include "ortho/errors.hpp"
#include "ortho/formats.hpp"
#include "ortho/orthogonality.hpp"
#include "ortho/report.hpp"
#include "ortho/suites.hpp"

using namespace ortho;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// run the installed binary through the shell, capturing streams to temp files
int run_cli(const std::string& args, std::string* out = nullptr,
            std::string* err = nullptr) {
  std::string cmd = std::string(ORTHO_CLI_PATH) + " " + args;
  cmd += out ? " > cli_out.tmp" : " > /dev/null";
  cmd += err ? " 2> cli_err.tmp" : " 2> /dev/null";
  int rc = std::system(cmd.c_str());
  if (out) *out = slurp("cli_out.tmp");
  if (err) *err = slurp("cli_err.tmp");
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// drop the one line that may differ between identical runs
std::string without_elapsed(std::string text) {
  auto pos = text.find("\"elapsed_ms\"");
  if (pos == std::string::npos) return text;
  auto begin = text.rfind('\n', pos);
  auto end = text.find('\n', pos);
  text.erase(begin + 1, end - begin);
  return text;
}

ReportDocument demo_doc() {
  ReportDocument doc;
  doc.suite = "demo";
  doc.anchor = "a claim under test";
  doc.config = config_defaults();
  doc.config.suite = "demo";
  CheckRecord pass;
  pass.name = "alpha";
  pass.status = CheckStatus::Pass;
  pass.measured = 0.1234567890123456;
  pass.bound = 1.0;
  pass.witness = "say \"hi\"";
  CheckRecord fail;
  fail.name = "beta";
  fail.status = CheckStatus::Fail;
  fail.measured = 2.0;
  fail.bound = 1.0;
  CheckRecord skip;
  skip.name = "gamma";
  skip.status = CheckStatus::Skip;
  skip.witness = "not applicable here";
  doc.checks = {pass, fail, skip};
  doc.elapsed_ms = 17.25;
  return doc;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("space descriptors round-trip through their text form") {
  for (const char* d : {"lp:1:2", "lp:3:4", "lp:1.5:2", "lp:inf:3", "euclidean:3",
                        "poly:2:[1,0;0,1;1,1]",
                        "poly:3:[1,0,0;0,1,0;0,0,1;1,1,1]"}) {
    CAPTURE(d);
    CHECK(parse_space(d).describe() == d);
  }
  // p beyond the double-precision cutoff collapses to the sup norm
  CHECK(parse_space("lp:100:2").describe() == "lp:inf:2");
  for (const char* bad : {"lp:0.5:2", "lp:2:0", "euclidean:0", "euclidean:x",
                          "poly:2:1,0;0,1", "poly:2:[1,0]", "poly:2:[1,0;2,0]",
                          "cube:2", "lp:2", ""}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_space(bad), std::invalid_argument);
  }
}

TEST_CASE("vectors and matrices round-trip") {
  Vector v = parse_vector("0.5,-1,3");
  CHECK(v.dim() == 3);
  CHECK(v[0] == 0.5);
  CHECK(v[2] == 3.0);
  CHECK(format_vector(v) == "0.5,-1,3");
  CHECK_THROWS_AS(parse_vector("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_vector("1,two"), std::invalid_argument);

  MatrixText m = parse_matrix("1,2;0,1");
  CHECK(m.rows == 2);
  CHECK(m.cols == 2);
  CHECK(m.column_major == std::vector<double>{1, 0, 2, 1});
  CHECK(format_matrix(m.rows, m.cols, m.column_major) == "1,2;0,1");
  MatrixText wide = parse_matrix("1,2,3");
  CHECK(wide.rows == 1);
  CHECK(wide.cols == 3);
  CHECK_THROWS_AS(parse_matrix("1,2;3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_matrix(""), std::invalid_argument);
}

TEST_CASE("relation tags parse with their parameters") {
  CHECK(parse_relation("birkhoff").tag == RelationTag::Birkhoff);
  CHECK(parse_relation("isosceles").tag == RelationTag::Isosceles);
  CHECK(parse_relation("unit-isosceles").tag == RelationTag::UnitIsosceles);
  CHECK(parse_relation("roberts").tag == RelationTag::Roberts);
  OrthoRelation d = parse_relation("dragomir:0.3");
  CHECK(d.tag == RelationTag::Dragomir);
  CHECK(d.eps == 0.3);
  CHECK(d.name() == "dragomir:0.3");
  OrthoRelation c = parse_relation("chmielinski:0.2");
  CHECK(c.tag == RelationTag::Chmielinski);
  CHECK(c.eps == 0.2);
  for (const char* bad : {"dragomir", "dragomir:1", "dragomir:-0.1", "chmielinski:1.5",
                          "frobenius", "birkhoff:0.1", ""}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_relation(bad), std::invalid_argument);
  }
}

TEST_CASE("config defaults, environment seed, file and flag layering") {
  unsetenv("ORTHO_SEED");
  ScenarioConfig base = config_defaults();
  CHECK(base.seed == 42);
  CHECK(base.sample_count == 10000);
  CHECK(base.tolerance == 1e-8);
  CHECK(base.relation == "birkhoff");
  CHECK(base.domain.empty());

  setenv("ORTHO_SEED", "777", 1);
  CHECK(config_defaults().seed == 777);
  setenv("ORTHO_SEED", "12x", 1);
  CHECK_THROWS_AS(config_defaults(), std::invalid_argument);
  unsetenv("ORTHO_SEED");

  ScenarioConfig fromFile = config_from_json(
      R"({"seed": 9, "domain": "lp:1:2", "sample_count": 50, "ignored_key": true})", base);
  CHECK(fromFile.seed == 9);
  CHECK(fromFile.domain == "lp:1:2");
  CHECK(fromFile.sample_count == 50);
  CHECK(fromFile.tolerance == base.tolerance);
  CHECK_THROWS_AS(config_from_json("not json", base), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json("[1,2]", base), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(R"({"seed": "x"})", base), std::invalid_argument);

  ScenarioConfig bad = base;
  bad.sample_count = 0;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = base;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad.tolerance = -1.0;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  CHECK_NOTHROW(validate_config(base));
}

TEST_CASE("json reports carry the schema in a stable key order") {
  ReportDocument doc = demo_doc();
  CHECK(doc.failed_count() == 1);
  CHECK_FALSE(doc.all_pass());
  std::string text = to_json(doc);
  auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"suite", "anchor", "version", "config", "checks",
                                         "failed", "elapsed_ms"});
  CHECK(j["version"] == "0.1.0");
  CHECK(j["failed"] == 1);
  CHECK(j["config"]["seed"] == 42);
  CHECK(j["checks"].size() == 3);
  CHECK(j["checks"][0]["status"] == "pass");
  // numbers are quantized to 12 significant digits
  CHECK(j["checks"][0]["measured"].get<double>() == 0.123456789012);
  CHECK(j["checks"][2]["measured"].is_null());
  CHECK(j["checks"][2]["witness"] == "not applicable here");
  // exactly one volatile line, so reports diff cleanly between runs
  CHECK(text.find("\"elapsed_ms\"") == text.rfind("\"elapsed_ms\""));
  CHECK(without_elapsed(text) != text);
  CHECK(without_elapsed(text).find("elapsed_ms") == std::string::npos);
}

TEST_CASE("csv flattens one row per check") {
  ReportDocument doc = demo_doc();
  std::string csv = to_csv(doc);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "suite,check,status,measured,bound,witness");
  std::getline(lines, line);
  CHECK(line == "\"demo\",\"alpha\",pass,0.123456789012,1,\"say \"\"hi\"\"\"");
  std::getline(lines, line);
  CHECK(line.find("fail") != std::string::npos);
  std::getline(lines, line);
  // skipped checks leave the numeric cells empty
  CHECK(line == "\"demo\",\"gamma\",skip,,,\"not applicable here\"");
  CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("emit_report writes the chosen format and rejects unknown ones") {
  ReportDocument doc = demo_doc();
  emit_report(doc, "json", "harness_report.tmp");
  CHECK(slurp("harness_report.tmp") == to_json(doc));
  emit_report(doc, "csv", "harness_report.tmp");
  CHECK(slurp("harness_report.tmp") == to_csv(doc));
  std::remove("harness_report.tmp");
  CHECK_THROWS_AS(emit_report(doc, "xml", "harness_report.tmp"), std::invalid_argument);
  CHECK_THROWS_AS(emit_report(doc, "json", "no_such_dir/harness_report.tmp"), io_error);
}

TEST_CASE("the suite registry knows its names and rejects strangers") {
  auto names = registered_suites();
  CHECK(names.size() == 12);
  for (const char* expect : {"prop-independent", "thm-one", "isometry-bounds",
                             "perturbed-bounds", "floor", "roberts-counterexample",
                             "auerbach", "local-to-global-l1", "polyhedral-2d"}) {
    CAPTURE(expect);
    CHECK(std::find(names.begin(), names.end(), expect) != names.end());
  }
  for (const std::string& n : names) CHECK_FALSE(suite_anchor(n).empty());
  CHECK_THROWS_AS(suite_anchor("no-such-suite"), std::invalid_argument);
  ScenarioConfig cfg = config_defaults();
  CHECK_THROWS_AS(run_suite("no-such-suite", cfg), std::invalid_argument);
}

TEST_CASE("run_suite stamps the config and fills every record") {
  ScenarioConfig cfg = config_defaults();
  ReportDocument doc = run_suite("polyhedral-2d", cfg);
  CHECK(doc.suite == "polyhedral-2d");
  CHECK(doc.config.suite == "polyhedral-2d");
  CHECK(doc.anchor == suite_anchor("polyhedral-2d"));
  CHECK(doc.version == std::string(kArtifactVersion));
  CHECK_FALSE(doc.checks.empty());
  CHECK(doc.all_pass());
  for (const CheckRecord& c : doc.checks) {
    CAPTURE(c.name);
    CHECK_FALSE(c.name.empty());
    bool documented = (c.measured && c.bound) || !c.witness.empty();
    CHECK(documented);
  }
}

TEST_CASE("identical configs reproduce identical reports") {
  ScenarioConfig cfg = config_defaults();
  std::string a = without_elapsed(to_json(run_suite("local-to-global-l1", cfg)));
  std::string b = without_elapsed(to_json(run_suite("local-to-global-l1", cfg)));
  CHECK(a == b);
  std::string c = without_elapsed(to_json(run_suite("deps-symmetry", cfg)));
  std::string d = without_elapsed(to_json(run_suite("deps-symmetry", cfg)));
  CHECK(c == d);
}

TEST_CASE("a configured identity operator scores zero") {
  ScenarioConfig cfg = config_defaults();
  cfg.domain = "euclidean:2";
  cfg.matrix = "1,0;0,1";
  cfg.sample_count = 200;
  ReportDocument doc = run_suite("thm-one", cfg);
  CHECK(doc.all_pass());
  REQUIRE_FALSE(doc.checks.empty());
  CHECK(doc.checks.front().name == "configured-eta");
  CHECK(doc.checks.front().measured == 0.0);
}

TEST_CASE("cli decides pairs through its exit code") {
  std::string out;
  CHECK(run_cli("check-pair --space lp:1:2 --x 1,0 --y 0,1", &out) == 0);
  CHECK(out.find("holds: yes") != std::string::npos);
  CHECK(out.find("space: lp:1:2") != std::string::npos);
  CHECK(run_cli("check-pair --space lp:1:2 --x 1,1 --y 1,0", &out) == 1);
  CHECK(out.find("holds: no") != std::string::npos);
  CHECK(run_cli("eps --space lp:1:2 --x 1,0 --y 0,1", &out) == 0);
  CHECK(std::strtod(out.c_str(), nullptr) == 0.0);
}

TEST_CASE("cli usage problems exit 2") {
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("check-pair --space lp:1:2 --x 1,0") == 2);
  CHECK(run_cli("check-pair --space nope:2 --x 1,0 --y 0,1") == 2);
  CHECK(run_cli("check-pair --space lp:1:2 --x 1,0 --y 0,1 --relation dragomir") == 2);
  CHECK(run_cli("verify no-such-suite") == 2);
  CHECK(run_cli("verify") == 2);
  CHECK(run_cli("analyze-op --domain lp:1:2 --matrix '1,2,3;4,5,6'") == 2);
}

TEST_CASE("cli numeric and io failures use their own exit codes") {
  std::string err;
  CHECK(run_cli("auerbach --space euclidean:9", nullptr, &err) == 3);
  CHECK(err.find("numeric") != std::string::npos);
  CHECK(run_cli("verify polyhedral-2d --out no_such_dir/report.json") == 4);
  CHECK(run_cli("verify polyhedral-2d --config no_such_config.json") == 4);
}

TEST_CASE("cli verify emits reports and layers the seed sources") {
  unsetenv("ORTHO_SEED");
  std::string out;
  REQUIRE(run_cli("verify deps-symmetry", &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["failed"] == 0);
  CHECK(j["config"]["seed"] == 42);

  std::string cmdEnv = "ORTHO_SEED=7 " + std::string(ORTHO_CLI_PATH) +
                       " verify deps-symmetry > cli_out.tmp 2> /dev/null";
  REQUIRE(WEXITSTATUS(std::system(cmdEnv.c_str())) == 0);
  j = nlohmann::json::parse(slurp("cli_out.tmp"));
  CHECK(j["config"]["seed"] == 7);

  std::string cmdFlag = "ORTHO_SEED=7 " + std::string(ORTHO_CLI_PATH) +
                        " verify deps-symmetry --seed 9 > cli_out.tmp 2> /dev/null";
  REQUIRE(WEXITSTATUS(std::system(cmdFlag.c_str())) == 0);
  j = nlohmann::json::parse(slurp("cli_out.tmp"));
  CHECK(j["config"]["seed"] == 9);

  REQUIRE(run_cli("verify polyhedral-2d --out cli_report.tmp", &out) == 0);
  CHECK(slurp("cli_report.tmp") == out);
  REQUIRE(run_cli("verify polyhedral-2d --format csv", &out) == 0);
  CHECK(out.rfind("suite,check,status,measured,bound,witness\n", 0) == 0);
  std::remove("cli_report.tmp");
}

TEST_CASE("cli verify is deterministic run to run") {
  std::string a, b;
  REQUIRE(run_cli("verify polyhedral-2d", &a) == 0);
  REQUIRE(run_cli("verify polyhedral-2d", &b) == 0);
  CHECK(without_elapsed(a) == without_elapsed(b));
  std::remove("cli_out.tmp");
  std::remove("cli_err.tmp");
}

}
