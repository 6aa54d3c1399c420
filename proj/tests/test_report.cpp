#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cftherm/report.hpp"
#include "cftherm/suites.hpp"

using namespace cftherm;

namespace {

int run_cli(const std::string& args, std::string* out_path = nullptr) {
  static int counter = 0;
  const std::string out = "cli_out_" + std::to_string(counter++) + ".txt";
  const std::string cmd =
      std::string(CFTHERM_CLI_PATH) + " " + args + " > " + out + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  if (out_path) *out_path = out;
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("pass iff delta within tolerance") {
  const CheckReport ok = make_report("x", {}, 1.0, 1.0, 1e-9, 1e-8);
  CHECK(ok.pass);
  const CheckReport bad = make_report("x", {}, 1.0, 2.0, 1.0, 1e-8);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("json emission carries all fields") {
  std::vector<CheckReport> rs = {
      make_report("alpha", {{"beta", "1"}}, {0.5, -0.25}, std::nullopt, 0.0, 1e-6),
      make_report("bravo", {}, 2.0, std::complex<double>(2.0), 1e-9, 1e-6, 42)};
  const auto j = nlohmann::json::parse(emit_json(rs));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["name"] == "alpha");
  CHECK(j[0]["inputs"]["beta"] == "1");
  CHECK(j[0]["value_im"] == -0.25);
  CHECK_FALSE(j[0].contains("oracle_re"));
  CHECK(j[1]["oracle_re"] == 2.0);
  CHECK(j[1]["pass"] == true);
  CHECK(emit_json({}) == "[]");
}

TEST_CASE("csv round trip preserves the numeric fields") {
  std::vector<CheckReport> rs = {
      make_report("one", {}, {0.123456789012345, -3.5e-11},
                  std::complex<double>(0.1, 0.2), 2.5e-7, 1e-6),
      make_report("two", {}, 7.0, std::nullopt, 0.5, 1e-3)};
  const auto back = parse_csv(emit_csv(rs));
  REQUIRE(back.size() == rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    CHECK(back[i].name == rs[i].name);
    CHECK(std::abs(back[i].value - rs[i].value) < 1e-12);
    CHECK(back[i].delta == rs[i].delta);
    CHECK(back[i].tolerance == rs[i].tolerance);
    CHECK(back[i].pass == rs[i].pass);
    CHECK(back[i].oracle.has_value() == rs[i].oracle.has_value());
  }
  const std::string header_only = emit_csv({});
  CHECK(header_only ==
        "name,value_re,value_im,oracle_re,oracle_im,delta,tolerance,pass\n");
}

TEST_CASE("suite selection validates names") {
  SuiteConfig cfg;
  cfg.suites = {"no-such-suite"};
  CHECK_THROWS_AS((void)run_suite(cfg), UsageError);
  cfg.suites = {};
  CHECK(run_suite(cfg).empty());  // empty selection: empty report
}

TEST_CASE("classify suite is deterministic") {
  SuiteConfig cfg;
  cfg.suites = {"classify-vir"};
  auto strip_runtime = [](std::vector<CheckReport> rs) {
    for (auto& r : rs) r.runtime_ms = 0;
    return emit_json(rs);
  };
  CHECK(strip_runtime(run_suite(cfg)) == strip_runtime(run_suite(cfg)));
}

TEST_CASE("cli: subcommand exit codes") {
  CHECK(run_cli("classify-vir --beta 1 --c 2") == 0);
  CHECK(run_cli("classify-vir --beta -1") == 2);           // invalid beta
  CHECK(run_cli("run-suite --suite no-such-suite") == 2);  // unknown suite
  CHECK(run_cli("run-suite --beta -3 --suite partition") == 2);
  CHECK(run_cli("definitely-not-a-subcommand") == 2);
  // a failing check exits 1: force an unreachable tolerance
  CHECK(run_cli("kms-check --beta 1 --grid-n 1024 --tol 1e-30 "
                "--fixture gaussian:0,1 --fixture-b gaussian:0.3,0.8") == 1);
  // a passing suite exits 0
  CHECK(run_cli("run-suite --suite partition") == 0);
}

TEST_CASE("cli: environment variable overrides the default grid") {
  std::string out;
  const std::string cmd = std::string("CFT_THERMAL_GRID_N=1024 ") +
                          CFTHERM_CLI_PATH +
                          " weyl-eval --beta 1 --fixture bump:0,0.5 > " +
                          "cli_env_out.txt 2>/dev/null";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  const std::string bad = std::string("CFT_THERMAL_GRID_N=1000 ") +
                          CFTHERM_CLI_PATH +
                          " weyl-eval --beta 1 --fixture bump:0,0.5 > "
                          "cli_env_out.txt 2>/dev/null";
  CHECK(WEXITSTATUS(std::system(bad.c_str())) == 2);  // not a power of two
  std::remove("cli_env_out.txt");
}

TEST_CASE("cli: weyl-eval gram option reports the minimum eigenvalue") {
  std::string out;
  REQUIRE(run_cli("weyl-eval --beta 1 --q 1 --fixture bump:0,0.5 --gram 4 "
                  "--grid-n 1024",
                  &out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  REQUIRE(j.size() == 2);
  CHECK(j[1]["name"] == "weyl-gram");
  CHECK(j[1]["value_re"].get<double>() >= -1e-9);
  std::remove(out.c_str());
}

TEST_CASE("cli: empty suite selection emits an empty report") {
  std::string out;
  CHECK(run_cli("run-suite", &out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.is_array());
  CHECK(j.empty());
  std::remove(out.c_str());
}

TEST_CASE("cli: classify subcommand emits a passing report") {
  std::string out;
  REQUIRE(run_cli("classify-vir --beta 1 --c 2", &out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  REQUIRE(j.size() == 1);
  CHECK(j[0]["pass"] == true);
  // q_geo(c=2, beta=1) = sqrt(pi/6)
  CHECK(std::abs(j[0]["value_re"].get<double>() - 0.7236012545582677) < 1e-10);
  std::remove(out.c_str());
}

TEST_CASE("cli: config file values are overridden by flags") {
  {
    std::ofstream cfg("cli_cfg.txt");
    cfg << "beta=2\nc=2\n";
  }
  std::string out;
  REQUIRE(run_cli("classify-vir --config cli_cfg.txt --beta 1", &out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  // beta from the flag: q_geo = sqrt(pi/6)/1
  CHECK(std::abs(j[0]["value_re"].get<double>() - 0.7236012545582677) < 1e-10);
  std::remove(out.c_str());

  REQUIRE(run_cli("classify-vir --config cli_cfg.txt", &out) == 0);
  const auto j2 = nlohmann::json::parse(slurp(out));
  // beta from the file: q_geo = sqrt(pi/6)/2
  CHECK(std::abs(j2[0]["value_re"].get<double>() - 0.5 * 0.7236012545582677) <
        1e-10);
  std::remove(out.c_str());
  std::remove("cli_cfg.txt");
}

TEST_CASE("cli: fock-check emits the deviation matrix") {
  std::string out;
  REQUIRE(run_cli("fock-check --algebra boson --max-mode 2 --level 3", &out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["algebra"] == "boson");
  CHECK(j["pass"] == true);
  REQUIRE(j["deviations"].size() == 5);  // m in -2..2
  std::remove(out.c_str());
}

TEST_CASE("cli: weyl-eval reports a state value") {
  std::string out;
  REQUIRE(run_cli("weyl-eval --beta 1 --q 0.5 --fixture bump:0,0.5 --grid-n 1024",
                  &out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  REQUIRE(j.size() == 1);
  const double re = j[0]["value_re"].get<double>();
  const double im = j[0]["value_im"].get<double>();
  CHECK(re * re + im * im <= 1.0 + 1e-9);
  std::remove(out.c_str());
}

TEST_CASE("cli: kms-check prints rows and a summary") {
  std::string out;
  REQUIRE(run_cli(
              "kms-check --beta 1 --fixture gaussian:0,1 --fixture-b "
              "gaussian:0.3,0.8 --grid-n 2048",
              &out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("t,abs_F,residual") != std::string::npos);
  CHECK(text.find("sup_residual") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("cli: unwritable sink is an i/o error") {
  CHECK(run_cli("classify-vir --beta 1 --c 2 --output /nonexistent/dir/x.json") ==
        1);
}

TEST_CASE("cli: csv format emission") {
  std::string out;
  REQUIRE(run_cli("classify-vir --beta 1 --c 1.5 --format csv", &out) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("name,value_re", 0) == 0);
  const auto rows = parse_csv(text);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].pass);
  std::remove(out.c_str());
}
