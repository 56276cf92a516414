// End-to-end tests of the qdc-verify binary: exit-code contract, report
// schema, determinism, and the config file.  The binary path comes from the
// QDC_CLI_BIN environment variable (set by the test registration).

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <string>

#include <json.hpp>

namespace {

std::string cli_path() {
  const char* p = std::getenv("QDC_CLI_BIN");
  return p ? p : "./qdc-verify";
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.output.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("symbolic subcommand emits the record schema and exits zero") {
  const RunResult r = run_cli("verify-symbolic --calculus 3d --format json");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::ordered_json::parse(r.output);
  REQUIRE(doc.is_array());
  CHECK(doc.size() == 25);

  const std::vector<std::string> want = {"check",     "calculus", "variant",
                                         "max_residual", "tolerance", "pass",
                                         "mask_radius",  "window"};
  std::vector<std::string> got;
  for (auto it = doc[0].begin(); it != doc[0].end(); ++it) got.push_back(it.key());
  CHECK(got == want);
  for (const auto& rec : doc) CHECK(rec["pass"].get<bool>());
}

TEST_CASE("operator subcommand passes at the default parameters") {
  const RunResult r = run_cli("verify-operator --format json");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::ordered_json::parse(r.output);
  bool saw_vanishing = false, saw_rank = false;
  for (const auto& rec : doc) {
    if (rec["calculus"] == "omega/3d") {
      saw_vanishing = true;
      CHECK(rec["mask_radius"].get<std::string>() == "(5,5,0)");
    }
    if (rec["calculus"] == "rank") saw_rank = true;
  }
  CHECK(saw_vanishing);
  CHECK(saw_rank);
}

TEST_CASE("plan and config errors exit with code two") {
  CHECK(run_cli("verify-operator --q 3/2").exit_code == 2);
  CHECK(run_cli("verify-operator --q banana").exit_code == 2);
  CHECK(run_cli("--mode bogus").exit_code == 2);
  CHECK(run_cli("gram --mode probe").exit_code == 2);  // conflicting selectors
  CHECK(run_cli("verify-operator --epsilon 0").exit_code == 2);

  const std::string path = "cli_bad_config.tmp";
  std::ofstream(path) << "q = 1/3\nnot-a-key = 7\n";
  CHECK(run_cli("verify-symbolic --config " + path).exit_code == 2);
  std::remove(path.c_str());
}

TEST_CASE("a window too small for a suite exits with code three") {
  const RunResult r = run_cli("verify-operator --k-min -2 --k-max 2");
  CHECK(r.exit_code == 3);
}

TEST_CASE("a failing check renders pass=false and exits one") {
  const RunResult r = run_cli("verify-disk --tol 1e-18 --format json");
  CHECK(r.exit_code == 1);
  const auto doc = nlohmann::ordered_json::parse(r.output);
  int fails = 0;
  for (const auto& rec : doc)
    if (!rec["pass"].get<bool>()) ++fails;
  CHECK(fails > 0);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  const std::string bin = cli_path();
  const RunResult a = run_cli("all --format json");
  setenv("QCALC_THREADS", "1", 1);
  const RunResult b = run_cli("all --format json");
  unsetenv("QCALC_THREADS");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("config file values are honored") {
  const std::string path = "cli_good_config.tmp";
  std::ofstream(path) << "# narrow run at a different deformation value\n"
                      << "q = 1/3\n"
                      << "k-min = -10\n"
                      << "k-max = 10\n";
  const RunResult r = run_cli("verify-symbolic --config " + path + " --format json");
  CHECK(r.exit_code == 0);
  std::remove(path.c_str());
}

TEST_CASE("text mode renders residuals with three significant digits") {
  const RunResult r = run_cli("verify-disk");
  REQUIRE(r.exit_code == 0);
  const std::regex sci("residual=[0-9]\\.[0-9]{2}e[+-][0-9]{2}");
  CHECK(std::regex_search(r.output, sci));
}
