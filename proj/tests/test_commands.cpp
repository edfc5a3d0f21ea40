#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ftsmc/commands.hpp"
#include "ftsmc/errors.hpp"

#include "test_util.hpp"

using namespace ftsmc;
namespace fs = std::filesystem;

namespace {

std::string fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ftsmc_cmd_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char ch : text) n += ch == '\n';
  return n;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

std::string nth_line(const std::string& text, std::size_t n) {
  std::istringstream in(text);
  std::string line;
  for (std::size_t i = 0; i <= n; ++i) REQUIRE(std::getline(in, line));
  return line;
}

std::string write_temp_scenario(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "ftsmc_cmd_tests";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
  return path.string();
}

int run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + std::string(FTSMC_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

constexpr const char* kFeasibleFirstOrder = R"cfg(
[ppf]
rho0 = 4.0
rho_inf = 0.05
lambda = 4.0

[gain]
k0 = 2.0
k1 = 1.9
gamma_out = 0.7
eps0 = 0.6
eps = 0.2
inner.variant = mixed_power
a = 4.0
b = 5.0
alpha = 1.5

[disturbance]
d_max = 0.05
freq = 10.0

[sim]
horizon = 10.0
dt = 0.001

[controller]
controller = first_order
x0 = 1.0
)cfg";

}  // namespace

TEST_SUITE_BEGIN("commands");

TEST_CASE("simulate writes a full first-order trajectory and metrics") {
  const std::string dir = fresh_dir("fo_nominal");
  std::ostringstream out, err;
  const int code =
      cmd_simulate(ftsmc_test::scenario_path("fo_nominal_x0_3.cfg"), dir, out, err);
  CHECK(code == kExitSuccess);
  CHECK(err.str().empty());

  const std::string csv = read_file(dir + "/trajectory.csv");
  CHECK(nth_line(csv, 0) == "t,x,xi,u,d,rho");
  CHECK(line_count(csv) == 10002);  // header + horizon/dt + 1 samples
  const auto first = split_csv(nth_line(csv, 1));
  REQUIRE(first.size() == 6);
  CHECK(first[0] == "0");
  CHECK(first[1] == "3");

  const std::string metrics = read_file(dir + "/metrics.txt");
  CHECK(metrics.find("J_u    = ") != std::string::npos);
  CHECK(metrics.find("truncated = false") != std::string::npos);
  CHECK(metrics.find("event: tube_entry at t = ") != std::string::npos);

  CHECK(out.str().find("samples: 10001 (stride 1)") != std::string::npos);
  CHECK(out.str().find("final: t = 10, x = ") != std::string::npos);
  CHECK(out.str().find("reaching_time = ") != std::string::npos);
}

TEST_CASE("simulate output is deterministic across runs") {
  const std::string dir_a = fresh_dir("det_a");
  const std::string dir_b = fresh_dir("det_b");
  std::ostringstream out, err;
  REQUIRE(cmd_simulate(ftsmc_test::scenario_path("fo_nominal_x0_3.cfg"), dir_a,
                       out, err) == kExitSuccess);
  REQUIRE(cmd_simulate(ftsmc_test::scenario_path("fo_nominal_x0_3.cfg"), dir_b,
                       out, err) == kExitSuccess);
  CHECK(read_file(dir_a + "/trajectory.csv") == read_file(dir_b + "/trajectory.csv"));
  CHECK(read_file(dir_a + "/metrics.txt") == read_file(dir_b + "/metrics.txt"));
}

TEST_CASE("simulate refuses an initial condition outside the envelope") {
  for (const char* name : {"fo_infeasible_x0_4.cfg", "fo_infeasible_x0_4_5.cfg"}) {
    const std::string dir = fresh_dir("fo_refused");
    std::ostringstream out, err;
    const int code = cmd_simulate(ftsmc_test::scenario_path(name), dir, out, err);
    CHECK(code == kExitInfeasibleRun);
    CHECK(err.str().find("|x(0)| < rho(0)") != std::string::npos);
    CHECK(err.str().find("allow_envelope_inflation") != std::string::npos);
    CHECK(!fs::exists(dir + "/trajectory.csv"));  // nothing to report
  }
}

TEST_CASE("simulate inflates the envelope when the scenario opts in") {
  const std::string dir = fresh_dir("fo_inflated");
  std::ostringstream out, err;
  const int code = cmd_simulate(ftsmc_test::scenario_path("fo_inflated_x0_4.cfg"),
                                dir, out, err);
  CHECK(code == kExitSuccess);
  CHECK(err.str().find("notice: initial condition |4| >= rho(0) = 4") !=
        std::string::npos);
  CHECK(err.str().find("inflating rho0 to 4.4") != std::string::npos);
  CHECK(fs::exists(dir + "/trajectory.csv"));
  const std::string metrics = read_file(dir + "/metrics.txt");
  CHECK(metrics.find("truncated = false") != std::string::npos);
}

TEST_CASE("simulate reports a mid-run envelope violation and keeps the prefix") {
  const std::string dir = fresh_dir("so_ppf_halt");
  std::ostringstream out, err;
  const int code =
      cmd_simulate(ftsmc_test::scenario_path("so_ppf.cfg"), dir, out, err);
  CHECK(code == kExitInfeasibleRun);
  CHECK(err.str().find("envelope_violation at t = ") != std::string::npos);
  CHECK(err.str().find("completed prefix") != std::string::npos);

  const std::string csv = read_file(dir + "/trajectory.csv");
  CHECK(nth_line(csv, 0) == "t,e1,e2,xi,s,u,d,rho");
  CHECK(line_count(csv) > 2);  // a real prefix, not just the header
  const std::string metrics = read_file(dir + "/metrics.txt");
  CHECK(metrics.find("truncated = true") != std::string::npos);
  CHECK(metrics.find("event: envelope_violation at t = ") != std::string::npos);
}

TEST_CASE("simulate runs the baseline without an envelope") {
  const std::string dir = fresh_dir("so_baseline");
  std::ostringstream out, err;
  const int code =
      cmd_simulate(ftsmc_test::scenario_path("so_baseline.cfg"), dir, out, err);
  CHECK(code == kExitSuccess);
  CHECK(err.str().empty());

  const std::string csv = read_file(dir + "/trajectory.csv");
  CHECK(nth_line(csv, 0) == "t,e1,e2,xi,s,u,d,rho");
  CHECK(line_count(csv) == 10002);
  const auto first = split_csv(nth_line(csv, 1));
  REQUIRE(first.size() == 8);
  CHECK(first[3] == "nan");  // xi is undefined without an envelope
  CHECK(first[7] == "nan");  // so is rho
  const std::string metrics = read_file(dir + "/metrics.txt");
  CHECK(metrics.find("J_peak = nan") != std::string::npos);
  CHECK(metrics.find("J_viol = nan") != std::string::npos);
}

TEST_CASE("compare writes both trajectories and the comparison table") {
  const std::string dir = fresh_dir("cmp");
  std::ostringstream out, err;
  const int code = cmd_compare(ftsmc_test::scenario_path("so_ppf.cfg"),
                               ftsmc_test::scenario_path("so_baseline.cfg"), dir,
                               out, err);
  // The PPF run halts on the envelope; the comparison covers its prefix.
  CHECK(code == kExitInfeasibleRun);
  CHECK(err.str().find("envelope_violation at t = ") != std::string::npos);

  CHECK(fs::exists(dir + "/trajectory_ppf.csv"));
  CHECK(fs::exists(dir + "/trajectory_baseline.csv"));
  const std::string csv = read_file(dir + "/comparison.csv");
  CHECK(nth_line(csv, 0) == "metric,non-PPF,PPF-aware,Gain(%)");
  const auto j_u = split_csv(nth_line(csv, 1));
  REQUIRE(j_u.size() == 4);
  CHECK(j_u[0] == "J_u");
  const auto j_peak = split_csv(nth_line(csv, 2));
  CHECK(j_peak[0] == "J_peak");
  CHECK(j_peak[3] == "--");
  const auto j_viol = split_csv(nth_line(csv, 3));
  CHECK(j_viol[0] == "J_viol");
  CHECK(j_viol[2] == "0");              // PPF-aware prefix never violates
  CHECK(j_viol[3] == "No violation");
  CHECK(split_csv(nth_line(csv, 4))[0] == "IAE");
  CHECK(split_csv(nth_line(csv, 5))[0] == "ISE");

  // Baseline columns come from the full run evaluated against the PPF envelope.
  CHECK(out.str().find("matched-peak protocol") != std::string::npos);
  CHECK(out.str().find("u_max non-PPF = 6.09713996837") != std::string::npos);
  CHECK(out.str().find("verdict: No violation") != std::string::npos);
}

TEST_CASE("compare validates the controller roles") {
  const std::string dir = fresh_dir("cmp_roles");
  std::ostringstream out, err;
  const int code = cmd_compare(ftsmc_test::scenario_path("so_baseline.cfg"),
                               ftsmc_test::scenario_path("so_ppf.cfg"), dir, out,
                               err);
  CHECK(code == kExitUsage);
  CHECK(err.str().find("first scenario must set controller = ppf") !=
        std::string::npos);
}

TEST_CASE("compare rejects scenarios with different shared blocks") {
  std::string variant = read_file(ftsmc_test::scenario_path("so_baseline.cfg"));
  const auto pos = variant.find("horizon = 10.0");
  REQUIRE(pos != std::string::npos);
  variant.replace(pos, 14, "horizon = 9.0");
  const std::string path = write_temp_scenario("baseline_horizon9.cfg", variant);

  const std::string dir = fresh_dir("cmp_mismatch");
  std::ostringstream out, err;
  const int code =
      cmd_compare(ftsmc_test::scenario_path("so_ppf.cfg"), path, dir, out, err);
  CHECK(code == kExitUsage);
  CHECK(err.str().find("[sim] blocks differ") != std::string::npos);
}

TEST_CASE("feasibility reports the undersized inner branch") {
  std::ostringstream out, err;
  const int code =
      cmd_feasibility(ftsmc_test::scenario_path("fo_nominal_x0_3.cfg"), out, err);
  CHECK(code == kExitInfeasibleGain);
  CHECK(out.str().find("xi0 = 0.813419847598") != std::string::npos);
  CHECK(out.str().find("outer branch OK") != std::string::npos);
  CHECK(out.str().find("inner branch INSUFFICIENT") != std::string::npos);
  CHECK(out.str().find("verdict: INFEASIBLE") != std::string::npos);
  CHECK(out.str().find("T_out") == std::string::npos);  // no bounds when infeasible
}

TEST_CASE("feasibility accepts a schedule that dominates the disturbance") {
  const std::string path =
      write_temp_scenario("feasible_fo.cfg", kFeasibleFirstOrder);
  std::ostringstream out, err;
  const int code = cmd_feasibility(path, out, err);
  CHECK(code == kExitSuccess);
  CHECK(out.str().find("outer branch OK") != std::string::npos);
  CHECK(out.str().find("inner branch OK") != std::string::npos);
  CHECK(out.str().find("residual radius = ") != std::string::npos);
  CHECK(out.str().find("T_out = ") != std::string::npos);
  CHECK(out.str().find("verdict: FEASIBLE") != std::string::npos);
}

TEST_CASE("feasibility refuses an initial condition the envelope cannot admit") {
  std::ostringstream out, err;
  const int code = cmd_feasibility(ftsmc_test::scenario_path("fo_infeasible_x0_4.cfg"),
                                   out, err);
  CHECK(code == kExitInfeasibleGain);
  CHECK(err.str().find("infeasible initial condition") != std::string::npos);
}

TEST_CASE("bounds prints the closed-form reach and settle times") {
  std::ostringstream out, err;
  const int code =
      cmd_bounds(ftsmc_test::scenario_path("fo_nominal_x0_3.cfg"), out, err);
  CHECK(code == kExitSuccess);
  CHECK(out.str().find("w0 (initial |surface|) = 0.813419847598") !=
        std::string::npos);
  CHECK(out.str().find("T_A   = 0.156638287683") != std::string::npos);
  CHECK(out.str().find("T_B   = 0.591109277211") != std::string::npos);
  CHECK(out.str().find("T_out = 0.747747564894") != std::string::npos);
  CHECK(out.str().find("T_in  = 20.6666666667") != std::string::npos);
  CHECK(out.str().find("total = 21.4144142316") != std::string::npos);
}

TEST_CASE("bounds reports a gain that cannot dominate the disturbance") {
  std::string text = kFeasibleFirstOrder;
  const auto pos = text.find("d_max = 0.05");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 12, "d_max = 0.3");
  const auto k0 = text.find("k0 = 2.0");
  REQUIRE(k0 != std::string::npos);
  text.replace(k0, 8, "k0 = 1.0");
  const std::string path = write_temp_scenario("weak_gain.cfg", text);

  std::ostringstream out, err;
  const int code = cmd_bounds(path, out, err);
  CHECK(code == kExitInfeasibleGain);
  CHECK(out.str().find("bounds unavailable: ") != std::string::npos);
}

TEST_CASE("record stride comes from the environment") {
  unsetenv("FTSMC_RECORD_STRIDE");
  CHECK(record_stride_from_env() == 1);
  setenv("FTSMC_RECORD_STRIDE", "25", 1);
  CHECK(record_stride_from_env() == 25);
  setenv("FTSMC_RECORD_STRIDE", "0", 1);
  CHECK_THROWS_AS(record_stride_from_env(), ConfigError);
  setenv("FTSMC_RECORD_STRIDE", "ten", 1);
  CHECK_THROWS_AS(record_stride_from_env(), ConfigError);
  setenv("FTSMC_RECORD_STRIDE", "10x", 1);
  CHECK_THROWS_AS(record_stride_from_env(), ConfigError);
  unsetenv("FTSMC_RECORD_STRIDE");
}

TEST_CASE("unreadable scenario paths exit with a usage error") {
  const std::string dir = fresh_dir("missing");
  std::ostringstream out, err;
  CHECK(cmd_simulate("/nonexistent/a.cfg", dir, out, err) == kExitUsage);
  CHECK(err.str().find("cannot open scenario file") != std::string::npos);
}

TEST_CASE("cli binary honors the exit-code contract") {
  const std::string dir = fresh_dir("cli");
  CHECK(run_cli("--help > /dev/null 2>&1") == 0);
  CHECK(run_cli("frobnicate > /dev/null 2>&1") == kExitUsage);
  CHECK(run_cli("simulate > /dev/null 2>&1") == kExitUsage);  // scenario missing
  CHECK(run_cli("simulate " + ftsmc_test::scenario_path("fo_nominal_x0_3.cfg") +
                " > /dev/null 2>&1") == kExitUsage);  // --out missing
  CHECK(run_cli("simulate " + ftsmc_test::scenario_path("fo_infeasible_x0_4.cfg") +
                " --out " + dir + " > /dev/null 2>&1") == kExitInfeasibleRun);
  CHECK(run_cli("feasibility " + ftsmc_test::scenario_path("fo_nominal_x0_3.cfg") +
                " > /dev/null 2>&1") == kExitInfeasibleGain);
  CHECK(run_cli("bounds " + ftsmc_test::scenario_path("fo_nominal_x0_3.cfg") +
                " > /dev/null 2>&1") == kExitSuccess);
}

TEST_CASE("cli binary honors FTSMC_RECORD_STRIDE") {
  const std::string dir = fresh_dir("cli_stride");
  const int code = run_cli("simulate " +
                           ftsmc_test::scenario_path("fo_nominal_x0_3.cfg") +
                           " --out " + dir + " > /dev/null 2>&1",
                           "FTSMC_RECORD_STRIDE=10 ");
  CHECK(code == kExitSuccess);
  const std::string csv = read_file(dir + "/trajectory.csv");
  CHECK(line_count(csv) == 1002);  // header + subsampled rows

  CHECK(run_cli("simulate " + ftsmc_test::scenario_path("fo_nominal_x0_3.cfg") +
                " --out " + dir + " > /dev/null 2>&1",
                "FTSMC_RECORD_STRIDE=bogus ") == kExitUsage);
}

TEST_SUITE_END();
