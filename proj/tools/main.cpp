#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ftsmc/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification toolkit for the PPF-aware "
               "hybrid-gain finite-time sliding mode controller"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string baseline_path;
  std::string out_dir;

  CLI::App* simulate =
      app.add_subcommand("simulate", "Run one scenario; write trajectory.csv "
                                     "and metrics.txt");
  simulate->add_option("scenario", scenario_path, "Scenario file")->required();
  simulate->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* compare = app.add_subcommand(
      "compare", "Run a PPF-aware scenario against a baseline scenario; write "
                 "both trajectories and comparison.csv");
  compare->add_option("ppf", scenario_path, "PPF-aware scenario file")->required();
  compare->add_option("baseline", baseline_path, "Baseline scenario file")
      ->required();
  compare->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* feasibility = app.add_subcommand(
      "feasibility", "Check the gain-feasibility inequalities for a scenario");
  feasibility->add_option("scenario", scenario_path, "Scenario file")->required();

  CLI::App* bounds = app.add_subcommand(
      "bounds", "Print the closed-form reaching and settling time bounds");
  bounds->add_option("scenario", scenario_path, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // CLI11 returns 0 for --help; anything else is a usage error.
    return code == 0 ? ftsmc::kExitSuccess : ftsmc::kExitUsage;
  }

  if (simulate->parsed()) {
    return ftsmc::cmd_simulate(scenario_path, out_dir, std::cout, std::cerr);
  }
  if (compare->parsed()) {
    return ftsmc::cmd_compare(scenario_path, baseline_path, out_dir, std::cout,
                              std::cerr);
  }
  if (feasibility->parsed()) {
    return ftsmc::cmd_feasibility(scenario_path, std::cout, std::cerr);
  }
  return ftsmc::cmd_bounds(scenario_path, std::cout, std::cerr);
}
