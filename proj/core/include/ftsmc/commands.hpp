#pragma once

#include <iosfwd>
#include <string>

#include "ftsmc/scenario.hpp"

namespace ftsmc {

// Stable exit-code contract shared by every subcommand.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;        // bad arguments, bad scenario, mismatch
inline constexpr int kExitInfeasibleGain = 2;  // feasibility check failed
inline constexpr int kExitInfeasibleRun = 3;   // initial condition or envelope
inline constexpr int kExitDivergence = 4;      // non-finite state

// Record stride from FTSMC_RECORD_STRIDE (default 1). Throws ConfigError on a
// value that is not a positive integer.
int record_stride_from_env();

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 std::ostream& out, std::ostream& err);

int cmd_compare(const std::string& ppf_path, const std::string& baseline_path,
                const std::string& out_dir, std::ostream& out, std::ostream& err);

int cmd_feasibility(const std::string& scenario_path, std::ostream& out,
                    std::ostream& err);

int cmd_bounds(const std::string& scenario_path, std::ostream& out,
               std::ostream& err);

}  // namespace ftsmc
