#pragma once

#include <optional>

#include "ftsmc/ppf.hpp"
#include "ftsmc/sim.hpp"

namespace ftsmc {

struct MetricsReport {
  double J_u = 0.0;     // integral of u^2
  double J_peak = 0.0;  // max |e1(t)| / rho(t)
  double J_viol = 0.0;  // integral of max(0, |e1(t)| - rho(t))
  double IAE = 0.0;     // integral of |e1(t)|
  double ISE = 0.0;     // integral of e1(t)^2
  double u_max = 0.0;
  std::optional<double> reaching_time;  // tube-entry time, when reached
  bool truncated = false;  // metrics cover only the completed prefix of a halted run
};

// Integrals by composite trapezoid over the recorded samples; peaks over the
// recorded samples. Throws EmptyInputError on an empty trajectory. Without an
// envelope, J_peak and J_viol are NaN (they have no definition).
MetricsReport compute_metrics(const Trajectory& traj,
                              const std::optional<PerformanceFunction>& pf);
MetricsReport compute_metrics(const Trajectory& traj, const PerformanceFunction& pf);

struct Comparison {
  MetricsReport ppf;
  MetricsReport baseline;
  // Percentage gains 100 (baseline - ppf) / baseline; absent when the baseline
  // value is zero while the other is not (undefined ratio).
  std::optional<double> gain_J_u;
  std::optional<double> gain_IAE;
  std::optional<double> gain_ISE;
  bool ppf_no_violation = false;
};

Comparison compare(const MetricsReport& ppf_report, const MetricsReport& baseline_report);

}  // namespace ftsmc
