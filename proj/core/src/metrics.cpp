#include "ftsmc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ftsmc/errors.hpp"

namespace ftsmc {

namespace {

// Composite trapezoid over a uniform grid: h (sum - half the endpoints).
double trapezoid(const std::vector<double>& values, double h) {
  if (values.size() < 2) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return h * (sum - 0.5 * (values.front() + values.back()));
}

}  // namespace

MetricsReport compute_metrics(const Trajectory& traj,
                              const std::optional<PerformanceFunction>& pf) {
  if (traj.size() == 0) {
    throw EmptyInputError("compute_metrics: empty trajectory");
  }
  const std::size_t n = traj.size();
  const double h = n > 1 ? traj.times[1] - traj.times[0] : 0.0;

  std::vector<double> u2(n), abs_e(n), e2(n), viol(n);
  MetricsReport report;
  report.truncated = traj.halted;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = traj.e1[i];
    u2[i] = traj.u[i] * traj.u[i];
    abs_e[i] = std::abs(e);
    e2[i] = e * e;
    if (pf) {
      const double envelope = rho(*pf, traj.times[i]);
      viol[i] = std::max(0.0, std::abs(e) - envelope);
      report.J_peak = std::max(report.J_peak, std::abs(e) / envelope);
    }
    report.u_max = std::max(report.u_max, std::abs(traj.u[i]));
  }
  report.J_u = trapezoid(u2, h);
  report.IAE = trapezoid(abs_e, h);
  report.ISE = trapezoid(e2, h);
  if (pf) {
    report.J_viol = trapezoid(viol, h);
  } else {
    report.J_peak = std::numeric_limits<double>::quiet_NaN();
    report.J_viol = std::numeric_limits<double>::quiet_NaN();
  }
  report.reaching_time = traj.event_time(EventKind::tube_entry);
  return report;
}

MetricsReport compute_metrics(const Trajectory& traj, const PerformanceFunction& pf) {
  return compute_metrics(traj, std::optional<PerformanceFunction>(pf));
}

namespace {

std::optional<double> percentage_gain(double baseline, double ppf) {
  if (baseline == 0.0) {
    if (ppf == 0.0) return 0.0;
    return std::nullopt;  // undefined ratio
  }
  return 100.0 * (baseline - ppf) / baseline;
}

}  // namespace

Comparison compare(const MetricsReport& ppf_report, const MetricsReport& baseline_report) {
  Comparison cmp;
  cmp.ppf = ppf_report;
  cmp.baseline = baseline_report;
  cmp.gain_J_u = percentage_gain(baseline_report.J_u, ppf_report.J_u);
  cmp.gain_IAE = percentage_gain(baseline_report.IAE, ppf_report.IAE);
  cmp.gain_ISE = percentage_gain(baseline_report.ISE, ppf_report.ISE);
  cmp.ppf_no_violation = ppf_report.J_viol == 0.0;
  return cmp;
}

}  // namespace ftsmc
