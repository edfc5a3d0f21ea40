#include "ftsmc/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include "ftsmc/errors.hpp"
#include "ftsmc/gain.hpp"
#include "ftsmc/metrics.hpp"
#include "ftsmc/sim.hpp"

namespace ftsmc {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct RunResult {
  Trajectory traj;
  // Envelope the run was actually evaluated against (inflated when the
  // scenario opted in, injected for baseline diagnostics, absent otherwise).
  std::optional<PerformanceFunction> pf;
};

bool feasible_initial(const PerformanceFunction& pf, double e1_0) {
  return std::abs(e1_0) < pf.rho0 * (1.0 - kFeasibilityMargin);
}

// Applies the opt-in envelope inflation rho0 <- 1.1 |x0| for an initial
// condition the configured envelope cannot admit.
PerformanceFunction effective_envelope(const Scenario& sc, double e1_0,
                                       std::ostream& err) {
  const PerformanceFunction& pf = *sc.pf;
  if (feasible_initial(pf, e1_0) || !sc.allow_envelope_inflation) {
    return pf;
  }
  const double inflated = 1.1 * std::abs(e1_0);
  err << "notice: initial condition |" << fmt(e1_0) << "| >= rho(0) = "
      << fmt(pf.rho0) << "; inflating rho0 to " << fmt(inflated)
      << " (allow_envelope_inflation)\n";
  return PerformanceFunction(inflated, pf.rho_inf, pf.lambda);
}

RunResult run_scenario(const Scenario& sc, int stride, std::ostream& err,
                       const std::optional<PerformanceFunction>& diagnostic_pf) {
  const SimConfig cfg(sc.sim.horizon, sc.sim.dt, sc.sim.integrator, stride);
  RunResult result;
  switch (sc.controller) {
    case ControllerSelect::first_order: {
      const PerformanceFunction pf = effective_envelope(sc, sc.x0, err);
      result.pf = pf;
      result.traj = run_first_order(pf, sc.gain, sc.disturbance, cfg, sc.x0,
                                    sc.sliding);
      break;
    }
    case ControllerSelect::ppf: {
      const PerformanceFunction pf = effective_envelope(sc, sc.e1_0, err);
      result.pf = pf;
      result.traj = run_second_order(pf, *sc.plant, sc.gain, sc.disturbance, cfg,
                                     {sc.e1_0, sc.e2_0}, sc.sliding,
                                     ControllerKind::ppf);
      break;
    }
    case ControllerSelect::baseline: {
      result.pf = diagnostic_pf;
      result.traj = run_second_order(diagnostic_pf, *sc.plant, sc.gain,
                                     sc.disturbance, cfg, {sc.e1_0, sc.e2_0},
                                     sc.sliding, ControllerKind::baseline);
      break;
    }
  }
  return result;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open output file '" + path + "'");
  }
  const auto cell = [&](const std::vector<double>& column, std::size_t i) {
    return column.empty() ? std::string("nan") : fmt(column[i]);
  };
  if (traj.second_order) {
    out << "t,e1,e2,xi,s,u,d,rho\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
      out << fmt(traj.times[i]) << ',' << fmt(traj.e1[i]) << ','
          << fmt(traj.e2[i]) << ',' << cell(traj.xi, i) << ','
          << fmt(traj.s[i]) << ',' << fmt(traj.u[i]) << ','
          << fmt(traj.d[i]) << ',' << cell(traj.rho, i) << '\n';
    }
  } else {
    out << "t,x,xi,u,d,rho\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
      out << fmt(traj.times[i]) << ',' << fmt(traj.e1[i]) << ','
          << cell(traj.xi, i) << ',' << fmt(traj.u[i]) << ','
          << fmt(traj.d[i]) << ',' << cell(traj.rho, i) << '\n';
    }
  }
}

void print_metrics(std::ostream& out, const MetricsReport& m) {
  out << "J_u    = " << fmt(m.J_u) << "\n";
  out << "J_peak = " << fmt(m.J_peak) << "\n";
  out << "J_viol = " << fmt(m.J_viol) << "\n";
  out << "IAE    = " << fmt(m.IAE) << "\n";
  out << "ISE    = " << fmt(m.ISE) << "\n";
  out << "u_max  = " << fmt(m.u_max) << "\n";
  out << "reaching_time = "
      << (m.reaching_time ? fmt(*m.reaching_time) : std::string("not reached"))
      << "\n";
  out << "truncated = " << (m.truncated ? "true" : "false");
  if (m.truncated) {
    out << "  (metrics cover the completed prefix of a halted run)";
  }
  out << "\n";
}

void write_metrics_txt(const std::string& path, const MetricsReport& m,
                       const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open output file '" + path + "'");
  }
  print_metrics(out, m);
  for (const Event& ev : traj.events) {
    switch (ev.kind) {
      case EventKind::tube_entry:
        out << "event: tube_entry at t = " << fmt(ev.time) << "\n";
        break;
      case EventKind::envelope_violation:
        out << "event: envelope_violation at t = " << fmt(ev.time) << "\n";
        break;
      case EventKind::infeasible_abort:
        out << "event: infeasible_abort at t = " << fmt(ev.time) << "\n";
        break;
    }
  }
}

std::string gain_cell(const std::optional<double>& gain) {
  return gain ? fmt(*gain) : std::string("undefined");
}

void write_comparison_csv(const std::string& path, const Comparison& cmp) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open output file '" + path + "'");
  }
  out << "metric,non-PPF,PPF-aware,Gain(%)\n";
  out << "J_u," << fmt(cmp.baseline.J_u) << ',' << fmt(cmp.ppf.J_u) << ','
      << gain_cell(cmp.gain_J_u) << '\n';
  out << "J_peak," << fmt(cmp.baseline.J_peak) << ',' << fmt(cmp.ppf.J_peak)
      << ",--\n";
  out << "J_viol," << fmt(cmp.baseline.J_viol) << ',' << fmt(cmp.ppf.J_viol)
      << ',' << (cmp.ppf_no_violation ? "No violation" : "--") << '\n';
  out << "IAE," << fmt(cmp.baseline.IAE) << ',' << fmt(cmp.ppf.IAE) << ','
      << gain_cell(cmp.gain_IAE) << '\n';
  out << "ISE," << fmt(cmp.baseline.ISE) << ',' << fmt(cmp.ppf.ISE) << ','
      << gain_cell(cmp.gain_ISE) << '\n';
}

void print_comparison(std::ostream& out, const Comparison& cmp) {
  const auto row = [&](const char* name, double baseline, double ppf,
                       const std::string& gain) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-8s %14s %14s %14s\n", name,
                  fmt(baseline).c_str(), fmt(ppf).c_str(), gain.c_str());
    out << buf;
  };
  char head[128];
  std::snprintf(head, sizeof(head), "%-8s %14s %14s %14s\n", "metric", "non-PPF",
                "PPF-aware", "Gain(%)");
  out << head;
  row("J_u", cmp.baseline.J_u, cmp.ppf.J_u, gain_cell(cmp.gain_J_u));
  row("J_peak", cmp.baseline.J_peak, cmp.ppf.J_peak, "--");
  row("J_viol", cmp.baseline.J_viol, cmp.ppf.J_viol,
      cmp.ppf_no_violation ? "No violation" : "--");
  row("IAE", cmp.baseline.IAE, cmp.ppf.IAE, gain_cell(cmp.gain_IAE));
  row("ISE", cmp.baseline.ISE, cmp.ppf.ISE, gain_cell(cmp.gain_ISE));
  out << "\nmatched-peak protocol: both laws unsaturated; u_max non-PPF = "
      << fmt(cmp.baseline.u_max) << ", PPF-aware = " << fmt(cmp.ppf.u_max)
      << "\n";
  out << "verdict: "
      << (cmp.ppf_no_violation
              ? "No violation (PPF-aware |e1| stayed inside the envelope)"
              : "envelope violated (J_viol = " + fmt(cmp.ppf.J_viol) + ")")
      << "\n";
}

// Report + exit code for a run that failed before or during integration.
// Returns kExitSuccess when the trajectory is clean (or only carries
// never-halting diagnostic events).
int diagnose_run(const Trajectory& traj, std::ostream& err) {
  if (traj.has_event(EventKind::infeasible_abort)) {
    err << "error: infeasible initial condition; the envelope requires "
           "|x(0)| < rho(0). Set allow_envelope_inflation = true to rerun "
           "with rho0 inflated to 1.1 |x(0)|.\n";
    return kExitInfeasibleRun;
  }
  if (traj.halted && traj.has_event(EventKind::envelope_violation)) {
    err << "error: envelope_violation at t = "
        << fmt(*traj.event_time(EventKind::envelope_violation))
        << "; run halted (the transformation is undefined outside the "
           "envelope). Outputs cover the completed prefix.\n";
    return kExitInfeasibleRun;
  }
  return kExitSuccess;
}

void print_bounds(std::ostream& out, const HybridGainSpec& spec,
                  double d_bar_outer, double d_bar_inner, double w0) {
  out << "w0 (initial |surface|) = " << fmt(w0) << "\n";
  try {
    const ReachTimeBounds b = reach_time_bounds(spec, d_bar_outer, w0);
    const double t_in = inner_settle_bound(spec.inner, spec.eps0, d_bar_inner);
    out << "T_A   = " << fmt(b.t_a) << "\n";
    out << "T_B   = " << fmt(b.t_b) << "\n";
    out << "T_out = " << fmt(b.t_out) << "\n";
    out << "T_in  = " << fmt(t_in) << "\n";
    out << "total = " << fmt(b.t_out + t_in) << "\n";
  } catch (const InfeasibleGainError& e) {
    out << "bounds unavailable: " << e.what() << "\n";
    throw;
  }
}

struct FeasibilityInputs {
  double d_bar_outer;
  double d_bar_inner;
  double w0;
  std::optional<double> xi0;  // first-order only
  FeasibilityReport report;
};

FeasibilityInputs feasibility_inputs(const Scenario& sc) {
  FeasibilityInputs in{};
  if (sc.controller == ControllerSelect::first_order) {
    const TransformedState ts = xi_from_state(*sc.pf, sc.x0, 0.0);
    in.xi0 = ts.xi;
    in.w0 = std::abs(ts.xi);
    in.report = check_feasibility_first_order(sc.gain, *sc.pf,
                                              sc.disturbance.d_max, ts.xi);
  } else {
    const double psi0 = sc.controller == ControllerSelect::ppf
                            ? sc.e1_0 / sc.pf->rho0
                            : sc.e1_0;
    in.w0 = std::abs(sc.e2_0 + sc.sliding.c * psi0);
    in.report = check_feasibility_second_order(sc.gain, sc.disturbance.d_max);
  }
  in.d_bar_outer = in.report.d_bar_outer;
  in.d_bar_inner = in.report.d_bar_inner;
  return in;
}

void print_feasibility(std::ostream& out, const Scenario& sc,
                       const FeasibilityInputs& in) {
  if (in.xi0) {
    out << "xi0 = " << fmt(*in.xi0) << "\n";
  }
  out << "d_bar (outer, at initial offset) = " << fmt(in.d_bar_outer) << "\n";
  out << "d_bar (inner, at the tube edge)  = " << fmt(in.d_bar_inner) << "\n";
  out << "eta0 = k0 - d_bar = " << fmt(in.report.eta0) << "  -> outer branch "
      << (in.report.outer_ok ? "OK" : "INSUFFICIENT") << "\n";
  out << "inner gain at the tube edge = "
      << fmt(eval_inner_gain(sc.gain.inner, sc.gain.eps)) << "\n";
  out << "eta_eps = G_in(eps) - d_bar = " << fmt(in.report.eta_eps)
      << "  -> inner branch " << (in.report.inner_ok ? "OK" : "INSUFFICIENT")
      << "\n";
  out << "residual radius = "
      << (in.report.residual_radius
              ? fmt(*in.report.residual_radius)
              : std::string("none (residual set exceeds the tube)"))
      << "\n";
}

}  // namespace

int record_stride_from_env() {
  const char* text = std::getenv("FTSMC_RECORD_STRIDE");
  if (text == nullptr || *text == '\0') return 1;
  int stride = 0;
  const char* end = text + std::string(text).size();
  const auto [ptr, ec] = std::from_chars(text, end, stride);
  if (ec != std::errc() || ptr != end || stride < 1) {
    throw ConfigError(std::string("FTSMC_RECORD_STRIDE must be a positive "
                                  "integer, got '") + text + "'");
  }
  return stride;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 std::ostream& out, std::ostream& err) {
  try {
    const Scenario sc = load_scenario(scenario_path);
    const int stride = record_stride_from_env();
    const RunResult run = run_scenario(sc, stride, err, std::nullopt);
    if (run.traj.has_event(EventKind::infeasible_abort)) {
      return diagnose_run(run.traj, err);
    }
    std::filesystem::create_directories(out_dir);
    write_trajectory_csv(out_dir + "/trajectory.csv", run.traj);
    const MetricsReport m = compute_metrics(run.traj, run.pf);
    write_metrics_txt(out_dir + "/metrics.txt", m, run.traj);
    out << "samples: " << run.traj.size() << " (stride " << stride << ")\n";
    if (!run.traj.times.empty()) {
      const char* state = run.traj.second_order ? "e1" : "x";
      out << "final: t = " << fmt(run.traj.times.back()) << ", " << state
          << " = " << fmt(run.traj.e1.back()) << "\n";
    }
    print_metrics(out, m);
    out << "wrote " << out_dir << "/trajectory.csv and " << out_dir
        << "/metrics.txt\n";
    return diagnose_run(run.traj, err);
  } catch (const NumericDivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_compare(const std::string& ppf_path, const std::string& baseline_path,
                const std::string& out_dir, std::ostream& out, std::ostream& err) {
  try {
    const Scenario ppf_sc = load_scenario(ppf_path);
    const Scenario base_sc = load_scenario(baseline_path);
    if (ppf_sc.controller != ControllerSelect::ppf) {
      throw ConfigMismatchError("compare: first scenario must set controller = "
                                "ppf (" + ppf_path + ")");
    }
    if (base_sc.controller != ControllerSelect::baseline) {
      throw ConfigMismatchError("compare: second scenario must set controller "
                                "= baseline (" + baseline_path + ")");
    }
    if (!(ppf_sc.plant == base_sc.plant)) {
      throw ConfigMismatchError("compare: [plant] blocks differ");
    }
    if (!(ppf_sc.disturbance == base_sc.disturbance)) {
      throw ConfigMismatchError("compare: [disturbance] blocks differ");
    }
    if (!(ppf_sc.sim == base_sc.sim)) {
      throw ConfigMismatchError("compare: [sim] blocks differ (horizon, dt and "
                                "integrator must match)");
    }
    const int stride = record_stride_from_env();
    const RunResult ppf_run = run_scenario(ppf_sc, stride, err, std::nullopt);
    if (ppf_run.traj.has_event(EventKind::infeasible_abort)) {
      return diagnose_run(ppf_run.traj, err);
    }
    // The baseline ignores the envelope; evaluating it against the PPF
    // scenario's envelope gives the diagnostic J_peak / J_viol columns.
    const RunResult base_run = run_scenario(base_sc, stride, err, ppf_run.pf);
    std::filesystem::create_directories(out_dir);
    write_trajectory_csv(out_dir + "/trajectory_ppf.csv", ppf_run.traj);
    write_trajectory_csv(out_dir + "/trajectory_baseline.csv", base_run.traj);
    const MetricsReport pm = compute_metrics(ppf_run.traj, ppf_run.pf);
    const MetricsReport bm = compute_metrics(base_run.traj, ppf_run.pf);
    const Comparison cmp = compare(pm, bm);
    write_comparison_csv(out_dir + "/comparison.csv", cmp);
    print_comparison(out, cmp);
    out << "wrote " << out_dir << "/trajectory_ppf.csv, " << out_dir
        << "/trajectory_baseline.csv and " << out_dir << "/comparison.csv\n";
    return diagnose_run(ppf_run.traj, err);
  } catch (const NumericDivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_feasibility(const std::string& scenario_path, std::ostream& out,
                    std::ostream& err) {
  try {
    const Scenario sc = load_scenario(scenario_path);
    const FeasibilityInputs in = feasibility_inputs(sc);
    print_feasibility(out, sc, in);
    const bool feasible = in.report.outer_ok && in.report.inner_ok;
    if (feasible) {
      print_bounds(out, sc.gain, in.d_bar_outer, in.d_bar_inner, in.w0);
    }
    out << "verdict: " << (feasible ? "FEASIBLE" : "INFEASIBLE") << "\n";
    return feasible ? kExitSuccess : kExitInfeasibleGain;
  } catch (const InfeasibilityError& e) {
    err << "error: infeasible initial condition (" << e.what() << ")\n";
    return kExitInfeasibleGain;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_bounds(const std::string& scenario_path, std::ostream& out,
               std::ostream& err) {
  try {
    const Scenario sc = load_scenario(scenario_path);
    const FeasibilityInputs in = feasibility_inputs(sc);
    print_bounds(out, sc.gain, in.d_bar_outer, in.d_bar_inner, in.w0);
    return kExitSuccess;
  } catch (const InfeasibleGainError&) {
    return kExitInfeasibleGain;  // print_bounds already reported the reason
  } catch (const InfeasibilityError& e) {
    err << "error: infeasible initial condition (" << e.what() << ")\n";
    return kExitInfeasibleGain;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace ftsmc
