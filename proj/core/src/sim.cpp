#include "ftsmc/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ftsmc/scalar_math.hpp"

namespace ftsmc {

Disturbance::Disturbance(double d_max_, double freq_) : d_max(d_max_), freq(freq_) {
  if (!(d_max >= 0.0)) throw DomainError("Disturbance: require d_max >= 0");
  if (!(freq > 0.0)) throw DomainError("Disturbance: require freq > 0");
}

SimConfig::SimConfig(double horizon_, double dt_, Integrator integrator_,
                     int record_stride_)
    : horizon(horizon_), dt(dt_), integrator(integrator_),
      record_stride(record_stride_) {
  if (!(dt > 0.0)) throw DomainError("SimConfig: require dt > 0");
  if (!(horizon >= dt)) throw DomainError("SimConfig: require horizon >= dt");
  if (record_stride < 1) throw DomainError("SimConfig: require record_stride >= 1");
  if (horizon / dt > 2e7) {
    throw DomainError("SimConfig: horizon/dt exceeds the sample budget (2e7 steps)");
  }
}

bool Trajectory::has_event(EventKind kind) const {
  return event_time(kind).has_value();
}

std::optional<double> Trajectory::event_time(EventKind kind) const {
  for (const Event& event : events) {
    if (event.kind == kind) return event.time;
  }
  return std::nullopt;
}

double eval_disturbance(const Disturbance& dist, double t) {
  if (!(t >= 0.0)) throw DomainError("eval_disturbance: t must be >= 0");
  return dist.d_max * std::sin(dist.freq * t);
}

namespace {

// Classical explicit fixed-step integrators with the right-hand side (control
// and disturbance included) evaluated at each stage time and stage state.
template <std::size_t N, typename F>
std::array<double, N> rk4_step(F&& f, double t, const std::array<double, N>& y,
                               double dt) {
  const auto k1 = f(t, y);
  std::array<double, N> y2;
  for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + 0.5 * dt * k1[i];
  const auto k2 = f(t + 0.5 * dt, y2);
  for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + 0.5 * dt * k2[i];
  const auto k3 = f(t + 0.5 * dt, y2);
  for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + dt * k3[i];
  const auto k4 = f(t + dt, y2);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

template <std::size_t N, typename F>
std::array<double, N> euler_step(F&& f, double t, const std::array<double, N>& y,
                                 double dt) {
  const auto k = f(t, y);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + dt * k[i];
  return out;
}

bool outside_envelope(double x, double envelope) {
  return !(std::abs(x) < envelope * (1.0 - kFeasibilityMargin));
}

}  // namespace

Trajectory run_first_order(const PerformanceFunction& pf, const HybridGainSpec& spec,
                           const Disturbance& dist, const SimConfig& cfg, double x0,
                           const SlidingConfig& sign_cfg) {
  Trajectory traj;
  traj.second_order = false;

  if (outside_envelope(x0, rho(pf, 0.0))) {
    traj.events.push_back({EventKind::infeasible_abort, 0.0});
    traj.halted = true;
    return traj;
  }

  const auto rhs = [&](double t, const std::array<double, 1>& y) {
    return std::array<double, 1>{
        first_order_control(pf, spec, y[0], t, sign_cfg) + eval_disturbance(dist, t)};
  };

  const long n_steps = std::lround(cfg.horizon / cfg.dt);
  std::array<double, 1> y{x0};
  bool tube_entered = false;

  const auto record = [&](double t) {
    traj.times.push_back(t);
    traj.e1.push_back(y[0]);
    traj.xi.push_back(xi_from_state(pf, y[0], t).xi);
    traj.u.push_back(first_order_control(pf, spec, y[0], t, sign_cfg));
    traj.d.push_back(eval_disturbance(dist, t));
    traj.rho.push_back(rho(pf, t));
  };
  const auto check_tube = [&](double t) {
    if (!tube_entered && std::abs(xi_from_state(pf, y[0], t).xi) <= spec.eps) {
      tube_entered = true;
      traj.events.push_back({EventKind::tube_entry, t});
    }
  };

  record(0.0);
  check_tube(0.0);

  for (long i = 0; i < n_steps; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;
    const double t_next = static_cast<double>(i + 1) * cfg.dt;
    try {
      y = cfg.integrator == Integrator::rk4 ? rk4_step(rhs, t, y, cfg.dt)
                                            : euler_step(rhs, t, y, cfg.dt);
    } catch (const InfeasibilityError&) {
      // A stage landed outside the envelope: same terminal diagnostic as a
      // step-boundary violation.
      traj.events.push_back({EventKind::envelope_violation, t_next});
      traj.halted = true;
      return traj;
    }
    if (!std::isfinite(y[0])) {
      throw NumericDivergenceError(
          "run_first_order: non-finite state at t=" + std::to_string(t_next), t);
    }
    if (outside_envelope(y[0], rho(pf, t_next))) {
      traj.events.push_back({EventKind::envelope_violation, t_next});
      traj.halted = true;
      return traj;
    }
    check_tube(t_next);
    if ((i + 1) % cfg.record_stride == 0) record(t_next);
  }
  return traj;
}

Trajectory run_second_order(const std::optional<PerformanceFunction>& pf,
                            const SecondOrderPlant& plant, const HybridGainSpec& spec,
                            const Disturbance& dist, const SimConfig& cfg,
                            std::pair<double, double> e0,
                            const SlidingConfig& sliding_cfg,
                            ControllerKind controller) {
  if (controller == ControllerKind::ppf && !pf.has_value()) {
    throw DomainError("run_second_order: ppf controller requires a performance function");
  }

  Trajectory traj;
  traj.second_order = true;

  if (controller == ControllerKind::ppf && outside_envelope(e0.first, rho(*pf, 0.0))) {
    traj.events.push_back({EventKind::infeasible_abort, 0.0});
    traj.halted = true;
    return traj;
  }

  const auto control = [&](double t, const std::array<double, 2>& y) {
    return controller == ControllerKind::ppf
               ? second_order_ppf_control(*pf, plant, spec, sliding_cfg, y[0], y[1], t)
               : second_order_baseline_control(plant, spec, sliding_cfg, y[0], y[1]);
  };
  const auto surface = [&](double t, const std::array<double, 2>& y) {
    return controller == ControllerKind::ppf
               ? y[1] + sliding_cfg.c * (y[0] / rho(*pf, t))
               : y[1] + sliding_cfg.c * y[0];
  };
  const auto rhs = [&](double t, const std::array<double, 2>& y) {
    return std::array<double, 2>{
        y[1], plant.f(y[0], y[1]) + control(t, y) + eval_disturbance(dist, t)};
  };

  const long n_steps = std::lround(cfg.horizon / cfg.dt);
  std::array<double, 2> y{e0.first, e0.second};
  bool tube_entered = false;
  bool violation_noted = false;  // baseline diagnostic: first crossing only

  const auto record = [&](double t) {
    traj.times.push_back(t);
    traj.e1.push_back(y[0]);
    traj.e2.push_back(y[1]);
    traj.s.push_back(surface(t, y));
    if (controller == ControllerKind::ppf) {
      traj.xi.push_back(xi_from_state(*pf, y[0], t).xi);
    }
    if (pf.has_value()) traj.rho.push_back(rho(*pf, t));
    traj.u.push_back(control(t, y));
    traj.d.push_back(eval_disturbance(dist, t));
  };
  const auto check_events = [&](double t) {
    if (!tube_entered && std::abs(surface(t, y)) <= spec.eps) {
      tube_entered = true;
      traj.events.push_back({EventKind::tube_entry, t});
    }
    if (controller == ControllerKind::baseline && pf.has_value() && !violation_noted &&
        outside_envelope(y[0], rho(*pf, t))) {
      violation_noted = true;
      traj.events.push_back({EventKind::envelope_violation, t});
    }
  };

  record(0.0);
  check_events(0.0);

  for (long i = 0; i < n_steps; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;
    const double t_next = static_cast<double>(i + 1) * cfg.dt;
    try {
      y = cfg.integrator == Integrator::rk4 ? rk4_step(rhs, t, y, cfg.dt)
                                            : euler_step(rhs, t, y, cfg.dt);
    } catch (const InfeasibilityError&) {
      traj.events.push_back({EventKind::envelope_violation, t_next});
      traj.halted = true;
      return traj;
    }
    if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
      throw NumericDivergenceError(
          "run_second_order: non-finite state at t=" + std::to_string(t_next), t);
    }
    if (controller == ControllerKind::ppf &&
        outside_envelope(y[0], rho(*pf, t_next))) {
      traj.events.push_back({EventKind::envelope_violation, t_next});
      traj.halted = true;
      return traj;
    }
    check_events(t_next);
    if ((i + 1) % cfg.record_stride == 0) record(t_next);
  }
  return traj;
}

std::optional<double> measure_reaching_time(const Trajectory& traj, SignalKind which,
                                            double level, double dwell) {
  if (traj.size() == 0) {
    throw EmptyInputError("measure_reaching_time: empty trajectory");
  }
  if (!(level > 0.0)) throw DomainError("measure_reaching_time: level must be > 0");
  if (!(dwell >= 0.0)) throw DomainError("measure_reaching_time: dwell must be >= 0");
  const std::vector<double>& sig = which == SignalKind::xi ? traj.xi : traj.s;
  if (sig.empty()) {
    throw DomainError("measure_reaching_time: requested signal was not recorded "
                      "for this run");
  }

  const std::size_t n = sig.size();
  std::size_t i = 0;
  while (i < n) {
    if (std::abs(sig[i]) > level) {
      ++i;
      continue;
    }
    const double window_end = traj.times[i] + dwell;
    bool ok = true;
    for (std::size_t j = i + 1; j < n && traj.times[j] <= window_end + 1e-12; ++j) {
      if (std::abs(sig[j]) > level) {
        // Any start in [i, j] would contain this excursion; skip past it.
        i = j + 1;
        ok = false;
        break;
      }
    }
    if (ok) return traj.times[i];
  }
  return std::nullopt;
}

}  // namespace ftsmc
