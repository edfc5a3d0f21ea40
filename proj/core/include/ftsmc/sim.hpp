#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ftsmc/control.hpp"

namespace ftsmc {

// Matched sinusoidal disturbance d(t) = d_max sin(freq t).
struct Disturbance {
  double d_max;
  double freq;

  Disturbance(double d_max_, double freq_);

  friend bool operator==(const Disturbance&, const Disturbance&) = default;
};

enum class Integrator { rk4, euler };

struct SimConfig {
  double horizon;
  double dt;
  Integrator integrator = Integrator::rk4;
  int record_stride = 1;

  SimConfig(double horizon_, double dt_, Integrator integrator_ = Integrator::rk4,
            int record_stride_ = 1);

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

enum class EventKind { tube_entry, envelope_violation, infeasible_abort };

struct Event {
  EventKind kind;
  double time;
};

enum class ControllerKind { ppf, baseline };
enum class SignalKind { xi, s };

// Uniformly sampled closed-loop record. Quantities that do not exist for a
// run are left empty: e2 and s for first-order runs, xi for baseline runs,
// rho when no envelope was supplied. e1 holds x for first-order runs.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> e1;
  std::vector<double> e2;
  std::vector<double> xi;
  std::vector<double> s;
  std::vector<double> u;
  std::vector<double> d;
  std::vector<double> rho;
  std::vector<Event> events;
  bool second_order = false;
  bool halted = false;  // stopped before the configured horizon

  std::size_t size() const { return times.size(); }
  bool has_event(EventKind kind) const;
  std::optional<double> event_time(EventKind kind) const;
};

double eval_disturbance(const Disturbance& dist, double t);

// Closed loop x_dot = u + d under the first-order law. Emits tube_entry at the
// first |xi| <= spec.eps; an envelope violation emits its event and halts (the
// transformation is undefined outside). Infeasible x0 yields an
// infeasible_abort event and an otherwise empty trajectory. A non-finite
// state raises NumericDivergenceError carrying the last valid time.
Trajectory run_first_order(const PerformanceFunction& pf, const HybridGainSpec& spec,
                           const Disturbance& dist, const SimConfig& cfg, double x0,
                           const SlidingConfig& sign_cfg);

// Closed loop e1_dot = e2, e2_dot = f(e1,e2) + u + d under the selected
// controller. PPF runs enforce the envelope (violation halts); baseline runs
// evaluate it for diagnostics only when pf is supplied, and never halt on it.
// Tube entry is measured on |s| <= spec.eps.
Trajectory run_second_order(const std::optional<PerformanceFunction>& pf,
                            const SecondOrderPlant& plant, const HybridGainSpec& spec,
                            const Disturbance& dist, const SimConfig& cfg,
                            std::pair<double, double> e0,
                            const SlidingConfig& sliding_cfg, ControllerKind controller);

// Earliest recorded t* such that |signal| <= level for every recorded sample
// in [t*, t* + dwell] (window truncated by the end of the record still counts).
std::optional<double> measure_reaching_time(const Trajectory& traj, SignalKind which,
                                            double level, double dwell);

}  // namespace ftsmc
