#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ftsmc/control.hpp"
#include "ftsmc/gain.hpp"
#include "ftsmc/ppf.hpp"
#include "ftsmc/sim.hpp"

namespace ftsmc {

enum class ControllerSelect { first_order, ppf, baseline };

// One fully validated simulation scenario, loaded from the sectioned key-value
// format described in the README. plant is absent for first-order scenarios;
// pf is absent for baseline scenarios (the baseline law never reads it).
struct Scenario {
  ControllerSelect controller;
  std::optional<SecondOrderPlant> plant;
  std::optional<PerformanceFunction> pf;
  HybridGainSpec gain;
  Disturbance disturbance;
  SimConfig sim;
  SlidingConfig sliding;
  double x0 = 0.0;    // first-order initial state
  double e1_0 = 0.0;  // second-order initial error
  double e2_0 = 0.0;
  bool allow_envelope_inflation = false;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Parses a scenario document. Unknown sections/keys, duplicates, malformed
// values, missing required keys, and violated invariants all raise ConfigError
// with the offending key and line where applicable. `name` labels messages.
Scenario parse_scenario(std::istream& in, const std::string& name);

Scenario load_scenario(const std::string& path);

// Canonical text form; load(dump(s)) is equivalent to s (doubles round-trip
// exactly).
std::string dump_scenario(const Scenario& scenario);

}  // namespace ftsmc
