#include "ftsmc/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "ftsmc/errors.hpp"

namespace ftsmc {

namespace {

struct RawValue {
  std::string text;
  int line;
};

// (section, key) -> value; stable iteration keeps error messages deterministic.
using RawMap = std::map<std::string, RawValue>;

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

const std::map<std::string, std::set<std::string>>& section_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"plant", {"omega_n", "zeta"}},
      {"ppf", {"rho0", "rho_inf", "lambda"}},
      {"gain",
       {"k0", "k1", "gamma_out", "eps0", "eps", "inner.variant", "a", "b",
        "gamma_in", "alpha", "Lambda"}},
      {"disturbance", {"d_max", "freq"}},
      {"sim", {"horizon", "dt", "integrator"}},
      {"controller",
       {"controller", "c", "boundary_layer", "sign_mode", "x0", "e1_0", "e2_0",
        "allow_envelope_inflation"}},
  };
  return keys;
}

RawMap read_raw(std::istream& in, const std::string& name) {
  RawMap raw;
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(name + ": malformed section header '" + line + "' (line " +
                          std::to_string(line_no) + ")", "", line_no);
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!section_keys().count(section)) {
        throw ConfigError(name + ": unknown section '" + section + "' (line " +
                          std::to_string(line_no) + ")", section, line_no);
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(name + ": expected 'key = value' (line " +
                        std::to_string(line_no) + ")", "", line_no);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw ConfigError(name + ": key '" + key + "' before any section (line " +
                        std::to_string(line_no) + ")", key, line_no);
    }
    if (!section_keys().at(section).count(key)) {
      throw ConfigError(name + ": unknown key '" + key + "' in [" + section +
                        "] (line " + std::to_string(line_no) + ")", key, line_no);
    }
    if (value.empty()) {
      throw ConfigError(name + ": empty value for '" + key + "' (line " +
                        std::to_string(line_no) + ")", key, line_no);
    }
    const std::string qualified = section + "." + key;
    if (raw.count(qualified)) {
      throw ConfigError(name + ": duplicate key '" + key + "' in [" + section +
                        "] (line " + std::to_string(line_no) + ")", key, line_no);
    }
    raw[qualified] = {value, line_no};
  }
  return raw;
}

// Pulls one raw entry, consuming it so leftovers can be flagged at the end.
class RawReader {
 public:
  RawReader(RawMap raw, std::string name) : raw_(std::move(raw)), name_(std::move(name)) {}

  bool has(const std::string& qualified) const { return raw_.count(qualified) > 0; }

  std::string take_string(const std::string& qualified) {
    const auto it = raw_.find(qualified);
    if (it == raw_.end()) {
      throw ConfigError(name_ + ": missing required key '" + qualified + "'", qualified, 0);
    }
    const std::string value = it->second.text;
    raw_.erase(it);
    return value;
  }

  double take_double(const std::string& qualified) {
    const auto it = raw_.find(qualified);
    if (it == raw_.end()) {
      throw ConfigError(name_ + ": missing required key '" + qualified + "'", qualified, 0);
    }
    const RawValue entry = it->second;
    raw_.erase(it);
    const char* begin = entry.text.data();
    const char* end = begin + entry.text.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
      throw ConfigError(name_ + ": '" + qualified + "' is not a number: '" +
                        entry.text + "' (line " + std::to_string(entry.line) + ")",
                        qualified, entry.line);
    }
    return value;
  }

  bool take_bool(const std::string& qualified) {
    const auto it = raw_.find(qualified);
    if (it == raw_.end()) {
      throw ConfigError(name_ + ": missing required key '" + qualified + "'", qualified, 0);
    }
    const RawValue entry = it->second;
    raw_.erase(it);
    if (entry.text == "true") return true;
    if (entry.text == "false") return false;
    throw ConfigError(name_ + ": '" + qualified + "' must be true or false (line " +
                      std::to_string(entry.line) + ")", qualified, entry.line);
  }

  void forbid(const std::string& qualified, const std::string& why) {
    const auto it = raw_.find(qualified);
    if (it != raw_.end()) {
      throw ConfigError(name_ + ": key '" + qualified + "' is not allowed " + why +
                        " (line " + std::to_string(it->second.line) + ")",
                        qualified, it->second.line);
    }
  }

  void finish() const {
    if (!raw_.empty()) {
      const auto& [qualified, entry] = *raw_.begin();
      throw ConfigError(name_ + ": key '" + qualified + "' does not apply to this "
                        "scenario type (line " + std::to_string(entry.line) + ")",
                        qualified, entry.line);
    }
  }

  const std::string& name() const { return name_; }

 private:
  RawMap raw_;
  std::string name_;
};

// Re-raises a constructor DomainError as a ConfigError naming the block.
template <typename Build>
auto checked(const std::string& name, const std::string& block, Build&& build) {
  try {
    return build();
  } catch (const DomainError& e) {
    throw ConfigError(name + ": invalid [" + block + "] block: " + e.what());
  }
}

InnerGain parse_inner(RawReader& r, double gamma_out) {
  const std::string variant = r.take_string("gain.inner.variant");
  if (variant == "mixed_power") {
    r.forbid("gain.Lambda", "with inner.variant = mixed_power");
    const double a = r.take_double("gain.a");
    const double b = r.take_double("gain.b");
    // The inner exponent defaults to the outer one when not given.
    const double gamma_in =
        r.has("gain.gamma_in") ? r.take_double("gain.gamma_in") : gamma_out;
    const double alpha = r.take_double("gain.alpha");
    return checked(r.name(), "gain",
                   [&] { return InnerGain(MixedPowerGain(a, b, gamma_in, alpha)); });
  }
  if (variant == "gaussian") {
    r.forbid("gain.a", "with inner.variant = gaussian");
    r.forbid("gain.b", "with inner.variant = gaussian");
    r.forbid("gain.gamma_in", "with inner.variant = gaussian");
    r.forbid("gain.alpha", "with inner.variant = gaussian");
    const double Lambda = r.take_double("gain.Lambda");
    return checked(r.name(), "gain",
                   [&] { return InnerGain(GaussianGain(Lambda)); });
  }
  throw ConfigError(r.name() +
                    ": gain.inner.variant must be mixed_power or gaussian, got '" +
                    variant + "'", "gain.inner.variant", 0);
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& name) {
  RawReader r(read_raw(in, name), name);

  const std::string controller_text = r.take_string("controller.controller");
  ControllerSelect controller;
  if (controller_text == "first_order") {
    controller = ControllerSelect::first_order;
  } else if (controller_text == "ppf") {
    controller = ControllerSelect::ppf;
  } else if (controller_text == "baseline") {
    controller = ControllerSelect::baseline;
  } else {
    throw ConfigError(name + ": controller must be first_order, ppf, or baseline, "
                      "got '" + controller_text + "'", "controller.controller", 0);
  }

  // The state keys must agree with the selected order.
  if (controller == ControllerSelect::first_order) {
    r.forbid("controller.e1_0", "for a first_order scenario (use x0)");
    r.forbid("controller.e2_0", "for a first_order scenario (use x0)");
    r.forbid("controller.c", "for a first_order scenario (no sliding surface)");
    r.forbid("plant.omega_n", "for a first_order scenario");
    r.forbid("plant.zeta", "for a first_order scenario");
  } else {
    r.forbid("controller.x0", "for a second-order scenario (use e1_0/e2_0)");
  }
  if (controller == ControllerSelect::baseline) {
    r.forbid("ppf.rho0", "for a baseline scenario (no envelope)");
    r.forbid("ppf.rho_inf", "for a baseline scenario (no envelope)");
    r.forbid("ppf.lambda", "for a baseline scenario (no envelope)");
    r.forbid("controller.allow_envelope_inflation", "for a baseline scenario");
  }

  std::optional<PerformanceFunction> pf;
  if (controller != ControllerSelect::baseline) {
    const double rho0 = r.take_double("ppf.rho0");
    const double rho_inf = r.take_double("ppf.rho_inf");
    const double lambda = r.take_double("ppf.lambda");
    pf = checked(name, "ppf",
                 [&] { return PerformanceFunction(rho0, rho_inf, lambda); });
  }

  std::optional<SecondOrderPlant> plant;
  if (controller != ControllerSelect::first_order) {
    const double omega_n = r.take_double("plant.omega_n");
    const double zeta = r.take_double("plant.zeta");
    plant = checked(name, "plant", [&] { return SecondOrderPlant(omega_n, zeta); });
  }

  const double k0 = r.take_double("gain.k0");
  const double k1 = r.take_double("gain.k1");
  const double gamma_out = r.take_double("gain.gamma_out");
  const double eps0 = r.take_double("gain.eps0");
  const double eps = r.take_double("gain.eps");
  InnerGain inner = parse_inner(r, gamma_out);
  const HybridGainSpec gain = checked(name, "gain", [&] {
    return HybridGainSpec(k0, k1, gamma_out, eps0, eps, inner);
  });

  const double d_max = r.take_double("disturbance.d_max");
  const double freq = r.take_double("disturbance.freq");
  const Disturbance disturbance =
      checked(name, "disturbance", [&] { return Disturbance(d_max, freq); });

  const double horizon = r.take_double("sim.horizon");
  const double dt = r.take_double("sim.dt");
  Integrator integrator = Integrator::rk4;
  if (r.has("sim.integrator")) {
    const std::string text = r.take_string("sim.integrator");
    if (text == "rk4") {
      integrator = Integrator::rk4;
    } else if (text == "euler") {
      integrator = Integrator::euler;
    } else {
      throw ConfigError(name + ": sim.integrator must be rk4 or euler, got '" +
                        text + "'", "sim.integrator", 0);
    }
  }
  const SimConfig sim = checked(name, "sim",
                                [&] { return SimConfig(horizon, dt, integrator); });

  SignMode sign_mode = SignMode::hard;
  if (r.has("controller.sign_mode")) {
    const std::string text = r.take_string("controller.sign_mode");
    if (text == "hard") {
      sign_mode = SignMode::hard;
    } else if (text == "smoothed") {
      sign_mode = SignMode::smoothed;
    } else {
      throw ConfigError(name + ": controller.sign_mode must be hard or smoothed, "
                        "got '" + text + "'", "controller.sign_mode", 0);
    }
  }
  const double boundary_layer =
      r.has("controller.boundary_layer") ? r.take_double("controller.boundary_layer") : 0.0;
  // First-order scenarios have no sliding surface; c only shapes second-order
  // laws, so a fixed placeholder keeps SlidingConfig valid.
  const double c = controller == ControllerSelect::first_order
                       ? 1.0
                       : r.take_double("controller.c");
  const SlidingConfig sliding = checked(name, "controller", [&] {
    return SlidingConfig(c, boundary_layer, sign_mode);
  });

  Scenario scenario{controller, plant,       pf,     gain,
                    disturbance, sim,        sliding};
  if (controller == ControllerSelect::first_order) {
    scenario.x0 = r.take_double("controller.x0");
  } else {
    scenario.e1_0 = r.take_double("controller.e1_0");
    scenario.e2_0 = r.take_double("controller.e2_0");
  }
  if (r.has("controller.allow_envelope_inflation")) {
    scenario.allow_envelope_inflation = r.take_bool("controller.allow_envelope_inflation");
  }

  r.finish();
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open scenario file '" + path + "'");
  }
  return parse_scenario(in, path);
}

std::string dump_scenario(const Scenario& scenario) {
  std::ostringstream out;
  if (scenario.plant) {
    out << "[plant]\n";
    out << "omega_n = " << fmt_double(scenario.plant->omega_n) << "\n";
    out << "zeta = " << fmt_double(scenario.plant->zeta) << "\n\n";
  }
  if (scenario.pf) {
    out << "[ppf]\n";
    out << "rho0 = " << fmt_double(scenario.pf->rho0) << "\n";
    out << "rho_inf = " << fmt_double(scenario.pf->rho_inf) << "\n";
    out << "lambda = " << fmt_double(scenario.pf->lambda) << "\n\n";
  }
  out << "[gain]\n";
  out << "k0 = " << fmt_double(scenario.gain.k0) << "\n";
  out << "k1 = " << fmt_double(scenario.gain.k1) << "\n";
  out << "gamma_out = " << fmt_double(scenario.gain.gamma_out) << "\n";
  out << "eps0 = " << fmt_double(scenario.gain.eps0) << "\n";
  out << "eps = " << fmt_double(scenario.gain.eps) << "\n";
  if (const auto* mp = std::get_if<MixedPowerGain>(&scenario.gain.inner)) {
    out << "inner.variant = mixed_power\n";
    out << "a = " << fmt_double(mp->a) << "\n";
    out << "b = " << fmt_double(mp->b) << "\n";
    out << "gamma_in = " << fmt_double(mp->gamma) << "\n";
    out << "alpha = " << fmt_double(mp->alpha) << "\n";
  } else {
    out << "inner.variant = gaussian\n";
    out << "Lambda = " << fmt_double(std::get<GaussianGain>(scenario.gain.inner).Lambda)
        << "\n";
  }
  out << "\n[disturbance]\n";
  out << "d_max = " << fmt_double(scenario.disturbance.d_max) << "\n";
  out << "freq = " << fmt_double(scenario.disturbance.freq) << "\n";
  out << "\n[sim]\n";
  out << "horizon = " << fmt_double(scenario.sim.horizon) << "\n";
  out << "dt = " << fmt_double(scenario.sim.dt) << "\n";
  out << "integrator = "
      << (scenario.sim.integrator == Integrator::rk4 ? "rk4" : "euler") << "\n";
  out << "\n[controller]\n";
  switch (scenario.controller) {
    case ControllerSelect::first_order: out << "controller = first_order\n"; break;
    case ControllerSelect::ppf: out << "controller = ppf\n"; break;
    case ControllerSelect::baseline: out << "controller = baseline\n"; break;
  }
  if (scenario.controller == ControllerSelect::first_order) {
    out << "x0 = " << fmt_double(scenario.x0) << "\n";
  } else {
    out << "c = " << fmt_double(scenario.sliding.c) << "\n";
    out << "e1_0 = " << fmt_double(scenario.e1_0) << "\n";
    out << "e2_0 = " << fmt_double(scenario.e2_0) << "\n";
  }
  out << "sign_mode = "
      << (scenario.sliding.sign_mode == SignMode::hard ? "hard" : "smoothed") << "\n";
  if (scenario.sliding.boundary_layer > 0.0) {
    out << "boundary_layer = " << fmt_double(scenario.sliding.boundary_layer) << "\n";
  }
  if (scenario.allow_envelope_inflation) {
    out << "allow_envelope_inflation = true\n";
  }
  return out.str();
}

}  // namespace ftsmc
