#include "ftsmc/control.hpp"

#include <cmath>
#include <string>

#include "ftsmc/scalar_math.hpp"

namespace ftsmc {

SecondOrderPlant::SecondOrderPlant(double omega_n_, double zeta_)
    : omega_n(omega_n_), zeta(zeta_) {
  if (!(omega_n > 0.0)) {
    throw DomainError("SecondOrderPlant: require omega_n > 0");
  }
  if (!(zeta > 0.0)) {
    throw DomainError("SecondOrderPlant: require zeta > 0");
  }
}

SlidingConfig::SlidingConfig(double c_, double boundary_layer_, SignMode sign_mode_)
    : c(c_), boundary_layer(boundary_layer_), sign_mode(sign_mode_) {
  if (!(c > 0.0)) throw DomainError("SlidingConfig: require c > 0");
  if (sign_mode == SignMode::smoothed && !(boundary_layer > 0.0)) {
    throw DomainError("SlidingConfig: smoothed sign requires boundary_layer > 0");
  }
  if (!(boundary_layer >= 0.0)) {
    throw DomainError("SlidingConfig: boundary_layer must be >= 0");
  }
}

double apply_sign(const SlidingConfig& cfg, double s) {
  return cfg.sign_mode == SignMode::hard ? hard_sign(s)
                                         : smooth_sign(s, cfg.boundary_layer);
}

double first_order_control(const PerformanceFunction& pf, const HybridGainSpec& spec,
                           double x, double t, const SlidingConfig& sign_cfg) {
  const TransformedState ts = xi_from_state(pf, x, t);
  const double psi = x / rho(pf, t);  // erf(xi) without a second evaluation
  return rho_dot(pf, t) * psi -
         (1.0 / ts.chi) * eval_gain(spec, std::abs(ts.xi)) * apply_sign(sign_cfg, ts.xi);
}

SlidingState sliding_variable(const PerformanceFunction& pf, const SlidingConfig& cfg,
                              double e1, double e2, double t) {
  const TransformedState ts = xi_from_state(pf, e1, t);
  return {e2 + cfg.c * (e1 / rho(pf, t)), ts.xi};
}

double second_order_ppf_control(const PerformanceFunction& pf,
                                const SecondOrderPlant& plant,
                                const HybridGainSpec& spec, const SlidingConfig& cfg,
                                double e1, double e2, double t) {
  const SlidingState sv = sliding_variable(pf, cfg, e1, e2, t);
  const double envelope = rho(pf, t);
  const double psi = e1 / envelope;
  const double linear = plant.omega_n * plant.omega_n * envelope * psi +
                        (2.0 * plant.zeta * plant.omega_n - cfg.c / envelope) * e2 +
                        cfg.c * rho_dot(pf, t) / envelope * psi;
  return linear - eval_gain(spec, std::abs(sv.s)) * apply_sign(cfg, sv.s);
}

double second_order_baseline_control(const SecondOrderPlant& plant,
                                     const HybridGainSpec& spec,
                                     const SlidingConfig& cfg, double e1, double e2) {
  const double s_b = e2 + cfg.c * e1;
  const double linear = plant.omega_n * plant.omega_n * e1 +
                        (2.0 * plant.zeta * plant.omega_n - cfg.c) * e2;
  return linear - eval_gain(spec, std::abs(s_b)) * apply_sign(cfg, s_b);
}

}  // namespace ftsmc
