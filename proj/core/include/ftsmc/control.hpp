#pragma once

#include "ftsmc/gain.hpp"
#include "ftsmc/ppf.hpp"

namespace ftsmc {

// Known double-integrator-with-damping plant: f(e1, e2) = -2 zeta omega_n e2
// - omega_n^2 e1.
struct SecondOrderPlant {
  double omega_n;
  double zeta;

  SecondOrderPlant(double omega_n_, double zeta_);

  friend bool operator==(const SecondOrderPlant&, const SecondOrderPlant&) = default;

  double f(double e1, double e2) const {
    return -2.0 * zeta * omega_n * e2 - omega_n * omega_n * e1;
  }
};

enum class SignMode { hard, smoothed };

struct SlidingConfig {
  double c;
  double boundary_layer;
  SignMode sign_mode;

  SlidingConfig(double c_, double boundary_layer_, SignMode sign_mode_);

  friend bool operator==(const SlidingConfig&, const SlidingConfig&) = default;
};

// Sliding variable and the transformed coordinate at one second-order state.
struct SlidingState {
  double s;
  double xi;
};

// The switching nonlinearity selected by the config.
double apply_sign(const SlidingConfig& cfg, double s);

// First-order law u = rho_dot(t) Psi(xi) - (1/chi) G_hyb(|xi|) sgn(xi), where
// Psi(xi) = erf(xi) = x/rho(t). Drives xi_dot = -G_hyb sgn(xi) + chi d.
double first_order_control(const PerformanceFunction& pf, const HybridGainSpec& spec,
                           double x, double t, const SlidingConfig& sign_cfg);

// s = e2 + c Psi(xi) with Psi(xi) = erf(erf_inv(e1/rho)) = e1/rho(t) exactly.
SlidingState sliding_variable(const PerformanceFunction& pf, const SlidingConfig& cfg,
                              double e1, double e2, double t);

// Four-term law u = omega_n^2 rho Psi + (2 zeta omega_n - c/rho) e2
// + (c rho_dot / rho) Psi - G_hyb(|s|) sgn(s); cancels the plant and envelope
// terms exactly so the closed loop is s_dot = -G_hyb(|s|) sgn(s) + d.
double second_order_ppf_control(const PerformanceFunction& pf,
                                const SecondOrderPlant& plant,
                                const HybridGainSpec& spec, const SlidingConfig& cfg,
                                double e1, double e2, double t);

// Envelope-free analog on the linear surface s_b = e2 + c e1: u = omega_n^2 e1
// + (2 zeta omega_n - c) e2 - G_hyb(|s_b|) sgn(s_b), giving s_b_dot =
// -G_hyb sgn(s_b) + d. Takes no envelope by construction.
double second_order_baseline_control(const SecondOrderPlant& plant,
                                     const HybridGainSpec& spec,
                                     const SlidingConfig& cfg, double e1, double e2);

}  // namespace ftsmc
