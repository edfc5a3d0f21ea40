#pragma once

#include "ftsmc/errors.hpp"

namespace ftsmc {

// States with |x|/rho(t) at or beyond 1 - kFeasibilityMargin are rejected:
// the transformed coordinate diverges at the boundary, and a clean diagnostic
// beats an overflow.
inline constexpr double kFeasibilityMargin = 1e-12;

// Decaying performance envelope rho(t) = (rho0 - rho_inf) e^{-lambda t} + rho_inf.
struct PerformanceFunction {
  double rho0;
  double rho_inf;
  double lambda;

  PerformanceFunction(double rho0_, double rho_inf_, double lambda_);

  friend bool operator==(const PerformanceFunction&,
                         const PerformanceFunction&) = default;
};

// The transformed coordinate xi and the scaling factor chi at one state.
struct TransformedState {
  double xi;
  double chi;
};

double rho(const PerformanceFunction& pf, double t);
double rho_dot(const PerformanceFunction& pf, double t);

// xi = erf_inv(x / rho(t)), chi = (sqrt(pi)/2) e^{xi^2} / rho(t).
// Throws InfeasibilityError when |x| >= rho(t) (up to the margin above).
TransformedState xi_from_state(const PerformanceFunction& pf, double x, double t);

// x = rho(t) erf(xi); strictly inside the envelope for any finite xi.
double state_from_xi(const PerformanceFunction& pf, double xi, double t);

// Worst-case scaled disturbance (sqrt(pi)/2) e^{xi_bound^2} d_max / rho_inf.
double scaled_disturbance_bound(const PerformanceFunction& pf, double xi_bound,
                                double d_max);

}  // namespace ftsmc
