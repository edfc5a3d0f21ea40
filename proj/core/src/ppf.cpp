#include "ftsmc/ppf.hpp"

#include <cmath>
#include <string>

#include "ftsmc/scalar_math.hpp"

namespace ftsmc {

namespace {
constexpr double kSqrtPiOverTwo = 0.8862269254527580;  // sqrt(pi)/2

void require_nonnegative_time(double t, const char* where) {
  if (!(t >= 0.0)) {
    throw DomainError(std::string(where) + ": t must be >= 0, got " +
                      std::to_string(t));
  }
}
}  // namespace

PerformanceFunction::PerformanceFunction(double rho0_, double rho_inf_,
                                         double lambda_)
    : rho0(rho0_), rho_inf(rho_inf_), lambda(lambda_) {
  if (!(rho0 > rho_inf && rho_inf > 0.0)) {
    throw DomainError("PerformanceFunction: require rho0 > rho_inf > 0, got rho0=" +
                      std::to_string(rho0) + " rho_inf=" + std::to_string(rho_inf));
  }
  if (!(lambda > 0.0)) {
    throw DomainError("PerformanceFunction: require lambda > 0, got " +
                      std::to_string(lambda));
  }
}

double rho(const PerformanceFunction& pf, double t) {
  require_nonnegative_time(t, "rho");
  return (pf.rho0 - pf.rho_inf) * std::exp(-pf.lambda * t) + pf.rho_inf;
}

double rho_dot(const PerformanceFunction& pf, double t) {
  require_nonnegative_time(t, "rho_dot");
  return -pf.lambda * (pf.rho0 - pf.rho_inf) * std::exp(-pf.lambda * t);
}

TransformedState xi_from_state(const PerformanceFunction& pf, double x, double t) {
  const double envelope = rho(pf, t);
  const double normalized = x / envelope;
  if (!(std::abs(normalized) < 1.0 - kFeasibilityMargin)) {
    throw InfeasibilityError("xi_from_state: |x| >= rho(t) (x=" + std::to_string(x) +
                             ", rho=" + std::to_string(envelope) + ", t=" +
                             std::to_string(t) + ")");
  }
  const double xi = erf_inv(normalized);
  const double chi = kSqrtPiOverTwo * std::exp(xi * xi) / envelope;
  return {xi, chi};
}

double state_from_xi(const PerformanceFunction& pf, double xi, double t) {
  return rho(pf, t) * erf(xi);
}

double scaled_disturbance_bound(const PerformanceFunction& pf, double xi_bound,
                                double d_max) {
  if (!(xi_bound >= 0.0)) {
    throw DomainError("scaled_disturbance_bound: xi_bound must be >= 0");
  }
  if (!(d_max >= 0.0)) {
    throw DomainError("scaled_disturbance_bound: d_max must be >= 0");
  }
  return kSqrtPiOverTwo * std::exp(xi_bound * xi_bound) * d_max / pf.rho_inf;
}

}  // namespace ftsmc
