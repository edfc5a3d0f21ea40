#include "ftsmc/gain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ftsmc/scalar_math.hpp"

namespace ftsmc {

namespace {
constexpr double kSqrtHalfPi = 1.2533141373155003;  // sqrt(pi/2)
}

MixedPowerGain::MixedPowerGain(double a_, double b_, double gamma_, double alpha_)
    : a(a_), b(b_), gamma(gamma_), alpha(alpha_) {
  if (!(a > 0.0 && b > 0.0)) {
    throw DomainError("MixedPowerGain: require a > 0 and b > 0");
  }
  if (!(gamma > 0.0 && gamma < 1.0 && alpha > 1.0)) {
    throw DomainError("MixedPowerGain: require 0 < gamma < 1 < alpha, got gamma=" +
                      std::to_string(gamma) + " alpha=" + std::to_string(alpha));
  }
}

GaussianGain::GaussianGain(double Lambda_) : Lambda(Lambda_) {
  if (!(Lambda > 0.0)) {
    throw DomainError("GaussianGain: require Lambda > 0");
  }
}

HybridGainSpec::HybridGainSpec(double k0_, double k1_, double gamma_out_,
                               double eps0_, double eps_, InnerGain inner_)
    : k0(k0_), k1(k1_), gamma_out(gamma_out_), eps0(eps0_), eps(eps_),
      inner(std::move(inner_)) {
  if (!(k0 > 0.0 && k1 > 0.0)) {
    throw DomainError("HybridGainSpec: require k0 > 0 and k1 > 0");
  }
  if (!(gamma_out > 0.0 && gamma_out < 1.0)) {
    throw DomainError("HybridGainSpec: require 0 < gamma_out < 1, got " +
                      std::to_string(gamma_out));
  }
  if (!(eps0 > 0.0 && eps > 0.0 && eps <= eps0)) {
    throw DomainError("HybridGainSpec: require 0 < eps <= eps0, got eps=" +
                      std::to_string(eps) + " eps0=" + std::to_string(eps0));
  }
}

double eval_inner_gain(const InnerGain& inner, double w) {
  if (!(w >= 0.0)) throw DomainError("eval_inner_gain: w must be >= 0");
  if (const auto* mp = std::get_if<MixedPowerGain>(&inner)) {
    return mp->a * std::pow(w, mp->gamma) + mp->b * std::pow(w, mp->alpha);
  }
  const auto& g = std::get<GaussianGain>(inner);
  return g.Lambda * kSqrtHalfPi * std::exp(-0.5 * w * w);
}

double eval_gain(const HybridGainSpec& spec, double w) {
  if (!(w >= 0.0)) throw DomainError("eval_gain: w must be >= 0");
  if (w > spec.eps) {
    const double wg = std::pow(w, spec.gamma_out);
    return spec.k0 + spec.k1 * wg / (std::pow(spec.eps0, spec.gamma_out) + wg);
  }
  return eval_inner_gain(spec.inner, w);
}

double max_gain(const HybridGainSpec& spec) {
  // Outer branch supremum is k0 + k1; mixed-power inner peaks at the tube
  // edge (monotone), Gaussian inner at the origin.
  double inner_max;
  if (std::holds_alternative<MixedPowerGain>(spec.inner)) {
    inner_max = eval_inner_gain(spec.inner, spec.eps);
  } else {
    inner_max = std::get<GaussianGain>(spec.inner).Lambda * kSqrtHalfPi;
  }
  return std::max(spec.k0 + spec.k1, inner_max);
}

std::optional<double> residual_radius(const InnerGain& inner, double d_bar,
                                      double eps) {
  if (!(d_bar >= 0.0)) throw DomainError("residual_radius: d_bar must be >= 0");
  if (!(eps > 0.0)) throw DomainError("residual_radius: eps must be > 0");
  if (d_bar == 0.0) return 0.0;  // residual set collapses to the origin
  if (std::holds_alternative<MixedPowerGain>(inner)) {
    if (eval_inner_gain(inner, eps) < d_bar) return std::nullopt;
    const auto excess = [&](double r) { return eval_inner_gain(inner, r) - d_bar; };
    // Bisection: the integrand's derivative is unbounded at 0 (r^{gamma-1}),
    // which rules out Newton from the left.
    return bisect(excess, 0.0, eps, Tolerance{1e-13, 200});
  }
  const auto& g = std::get<GaussianGain>(inner);
  const double tube_floor = g.Lambda * kSqrtHalfPi * std::exp(-0.5 * eps * eps);
  if (tube_floor > d_bar) return 0.0;
  return std::nullopt;
}

namespace {

FeasibilityReport build_report(const HybridGainSpec& spec, double d_bar_outer,
                               double d_bar_inner, double inner_gain_at_edge) {
  FeasibilityReport report;
  report.d_bar_outer = d_bar_outer;
  report.d_bar_inner = d_bar_inner;
  report.eta0 = spec.k0 - d_bar_outer;
  report.eta_eps = inner_gain_at_edge - d_bar_inner;
  report.outer_ok = report.eta0 > 0.0;
  report.inner_ok = report.eta_eps > 0.0;
  report.residual_radius = residual_radius(spec.inner, d_bar_inner, spec.eps);
  return report;
}

}  // namespace

FeasibilityReport check_feasibility_first_order(const HybridGainSpec& spec,
                                                const PerformanceFunction& pf,
                                                double d_max, double xi0) {
  const double d_bar_outer = scaled_disturbance_bound(pf, std::abs(xi0), d_max);
  const double d_bar_inner = scaled_disturbance_bound(pf, spec.eps, d_max);
  return build_report(spec, d_bar_outer, d_bar_inner,
                      eval_inner_gain(spec.inner, spec.eps));
}

FeasibilityReport check_feasibility_second_order(const HybridGainSpec& spec,
                                                 double d_max) {
  if (!(d_max >= 0.0)) {
    throw DomainError("check_feasibility_second_order: d_max must be >= 0");
  }
  // The Gaussian margin uses the branch supremum Lambda sqrt(pi/2): that is
  // the quantity the settle bound divides by.
  double edge_gain;
  if (std::holds_alternative<GaussianGain>(spec.inner)) {
    edge_gain = std::get<GaussianGain>(spec.inner).Lambda * kSqrtHalfPi;
  } else {
    edge_gain = eval_inner_gain(spec.inner, spec.eps);
  }
  return build_report(spec, d_max, d_max, edge_gain);
}

ReachTimeBounds reach_time_bounds(const HybridGainSpec& spec, double d_bar_outer,
                                  double w0) {
  if (!(w0 >= 0.0)) throw DomainError("reach_time_bounds: w0 must be >= 0");
  const double eta0 = spec.k0 - d_bar_outer;
  if (!(eta0 > 0.0)) {
    throw InfeasibleGainError("reach_time_bounds: k0 must exceed the scaled "
                              "disturbance bound (eta0=" + std::to_string(eta0) + ")");
  }
  ReachTimeBounds bounds;
  bounds.t_a = std::max(0.0, w0 - spec.eps0) / (eta0 + 0.5 * spec.k1);
  const double g = spec.gamma_out;
  bounds.t_b = 2.0 * std::pow(spec.eps0, g) / (spec.k1 * (1.0 - g)) *
               (std::pow(spec.eps0, 1.0 - g) - std::pow(spec.eps, 1.0 - g));
  bounds.t_out = bounds.t_a + bounds.t_b;
  return bounds;
}

double inner_settle_bound(const InnerGain& inner, double eps0, double d_bar_inner) {
  if (!(eps0 > 0.0)) throw DomainError("inner_settle_bound: eps0 must be > 0");
  if (!(d_bar_inner >= 0.0)) {
    throw DomainError("inner_settle_bound: d_bar_inner must be >= 0");
  }
  if (const auto* mp = std::get_if<MixedPowerGain>(&inner)) {
    return 1.0 / (mp->a * (1.0 - mp->gamma)) + 1.0 / (mp->b * (mp->alpha - 1.0));
  }
  const auto& g = std::get<GaussianGain>(inner);
  const double margin = g.Lambda * kSqrtHalfPi - d_bar_inner;
  if (!(margin > 0.0)) {
    throw InfeasibleGainError("inner_settle_bound: Gaussian gain Lambda*sqrt(pi/2)=" +
                              std::to_string(g.Lambda * kSqrtHalfPi) +
                              " does not dominate d_bar=" + std::to_string(d_bar_inner));
  }
  return eps0 / margin;
}

}  // namespace ftsmc
