#pragma once

#include <optional>
#include <variant>

#include "ftsmc/errors.hpp"
#include "ftsmc/ppf.hpp"

namespace ftsmc {

// Inner-branch gain a w^gamma + b w^alpha: vanishes at the origin, finite-time
// settle inside the tube.
struct MixedPowerGain {
  double a;
  double b;
  double gamma;
  double alpha;

  MixedPowerGain(double a_, double b_, double gamma_, double alpha_);

  friend bool operator==(const MixedPowerGain&, const MixedPowerGain&) = default;
};

// Inner-branch gain Lambda sqrt(pi/2) e^{-w^2/2}: strictly positive floor on
// any bounded tube, so the sliding variable keeps shrinking all the way in.
struct GaussianGain {
  double Lambda;

  explicit GaussianGain(double Lambda_);

  friend bool operator==(const GaussianGain&, const GaussianGain&) = default;
};

using InnerGain = std::variant<MixedPowerGain, GaussianGain>;

// Full hybrid schedule: saturating outer branch for w > eps, inner branch on
// the tube w <= eps.
struct HybridGainSpec {
  double k0;
  double k1;
  double gamma_out;
  double eps0;
  double eps;
  InnerGain inner;

  HybridGainSpec(double k0_, double k1_, double gamma_out_, double eps0_,
                 double eps_, InnerGain inner_);

  friend bool operator==(const HybridGainSpec&, const HybridGainSpec&) = default;
};

struct FeasibilityReport {
  bool outer_ok;
  bool inner_ok;
  double d_bar_outer;
  double d_bar_inner;
  double eta0;     // k0 - d_bar_outer; positive iff the outer branch dominates
  double eta_eps;  // inner gain margin at the tube edge
  std::optional<double> residual_radius;  // none: residual set exceeds the tube
};

struct ReachTimeBounds {
  double t_a;    // time outside the saturation knee (w > eps0)
  double t_b;    // time from eps0 down to the tube edge eps
  double t_out;  // t_a + t_b
};

double eval_inner_gain(const InnerGain& inner, double w);
double eval_gain(const HybridGainSpec& spec, double w);

// Largest gain the schedule can output; used for discretization allowances.
double max_gain(const HybridGainSpec& spec);

// Radius of the residual set inside the tube: the w where the inner gain stops
// dominating d_bar. Mixed-power: unique root of a r^g + b r^al = d_bar, or
// none when even the tube-edge gain is below d_bar. Gaussian: 0 when the tube
// floor beats d_bar (gain dominates everywhere), else none.
std::optional<double> residual_radius(const InnerGain& inner, double d_bar,
                                      double eps);

FeasibilityReport check_feasibility_first_order(const HybridGainSpec& spec,
                                                const PerformanceFunction& pf,
                                                double d_max, double xi0);

// Second-order loop sees the disturbance unscaled, so the bound is d_max itself.
FeasibilityReport check_feasibility_second_order(const HybridGainSpec& spec,
                                                 double d_max);

// Closed-form reaching bounds from w0 down to the tube edge.
// Throws InfeasibleGainError when eta0 = k0 - d_bar_outer <= 0.
ReachTimeBounds reach_time_bounds(const HybridGainSpec& spec, double d_bar_outer,
                                  double w0);

// Closed-form settle bound inside the tube. Mixed-power: 1/(a(1-gamma)) +
// 1/(b(alpha-1)). Gaussian: eps0 / (Lambda sqrt(pi/2) - d_bar_inner); throws
// InfeasibleGainError when the denominator is not positive.
double inner_settle_bound(const InnerGain& inner, double eps0, double d_bar_inner);

}  // namespace ftsmc
