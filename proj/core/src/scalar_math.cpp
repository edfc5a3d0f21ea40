#include "ftsmc/scalar_math.hpp"

#include <cmath>
#include <limits>

namespace ftsmc {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955126;  // 2/sqrt(pi)
constexpr double kSqrtPiOverTwo = 0.8862269254527580;  // sqrt(pi)/2

// erf via the non-alternating series
//   erf(x) = (2/sqrt(pi)) x e^{-x^2} sum_{n>=0} (2x^2)^n / (1*3*...*(2n+1)),
// which has all-positive terms (no cancellation) and converges in well under
// 200 terms. The partial sum grows like e^{x^2}, so past |x| ~ 5 its rounding
// error rivals the 1 - erf(x) tail itself (ulp-level wiggles, slight
// overshoot of 1); we saturate there instead, giving up at most
// erfc(5) ~ 1.5e-12 of accuracy in exchange for exact bounds and monotone
// saturation.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * std::numeric_limits<double>::epsilon()) break;
  }
  return kTwoOverSqrtPi * std::exp(-x2) * sum;
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) throw DomainError("erf: x must be finite");
  const double ax = std::abs(x);
  double value = ax >= 5.0 ? 1.0 : erf_series(ax);
  return std::signbit(x) ? -value : value;
}

double erf_inv(double y) {
  if (!(std::abs(y) < 1.0)) {
    throw DomainError("erf_inv: |y| must be < 1, got " + std::to_string(y));
  }
  const double ay = std::abs(y);
  if (ay == 0.0) return std::signbit(y) ? -0.0 : 0.0;

  // Bisection brackets the root robustly (erf' vanishes in the tails, so an
  // unbracketed Newton can escape); Newton then polishes to 1e-12.
  double lo = 0.0;
  double hi = 7.0;  // erf(7) is 1 - O(1e-22): covers every representable y < 1
  for (int i = 0; i < 30; ++i) {
    const double mid = 0.5 * (lo + hi);
    (erf(mid) < ay ? lo : hi) = mid;
  }
  double xi = 0.5 * (lo + hi);
  for (int i = 0; i < 20; ++i) {
    const double residual = erf(xi) - ay;
    if (std::abs(residual) <= 1e-15) break;
    // d(erf)/dxi = (2/sqrt(pi)) e^{-xi^2}  =>  Newton step below.
    xi -= residual * kSqrtPiOverTwo * std::exp(xi * xi);
  }
  return std::signbit(y) ? -xi : xi;
}

double smooth_sign(double s, double boundary_layer) {
  if (!(boundary_layer > 0.0)) {
    throw DomainError("smooth_sign: boundary_layer must be > 0");
  }
  return s / (std::abs(s) + boundary_layer);
}

}  // namespace ftsmc
