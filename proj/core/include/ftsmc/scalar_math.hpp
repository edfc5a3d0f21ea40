#pragma once

#include <cmath>
#include <string>

#include "ftsmc/errors.hpp"

namespace ftsmc {

struct Tolerance {
  double abs_tol = 1e-12;
  int max_iter = 100;
};

// Gauss error function, accurate to <= 1e-12 absolute, odd in sign bit-exactly.
double erf(double x);

// Inverse error function on (-1, 1); |erf(erf_inv(y)) - y| <= 1e-12.
// Throws DomainError at |y| >= 1 (an infeasible normalized state).
double erf_inv(double y);

// Boundary-layer sign replacement s / (|s| + boundary_layer); odd, |result| < 1.
double smooth_sign(double s, double boundary_layer);

// Discontinuous sign with sgn(0) = 0.
inline double hard_sign(double s) { return (s > 0.0) - (s < 0.0); }

// Bisection for a monotone f with a sign change on [lo, hi]. Returns r with
// |f(r)| <= tol.abs_tol or bracket width <= tol.abs_tol. Chosen over Newton
// where f' is unbounded at an endpoint (fractional powers at 0).
template <typename F>
double bisect(F&& f, double lo, double hi, Tolerance tol = {}) {
  if (!(lo < hi)) {
    throw BracketError("bisect: require lo < hi, got [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
  }
  if (tol.abs_tol <= 0.0 || tol.max_iter < 1) {
    throw DomainError("bisect: tolerance must have abs_tol > 0 and max_iter >= 1");
  }
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw BracketError("bisect: no sign change on [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
  }
  for (int iter = 0; iter < tol.max_iter; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (std::abs(fmid) <= tol.abs_tol || (hi - lo) <= tol.abs_tol) return mid;
    if (std::signbit(fmid) == std::signbit(flo)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError("bisect: max_iter=" + std::to_string(tol.max_iter) +
                         " exceeded before reaching abs_tol");
}

}  // namespace ftsmc
