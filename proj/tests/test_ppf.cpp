#include <doctest.h>

#include <cmath>

#include "ftsmc/errors.hpp"
#include "ftsmc/ppf.hpp"

using namespace ftsmc;

namespace {
const PerformanceFunction kPf(4.0, 0.05, 4.0);  // first-order study envelope
}

TEST_SUITE_BEGIN("ppf");

TEST_CASE("constructor validates the envelope shape") {
  CHECK_THROWS_AS(PerformanceFunction(0.05, 0.05, 1.0), DomainError);
  CHECK_THROWS_AS(PerformanceFunction(0.01, 0.05, 1.0), DomainError);
  CHECK_THROWS_AS(PerformanceFunction(4.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(PerformanceFunction(4.0, -0.1, 1.0), DomainError);
  CHECK_THROWS_AS(PerformanceFunction(4.0, 0.05, 0.0), DomainError);
  CHECK_THROWS_AS(PerformanceFunction(4.0, 0.05, -2.0), DomainError);
}

TEST_CASE("rho matches the reference values") {
  CHECK(rho(kPf, 0.0) == 4.0);
  CHECK(std::abs(rho(kPf, 1.0) - 0.12234677361050001) <= 1e-14);
  CHECK(std::abs(rho(kPf, 0.25) - 1.5031237926271972) <= 1e-14);
  CHECK_THROWS_AS(rho(kPf, -0.1), DomainError);
}

TEST_CASE("rho decays monotonically to rho_inf") {
  double prev = rho(kPf, 0.0);
  for (double t = 0.05; t <= 20.0; t += 0.05) {
    const double cur = rho(kPf, t);
    // The exponential term saturates below double resolution around t ~ 10;
    // strict decrease is only observable before that.
    if (t <= 8.0) {
      CHECK(cur < prev);
      CHECK(cur > kPf.rho_inf);
    } else {
      CHECK(cur <= prev);
      CHECK(cur >= kPf.rho_inf);
    }
    prev = cur;
  }
  CHECK(std::abs(rho(kPf, 50.0) - kPf.rho_inf) <= 1e-12);
}

TEST_CASE("rho_dot matches the reference values and stays negative") {
  CHECK(rho_dot(kPf, 0.0) == -15.8);
  CHECK(std::abs(rho_dot(kPf, 0.5) - -2.1382974751384805) <= 1e-13);
  CHECK_THROWS_AS(rho_dot(kPf, -1.0), DomainError);
  for (double t = 0.0; t <= 10.0; t += 0.1) {
    CHECK(rho_dot(kPf, t) < 0.0);
  }
}

TEST_CASE("rho_dot is the derivative of rho") {
  const double h = 1e-6;
  for (double t = 0.1; t <= 5.0; t += 0.13) {
    const double fd = (rho(kPf, t + h) - rho(kPf, t - h)) / (2.0 * h);
    CHECK(std::abs(fd - rho_dot(kPf, t)) <= 1e-5);
  }
}

TEST_CASE("xi_from_state matches the reference values") {
  const TransformedState at0 = xi_from_state(kPf, 3.0, 0.0);
  CHECK(std::abs(at0.xi - 0.81341984759761854) <= 1e-12);
  CHECK(std::abs(at0.chi - 0.42937494234186307) <= 1e-12);

  const TransformedState at1 = xi_from_state(kPf, 0.1, 1.0);
  CHECK(std::abs(at1.xi - 0.94231633669574391) <= 1e-12);
  CHECK(std::abs(at1.chi - 17.603076719484502) <= 1e-9);

  const TransformedState origin = xi_from_state(kPf, 0.0, 2.0);
  CHECK(origin.xi == 0.0);
  CHECK(origin.chi > 0.0);
}

TEST_CASE("xi_from_state refuses states at or outside the envelope") {
  CHECK_THROWS_AS(xi_from_state(kPf, 4.0, 0.0), InfeasibilityError);
  CHECK_THROWS_AS(xi_from_state(kPf, -4.0, 0.0), InfeasibilityError);
  CHECK_THROWS_AS(xi_from_state(kPf, 5.0, 0.0), InfeasibilityError);
  CHECK_THROWS_AS(xi_from_state(kPf, 0.2, 2.0), InfeasibilityError);
  CHECK_THROWS_AS(xi_from_state(kPf, 1.0, -0.5), DomainError);
}

TEST_CASE("state_from_xi inverts xi_from_state") {
  CHECK(std::abs(state_from_xi(kPf, 0.81341984759761854, 0.0) - 3.0) <= 1e-12);
  for (double x = -3.9; x <= 3.9; x += 0.1) {
    const double back = state_from_xi(kPf, xi_from_state(kPf, x, 0.0).xi, 0.0);
    CHECK(std::abs(back - x) <= 1e-9);
  }
  for (double x = -0.11; x <= 0.11; x += 0.01) {
    const double back = state_from_xi(kPf, xi_from_state(kPf, x, 1.0).xi, 1.0);
    CHECK(std::abs(back - x) <= 1e-9);
  }
}

TEST_CASE("chi is the sensitivity d xi / d x") {
  const double h = 1e-7;
  for (double x : {-3.5, -1.0, -0.2, 0.0, 0.4, 2.0, 3.8}) {
    const double fd =
        (xi_from_state(kPf, x + h, 0.0).xi - xi_from_state(kPf, x - h, 0.0).xi) /
        (2.0 * h);
    const double chi = xi_from_state(kPf, x, 0.0).chi;
    CHECK(std::abs(fd - chi) / chi <= 1e-6);
  }
}

TEST_CASE("chi is minimal at the origin") {
  const double floor = xi_from_state(kPf, 0.0, 0.0).chi;
  for (double x = -3.9; x <= 3.9; x += 0.1) {
    CHECK(xi_from_state(kPf, x, 0.0).chi >= floor - 1e-15);
  }
}

TEST_CASE("scaled_disturbance_bound matches the reference values") {
  CHECK(std::abs(scaled_disturbance_bound(kPf, 0.2, 0.25) - 4.611972661953125) <=
        1e-11);
  CHECK(std::abs(scaled_disturbance_bound(kPf, 0.81341984759761854, 0.25) -
                 8.5874988468372614) <= 1e-11);
  CHECK(scaled_disturbance_bound(kPf, 0.5, 0.0) == 0.0);
}

TEST_CASE("scaled_disturbance_bound grows with the tube radius and d_max") {
  double prev = scaled_disturbance_bound(kPf, 0.0, 0.25);
  for (double xb = 0.1; xb <= 3.0; xb += 0.1) {
    const double cur = scaled_disturbance_bound(kPf, xb, 0.25);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK(scaled_disturbance_bound(kPf, 1.0, 0.5) ==
        doctest::Approx(2.0 * scaled_disturbance_bound(kPf, 1.0, 0.25))
            .epsilon(1e-12));
  CHECK_THROWS_AS(scaled_disturbance_bound(kPf, -0.1, 0.25), DomainError);
  CHECK_THROWS_AS(scaled_disturbance_bound(kPf, 0.2, -0.25), DomainError);
}

TEST_SUITE_END();
