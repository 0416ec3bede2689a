#include "dsm/bessel.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace dsm;

TEST_SUITE_BEGIN("bessel");

TEST_CASE("known values") {
  CHECK(bessel_eval(BesselKind::J0, 0.0) == 1.0);
  CHECK(bessel_eval(BesselKind::J1, 0.0) == 0.0);
  CHECK(bessel_eval(BesselKind::SphericalJ0, 0.0) == 1.0);
  CHECK(std::abs(bessel_eval(BesselKind::SphericalJ0, pi)) < 1e-12);
  // first zero of J0, frozen from the series oracle
  const Real j0_zero = 2.404825557695773;
  CHECK(std::abs(oracles::bessel_j(0, j0_zero)) < 1e-14);
  CHECK(std::abs(bessel_eval(BesselKind::J0, j0_zero)) < 1e-10);
}

TEST_CASE("series oracle sweep on [0, 50]") {
  Real worst0 = 0, worst1 = 0;
  for (int i = 0; i < 1000; ++i) {
    const Real t = 50.0 * i / 999.0;
    worst0 = std::max(worst0, std::abs(bessel_eval(BesselKind::J0, t) - oracles::bessel_j(0, t)));
    worst1 = std::max(worst1, std::abs(bessel_eval(BesselKind::J1, t) - oracles::bessel_j(1, t)));
  }
  CHECK(worst0 < 1e-10);
  CHECK(worst1 < 1e-10);
}

TEST_CASE("oracle sweep on [0, 200]") {
  Real worst = 0;
  for (int i = 0; i <= 2000; ++i) {
    const Real t = 200.0 * i / 2000.0;
    worst = std::max(worst, std::abs(bessel_eval(BesselKind::J0, t) - oracles::bessel_j(0, t)));
    worst = std::max(worst, std::abs(bessel_eval(BesselKind::J1, t) - oracles::bessel_j(1, t)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("series and asymptotic oracle branches agree") {
  // the oracle switches branches at t = 25; both must match in the overlap
  Real worst = 0;
  for (int i = 0; i <= 200; ++i) {
    const Real t = 20.0 + 15.0 * i / 200.0;
    worst = std::max(worst, std::abs(oracles::bessel_series(0, t) - oracles::bessel_asymptotic(0, t)));
  }
  CHECK(worst < 1e-15);
}

TEST_CASE("spherical j0 matches sin(t)/t away from zero") {
  for (const Real t : {1e-6, 1e-3, 0.5, 3.0, 40.0}) {
    const Real ref = static_cast<Real>(std::sin(static_cast<long double>(t)) / t);
    CHECK(std::abs(bessel_eval(BesselKind::SphericalJ0, t) - ref) < 1e-14);
  }
}

TEST_CASE("negative arguments are rejected") {
  CHECK_THROWS_AS(bessel_eval(BesselKind::J0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(bessel_eval(BesselKind::SphericalJ0, -5.0), std::invalid_argument);
}

TEST_SUITE_END();
