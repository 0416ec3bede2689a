#include "dsm/bessel.hpp"

#include <cmath>

namespace dsm {

namespace {

Real spherical_j0(Real t) {
  // sin(t)/t loses accuracy only at the origin; switch to the series there.
  if (t < 1e-4) {
    const Real t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

}  // namespace

Real bessel_eval(BesselKind kind, Real t) {
  if (t < 0)
    throw std::invalid_argument("bessel_eval: argument must be nonnegative");
  switch (kind) {
    case BesselKind::J0: return std::cyl_bessel_j(0.0, t);
    case BesselKind::J1: return std::cyl_bessel_j(1.0, t);
    case BesselKind::SphericalJ0: return spherical_j0(t);
  }
  throw std::invalid_argument("bessel_eval: unknown kind");
}

}  // namespace dsm
