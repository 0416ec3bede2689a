#pragma once

#include "dsm/types.hpp"

namespace dsm {

enum class BesselKind { J0, J1, SphericalJ0 };

/// Cylindrical J0/J1 and spherical j0 on t >= 0.
Real bessel_eval(BesselKind kind, Real t);

}  // namespace dsm
