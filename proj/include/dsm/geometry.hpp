#pragma once

#include "dsm/types.hpp"

#include <vector>

namespace dsm {

/// Uniformly spaced directions on the unit circle (2D) or a deterministic
/// Fibonacci lattice on the unit sphere (3D). M >= 2.
DirectionSet make_directions(int dimension, int M);

/// Radial boundary r(theta) of a 2D shape (disk, pear, star, peanut2d),
/// measured from the scatterer center. 2-pi periodic, strictly positive.
Real boundary_radius(const Scatterer& scatterer, Real theta);

/// Point-in-scatterer test; `point` has size scatterer.dimension().
bool contains(const Scatterer& scatterer, const Eigen::Ref<const RVector>& point);

/// Equally spaced boundary samples of a 2D scatterer, center offset applied.
std::vector<Eigen::Vector2d> boundary_points(const Scatterer& scatterer, int count);

}  // namespace dsm
