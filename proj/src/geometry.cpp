#include "dsm/geometry.hpp"

#include <cmath>

namespace dsm {

DirectionSet make_directions(int dimension, int M) {
  if (M < 2) throw std::invalid_argument("make_directions: M must be >= 2");
  DirectionSet set;
  set.dimension = dimension;
  set.directions.resize(M, dimension);
  if (dimension == 2) {
    for (int j = 0; j < M; ++j) {
      const Real theta = 2.0 * pi * j / M;
      set.directions(j, 0) = std::cos(theta);
      set.directions(j, 1) = std::sin(theta);
    }
  } else if (dimension == 3) {
    // Fibonacci lattice: deterministic, quasi-uniform, no duplicates.
    const Real golden_angle = pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < M; ++j) {
      const Real z = 1.0 - (2.0 * j + 1.0) / M;
      const Real rho = std::sqrt(std::max<Real>(0.0, 1.0 - z * z));
      const Real phi = golden_angle * j;
      set.directions(j, 0) = rho * std::cos(phi);
      set.directions(j, 1) = rho * std::sin(phi);
      set.directions(j, 2) = z;
    }
  } else {
    throw std::invalid_argument("make_directions: dimension must be 2 or 3");
  }
  return set;
}

Real boundary_radius(const Scatterer& scatterer, Real theta) {
  switch (scatterer.shape) {
    case ShapeKind::disk:
      return scatterer.radius;
    case ShapeKind::pear:
      return 0.2 * (2.0 + 0.3 * std::cos(3.0 * theta));
    case ShapeKind::star:
      return 0.2 * (2.0 + 0.3 * std::cos(5.0 * theta));
    case ShapeKind::peanut2d: {
      const Real s = std::sin(theta), c = std::cos(theta);
      return 0.4 * std::sqrt(0.5 * s * s + 0.1 * c * c);
    }
    case ShapeKind::ball:
      throw std::invalid_argument("boundary_radius: ball is not a 2D shape");
  }
  throw std::invalid_argument("boundary_radius: unknown shape");
}

bool contains(const Scatterer& scatterer, const Eigen::Ref<const RVector>& point) {
  const int dim = scatterer.dimension();
  if (point.size() != dim)
    throw std::invalid_argument("contains: point dimension mismatch");
  if (scatterer.shape == ShapeKind::ball) {
    const Eigen::Vector3d v = Eigen::Vector3d(point(0), point(1), point(2)) - scatterer.center;
    return v.norm() <= scatterer.radius;
  }
  const Real vx = point(0) - scatterer.center.x();
  const Real vy = point(1) - scatterer.center.y();
  const Real r = std::hypot(vx, vy);
  return r <= boundary_radius(scatterer, std::atan2(vy, vx));
}

std::vector<Eigen::Vector2d> boundary_points(const Scatterer& scatterer, int count) {
  if (scatterer.dimension() != 2)
    throw std::invalid_argument("boundary_points: 2D scatterers only");
  if (count < 1) throw std::invalid_argument("boundary_points: count must be >= 1");
  std::vector<Eigen::Vector2d> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Real theta = 2.0 * pi * i / count;
    const Real r = boundary_radius(scatterer, theta);
    points.emplace_back(scatterer.center.x() + r * std::cos(theta),
                        scatterer.center.y() + r * std::sin(theta));
  }
  return points;
}

}  // namespace dsm
