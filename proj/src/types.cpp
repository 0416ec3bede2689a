#include "dsm/types.hpp"

namespace dsm {

Real WaveContext::gamma_sq() const {
  // |gamma|^2 for gamma = e^{i pi/4} / sqrt(8 pi k) (2D), 1/(4 pi) (3D)
  if (dimension == 2) return 1.0 / (8.0 * pi * k);
  if (dimension == 3) return 1.0 / (16.0 * pi * pi);
  throw std::invalid_argument("WaveContext: dimension must be 2 or 3");
}

WaveContext make_wave_context(int dimension, Real k) {
  if (dimension != 2 && dimension != 3)
    throw std::invalid_argument("wave context: dimension must be 2 or 3");
  if (!(k > 0))
    throw std::invalid_argument("wave context: wavenumber must be positive");
  return WaveContext{dimension, k};
}

std::string shape_name(ShapeKind shape) {
  switch (shape) {
    case ShapeKind::disk: return "disk";
    case ShapeKind::ball: return "ball";
    case ShapeKind::pear: return "pear";
    case ShapeKind::star: return "star";
    case ShapeKind::peanut2d: return "peanut";
  }
  throw std::invalid_argument("unknown shape kind");
}

ShapeKind shape_from_name(const std::string& name) {
  if (name == "disk") return ShapeKind::disk;
  if (name == "ball") return ShapeKind::ball;
  if (name == "pear") return ShapeKind::pear;
  if (name == "star") return ShapeKind::star;
  if (name == "peanut") return ShapeKind::peanut2d;
  throw std::invalid_argument("unknown shape name: " + name);
}

}  // namespace dsm
