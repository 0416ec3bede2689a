#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dsm {

using Real = double;
using Complex = std::complex<Real>;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using GridMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr Real pi = 3.14159265358979323846264338327950288;

/// Input is formally valid but carries no usable information
/// (all-zero grid, empty spectrum, ...).
struct degenerate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to meet its accuracy contract.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pipeline pieces that do not belong together (e.g. a filter polynomial
/// fitted against a different spectrum).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ambient dimension and wavenumber. gamma_sq() is the squared modulus of
/// the far-field normalization constant; it is always derived from
/// (dimension, k), never stored.
struct WaveContext {
  int dimension = 2;  // 2 or 3
  Real k = 1.0;       // wavenumber, > 0

  Real gamma_sq() const;
};

WaveContext make_wave_context(int dimension, Real k);

/// Unit observation/incidence directions, one per row.
struct DirectionSet {
  int dimension = 2;
  RMatrix directions;  // M x dimension

  int count() const { return static_cast<int>(directions.rows()); }
};

enum class ShapeKind { disk, ball, pear, star, peanut2d };

std::string shape_name(ShapeKind shape);
ShapeKind shape_from_name(const std::string& name);

/// Penetrable scatterer with constant refractive index n. The 2D shapes are
/// radial (boundary r(theta) around `center`); `radius` applies to disk and
/// ball only. center.z() is ignored in 2D.
struct Scatterer {
  ShapeKind shape = ShapeKind::disk;
  Real radius = 1.0;
  Real n = 0.5;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();

  int dimension() const { return shape == ShapeKind::ball ? 3 : 2; }
};

struct Provenance {
  enum class Kind { clean, noisy };
  Kind kind = Kind::clean;
  Real delta = 0.0;
  std::uint64_t seed = 0;
};

/// Sampled far-field data: entries(i, j) belongs to observation direction i
/// and incidence direction j.
struct FarFieldMatrix {
  WaveContext ctx;
  DirectionSet dirs;
  CMatrix entries;
  Provenance provenance;
};

}  // namespace dsm
