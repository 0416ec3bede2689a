#pragma once

#include "dsm/types.hpp"

namespace dsm {

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  RVector nodes;
  RVector weights;
};

QuadratureRule gauss_legendre(int n);

/// Weak-scattering (Born) far-field matrix
///   entry(i, j) = k^2 (n - 1) \int_D exp(i k w . (yhat_j - xhat_i)) dw
/// evaluated with a tensor-product Gauss-Legendre rule in polar (2D) or
/// spherical (3D ball) coordinates. quad_level is the radial node count;
/// the angular count scales with it (2x in 2D).
FarFieldMatrix born_farfield(const Scatterer& scatterer, const WaveContext& ctx,
                             const DirectionSet& dirs, int quad_level = 48);

/// Closed-form Born far field of a disk (2D) or ball (3D) centered at the
/// origin. With q = |yhat - xhat|:
///   2D: k^2 (n-1) 2 pi R J1(k q R) / (k q),     -> k^2 (n-1) pi R^2   at q = 0
///   3D: k^2 (n-1) 4 pi (sin p - p cos p)/(k q)^3 with p = k q R,
///                                               -> k^2 (n-1) 4/3 pi R^3 at q = 0
FarFieldMatrix analytic_farfield(Real radius, Real n, const WaveContext& ctx,
                                 const DirectionSet& dirs);

/// Quadrature of \int_S exp(-i k (z - x) . yhat) ds(yhat) over the unit
/// circle/sphere; converges to 2 pi J0(k|x-z|) in 2D and 4 pi j0(k|x-z|)
/// in 3D. m_quad >= 8 is the total node budget.
Complex herglotz_phi(const Eigen::Ref<const RVector>& z,
                     const Eigen::Ref<const RVector>& x, const WaveContext& ctx,
                     int m_quad);

}  // namespace dsm
