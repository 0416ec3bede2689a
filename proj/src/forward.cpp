#include "dsm/forward.hpp"

#include "dsm/bessel.hpp"
#include "dsm/geometry.hpp"

#include <cmath>

namespace dsm {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    Real t = std::cos(pi * (i + 0.75) / (n + 0.5));
    Real dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1, p1 = 0;
      for (int j = 0; j < n; ++j) {
        const Real p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
      }
      dp = n * (t * p0 - p1) / (t * t - 1);
      const Real dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    {
      Real p0 = 1, p1 = 0;
      for (int j = 0; j < n; ++j) {
        const Real p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
      }
      dp = n * (t * p0 - p1) / (t * t - 1);
    }
    rule.nodes(i) = t;
    rule.weights(i) = 2.0 / ((1 - t * t) * dp * dp);
  }
  return rule;
}

namespace {

struct VolumeNodes {
  RMatrix points;   // N x dim, center offset applied
  RVector weights;  // volume element included
};

// Tensor-product Gauss-Legendre nodes over a 2D radial domain in polar
// coordinates (Jacobian r), quad_level radial x 2*quad_level angular nodes.
VolumeNodes radial_domain_nodes_2d(const Scatterer& scatterer, int quad_level) {
  const QuadratureRule radial = gauss_legendre(quad_level);
  const QuadratureRule angular = gauss_legendre(2 * quad_level);
  const int n_ang = 2 * quad_level;
  VolumeNodes nodes;
  nodes.points.resize(quad_level * n_ang, 2);
  nodes.weights.resize(quad_level * n_ang);
  int idx = 0;
  for (int a = 0; a < n_ang; ++a) {
    const Real theta = pi * (angular.nodes(a) + 1.0);  // [0, 2 pi]
    const Real w_theta = pi * angular.weights(a);
    const Real r_max = boundary_radius(scatterer, theta);
    const Real cs = std::cos(theta), sn = std::sin(theta);
    for (int r = 0; r < quad_level; ++r) {
      const Real rr = 0.5 * r_max * (radial.nodes(r) + 1.0);  // [0, r_max]
      const Real w = w_theta * 0.5 * r_max * radial.weights(r) * rr;
      nodes.points(idx, 0) = scatterer.center.x() + rr * cs;
      nodes.points(idx, 1) = scatterer.center.y() + rr * sn;
      nodes.weights(idx) = w;
      ++idx;
    }
  }
  return nodes;
}

// Spherical tensor rule for the ball: r x cos(polar) x azimuth.
VolumeNodes ball_nodes_3d(const Scatterer& scatterer, int quad_level) {
  const QuadratureRule radial = gauss_legendre(quad_level);
  const QuadratureRule polar = gauss_legendre(quad_level);
  const int n_az = 2 * quad_level;
  VolumeNodes nodes;
  nodes.points.resize(quad_level * quad_level * n_az, 3);
  nodes.weights.resize(quad_level * quad_level * n_az);
  const Real R = scatterer.radius;
  int idx = 0;
  for (int m = 0; m < quad_level; ++m) {
    const Real mu = polar.nodes(m);  // cos(polar angle)
    const Real w_mu = polar.weights(m);
    const Real rho = std::sqrt(1.0 - mu * mu);
    for (int a = 0; a < n_az; ++a) {
      const Real phi = 2.0 * pi * a / n_az;
      const Real w_phi = 2.0 * pi / n_az;
      const Real ux = rho * std::cos(phi), uy = rho * std::sin(phi);
      for (int r = 0; r < quad_level; ++r) {
        const Real rr = 0.5 * R * (radial.nodes(r) + 1.0);
        const Real w = w_mu * w_phi * 0.5 * R * radial.weights(r) * rr * rr;
        nodes.points(idx, 0) = scatterer.center.x() + rr * ux;
        nodes.points(idx, 1) = scatterer.center.y() + rr * uy;
        nodes.points(idx, 2) = scatterer.center.z() + rr * mu;
        nodes.weights(idx) = w;
        ++idx;
      }
    }
  }
  return nodes;
}

}  // namespace

FarFieldMatrix born_farfield(const Scatterer& scatterer, const WaveContext& ctx,
                             const DirectionSet& dirs, int quad_level) {
  if (!(ctx.k > 0)) throw std::invalid_argument("born_farfield: k must be positive");
  if (quad_level < 2) throw std::invalid_argument("born_farfield: quad_level must be >= 2");
  if (ctx.dimension != scatterer.dimension() || ctx.dimension != dirs.dimension)
    throw std::invalid_argument("born_farfield: dimension mismatch");

  VolumeNodes nodes;
  if (ctx.dimension == 2) {
    nodes = radial_domain_nodes_2d(scatterer, quad_level);
  } else if (scatterer.shape == ShapeKind::ball) {
    nodes = ball_nodes_3d(scatterer, quad_level);
  } else {
    throw std::invalid_argument("born_farfield: unsupported shape/dimension combination");
  }

  const int M = dirs.count();
  const Eigen::Index N = nodes.weights.size();
  // entry(i,j) = k^2 (n-1) sum_q w_q e^{ik w_q . yhat_j} e^{-ik w_q . xhat_i}
  const RMatrix phase = ctx.k * (nodes.points * dirs.directions.transpose());  // N x M
  CMatrix plane(N, M);
  for (Eigen::Index q = 0; q < N; ++q)
    for (int j = 0; j < M; ++j)
      plane(q, j) = Complex(std::cos(phase(q, j)), std::sin(phase(q, j)));

  const Real scale = ctx.k * ctx.k * (scatterer.n - 1.0);
  FarFieldMatrix out{ctx, dirs, CMatrix(), Provenance{}};
  out.entries = scale * (plane.adjoint() * nodes.weights.asDiagonal() * plane);
  return out;
}

namespace {

// J1(x)/x, stable near the origin.
Real jinc(Real x) {
  if (x < 1e-4) {
    const Real x2 = x * x;
    return 0.5 - x2 / 16.0 + x2 * x2 / 384.0;
  }
  return bessel_eval(BesselKind::J1, x) / x;
}

// (sin p - p cos p)/p^3, stable near the origin.
Real ball_kernel(Real p) {
  if (p < 0.1) {
    const Real p2 = p * p;
    return (1.0 - p2 / 10.0 * (1.0 - p2 / 28.0 * (1.0 - p2 / 54.0))) / 3.0;
  }
  return (std::sin(p) - p * std::cos(p)) / (p * p * p);
}

}  // namespace

FarFieldMatrix analytic_farfield(Real radius, Real n, const WaveContext& ctx,
                                 const DirectionSet& dirs) {
  if (!(radius > 0)) throw std::invalid_argument("analytic_farfield: radius must be positive");
  if (ctx.dimension != dirs.dimension)
    throw std::invalid_argument("analytic_farfield: dimension mismatch");
  const int M = dirs.count();
  const Real k = ctx.k;
  const Real contrast = k * k * (n - 1.0);
  FarFieldMatrix out{ctx, dirs, CMatrix(M, M), Provenance{}};
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      const Real q = (dirs.directions.row(j) - dirs.directions.row(i)).norm();
      Real value;
      if (ctx.dimension == 2) {
        value = contrast * 2.0 * pi * radius * radius * jinc(k * q * radius);
      } else {
        const Real kq = k * q;
        if (kq * radius < 1e-300) {
          value = contrast * 4.0 / 3.0 * pi * radius * radius * radius;
        } else {
          const Real R3 = radius * radius * radius;
          value = contrast * 4.0 * pi * R3 * ball_kernel(kq * radius);
        }
      }
      out.entries(i, j) = value;
    }
  }
  return out;
}

Complex herglotz_phi(const Eigen::Ref<const RVector>& z,
                     const Eigen::Ref<const RVector>& x, const WaveContext& ctx,
                     int m_quad) {
  if (m_quad < 8) throw std::invalid_argument("herglotz_phi: m_quad must be >= 8");
  if (z.size() != ctx.dimension || x.size() != ctx.dimension)
    throw std::invalid_argument("herglotz_phi: point dimension mismatch");
  const RVector v = z - x;
  Complex sum(0, 0);
  if (ctx.dimension == 2) {
    for (int j = 0; j < m_quad; ++j) {
      const Real theta = 2.0 * pi * j / m_quad;
      const Real phase = -ctx.k * (v(0) * std::cos(theta) + v(1) * std::sin(theta));
      sum += Complex(std::cos(phase), std::sin(phase));
    }
    return sum * (2.0 * pi / m_quad);
  }
  // Product rule on the sphere: Gauss-Legendre in cos(polar) x uniform azimuth.
  const int n_polar = std::max(4, static_cast<int>(std::lround(std::sqrt(m_quad / 2.0))));
  const int n_az = 2 * n_polar;
  const QuadratureRule polar = gauss_legendre(n_polar);
  for (int m = 0; m < n_polar; ++m) {
    const Real mu = polar.nodes(m);
    const Real rho = std::sqrt(1.0 - mu * mu);
    for (int a = 0; a < n_az; ++a) {
      const Real phi = 2.0 * pi * a / n_az;
      const Real phase = -ctx.k * (v(0) * rho * std::cos(phi) +
                                   v(1) * rho * std::sin(phi) + v(2) * mu);
      sum += polar.weights(m) * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return sum * (2.0 * pi / n_az);
}

}  // namespace dsm
