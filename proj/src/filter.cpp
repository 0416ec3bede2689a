#include "dsm/filter.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace dsm {

Real gamma_alpha(Real t, Real alpha) {
  if (t < 0) throw std::invalid_argument("gamma_alpha: t must be nonnegative");
  if (!(alpha > 0)) throw std::invalid_argument("gamma_alpha: alpha must be positive");
  if (t == 0) return 0;
  return std::sqrt(t) / (alpha + t);
}

Real c_alpha(Real alpha, Real norm_f) {
  if (!(alpha > 0)) throw std::invalid_argument("c_alpha: alpha must be positive");
  if (norm_f < 0) throw std::invalid_argument("c_alpha: norm_f must be nonnegative");
  return std::max(1.0 / (2.0 * std::sqrt(alpha)),
                  std::sqrt(norm_f) / (alpha + norm_f));
}

Real eval_polynomial(const FilterPolynomial& poly, Real t) {
  // Horner on c1 t + c2 t^2 + ... = t (c1 + t (c2 + ...))
  Real acc = 0;
  for (int i = poly.degree() - 1; i >= 0; --i) acc = poly.coeffs(i) + t * acc;
  return t * acc;
}

namespace {

Real eval_coeffs(const Eigen::Ref<const RVector>& coeffs, Real t) {
  Real acc = 0;
  for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i) acc = coeffs(i) + t * acc;
  return t * acc;
}

RVector fit_nodes(Real norm_f, int num_nodes, NodePlacement placement) {
  RVector nodes(num_nodes);
  if (placement == NodePlacement::interior) {
    for (int l = 1; l <= num_nodes; ++l) nodes(l - 1) = l * norm_f / num_nodes;
  } else {
    for (int l = 0; l < num_nodes; ++l) nodes(l) = l * norm_f / (num_nodes - 1);
  }
  return nodes;
}

}  // namespace

RVector fit_zero_rooted_polynomial(const std::function<Real(Real)>& target,
                                   Real norm_f, int degree, int num_nodes,
                                   NodePlacement placement, Real cutoff) {
  if (!(norm_f > 0)) throw std::invalid_argument("fit: norm_f must be positive");
  if (degree < 1) throw std::invalid_argument("fit: degree must be >= 1");
  if (num_nodes < degree) throw std::invalid_argument("fit: need at least `degree` nodes");

  const RVector nodes = fit_nodes(norm_f, num_nodes, placement);
  RMatrix a(num_nodes, degree);
  RVector b(num_nodes);
  for (int l = 0; l < num_nodes; ++l) {
    const Real t = nodes(l);
    Real power = t;
    for (int d = 0; d < degree; ++d) {
      a(l, d) = power;
      power *= t;
    }
    b(l) = target(t);
  }

  // Truncated-SVD least squares with a relative spectral cutoff.
  Eigen::JacobiSVD<RMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  RVector coeffs = RVector::Zero(degree);
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) <= cutoff * s(0)) continue;
    coeffs += (svd.matrixU().col(i).dot(b) / s(i)) * svd.matrixV().col(i);
  }
  return coeffs;
}

Real sup_deviation(const std::function<Real(Real)>& target,
                   const Eigen::Ref<const RVector>& coeffs, Real norm_f,
                   int samples) {
  if (!(norm_f > 0)) throw std::invalid_argument("sup_deviation: norm_f must be positive");
  const auto dev = [&](Real t) { return std::abs(target(t) - eval_coeffs(coeffs, t)); };

  Real best_t = 0, best = dev(0);
  const Real step = norm_f / samples;
  for (int i = 1; i <= samples; ++i) {
    const Real t = i * step;
    const Real d = dev(t);
    if (d > best) {
      best = d;
      best_t = t;
    }
  }
  // Local refinement around the best sample; the scan alone can miss the
  // true sup by O(step^2 |target''|) near a sharp interior maximum.
  Real radius = step;
  for (int round = 0; round < 6; ++round) {
    const Real lo = std::max<Real>(0, best_t - radius);
    const Real hi = std::min(norm_f, best_t + radius);
    const int fine = 40;
    for (int i = 0; i <= fine; ++i) {
      const Real t = lo + (hi - lo) * i / fine;
      const Real d = dev(t);
      if (d > best) {
        best = d;
        best_t = t;
      }
    }
    radius /= 10;
  }
  return best;
}

FilterPolynomial fit_filter_polynomial(Real alpha, Real norm_f,
                                       NodePlacement placement, int degree) {
  if (!(alpha > 0)) throw std::invalid_argument("fit_filter_polynomial: alpha must be positive");
  if (norm_f < 0) throw std::invalid_argument("fit_filter_polynomial: norm_f must be nonnegative");
  if (norm_f == 0)
    throw degenerate_error("fit_filter_polynomial: empty spectrum (norm_f = 0)");

  const auto target = [alpha](Real t) { return gamma_alpha(t, alpha); };
  FilterPolynomial poly;
  poly.alpha = alpha;
  poly.norm_f = norm_f;
  poly.coeffs = fit_zero_rooted_polynomial(target, norm_f, degree, 10, placement, 1e-8);
  poly.eps = sup_deviation(target, poly.coeffs, norm_f);
  return poly;
}

}  // namespace dsm
