#pragma once

#include "dsm/types.hpp"

#include <functional>

namespace dsm {

/// Tikhonov filter sqrt(t) / (alpha + t); continuous at 0 with value 0.
Real gamma_alpha(Real t, Real alpha);

/// max{ 1/(2 sqrt(alpha)), sqrt(norm_f)/(alpha + norm_f) }: dominates
/// gamma_alpha on [0, norm_f].
Real c_alpha(Real alpha, Real norm_f);

/// Node rule for the polynomial fit. `interior` puts the nodes at
/// l * norm_f / num_nodes, l = 1..num_nodes (the zero root is built in);
/// `endpoint_inclusive` is a plain linspace over [0, norm_f].
enum class NodePlacement { interior, endpoint_inclusive };

/// Zero-rooted polynomial approximation of the filter on [0, norm_f]:
/// coeffs[i] multiplies t^{i+1}; eps is the achieved sup deviation.
struct FilterPolynomial {
  Real alpha = 0.0;
  Real norm_f = 0.0;
  RVector coeffs;
  Real eps = 0.0;

  int degree() const { return static_cast<int>(coeffs.size()); }
};

/// Horner evaluation of sum_i coeffs[i] t^{i+1}; exactly 0 at t = 0.
Real eval_polynomial(const FilterPolynomial& poly, Real t);

/// Least-squares fit of a zero-rooted polynomial to `target` at the fit
/// nodes, solved through a truncated SVD: singular values below
/// cutoff * s_max are dropped.
RVector fit_zero_rooted_polynomial(const std::function<Real(Real)>& target,
                                   Real norm_f, int degree, int num_nodes,
                                   NodePlacement placement, Real cutoff);

/// sup |target(t) - P(t)| on [0, norm_f]: a dense equispaced scan (the
/// `samples` grid plus the fit nodes) refined locally around the maximum.
Real sup_deviation(const std::function<Real(Real)>& target,
                   const Eigen::Ref<const RVector>& coeffs, Real norm_f,
                   int samples = 10000);

/// Cubic (by default) fit of gamma_alpha on [0, norm_f] with 10 nodes and
/// spectral cutoff 1e-8, eps measured by sup_deviation.
FilterPolynomial fit_filter_polynomial(Real alpha, Real norm_f,
                                       NodePlacement placement = NodePlacement::interior,
                                       int degree = 3);

}  // namespace dsm
