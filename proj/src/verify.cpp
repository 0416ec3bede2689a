#include "dsm/verify.hpp"

#include "dsm/indicators.hpp"
#include "dsm/spectral.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace dsm {

namespace {

class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : rng_(seed) {}
  Real next01() { return (static_cast<Real>(rng_() >> 11) + 0.5) * 0x1p-53; }
  Real next(Real lo, Real hi) { return lo + (hi - lo) * next01(); }
  Real gaussian() {
    const Real u1 = next01(), u2 = next01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
  }

 private:
  std::mt19937_64 rng_;
};

void record(CheckReport& report, Real margin, Real slack,
            const std::function<std::string()>& what) {
  report.worst_margin = std::min(report.worst_margin, margin);
  if (margin < -slack) {
    ++report.violations;
    if (report.detail.empty()) report.detail = what();
  }
}

std::string format_point(const RVector& z) {
  std::ostringstream out;
  out << "(";
  for (Eigen::Index i = 0; i < z.size(); ++i) out << (i ? "," : "") << z(i);
  out << ")";
  return out.str();
}

}  // namespace

CMatrix random_unitary(int M, std::uint64_t seed) {
  if (M < 1) throw std::invalid_argument("random_unitary: M must be >= 1");
  UniformStream stream(seed);
  CMatrix g(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) g(i, j) = Complex(stream.gaussian(), stream.gaussian());
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  // Fix the column phases so the factor is unique given the seed.
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < M; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

SyntheticNormalOperator synth_normal_farfield(const WaveContext& ctx,
                                              const Eigen::Ref<const RVector>& phases,
                                              std::uint64_t unitary_seed) {
  if (ctx.dimension != 2)
    throw std::invalid_argument("synth_normal_farfield: 2D contexts only");
  const int M = static_cast<int>(phases.size());
  if (M < 1) throw std::invalid_argument("synth_normal_farfield: need at least one phase");

  SyntheticNormalOperator op;
  op.ctx = ctx;
  op.phases = phases;
  op.lambda.resize(M);
  const Complex two_ik_gamma_sq = Complex(0, 2) * ctx.k * ctx.gamma_sq();
  for (int j = 0; j < M; ++j) {
    const Real theta = phases(j);
    if (!(theta > 0) || !(theta < 2 * pi))
      throw std::invalid_argument("synth_normal_farfield: phases must lie in (0, 2 pi)");
    const Complex lambda =
        (std::exp(Complex(0, theta)) - Real(1)) / two_ik_gamma_sq;
    // In 2D the same eigenvalue reads 8 pi sin(theta/2) e^{i theta/2}; both
    // forms have to agree to machine precision.
    const Complex closed =
        8.0 * pi * std::sin(theta / 2) * std::exp(Complex(0, theta / 2));
    if (std::abs(lambda - closed) > 1e-12 * std::max<Real>(1, std::abs(lambda)))
      throw numerical_error("synth_normal_farfield: eigenvalue forms disagree");
    op.lambda(j) = lambda;
  }

  op.eigenvectors = random_unitary(M, unitary_seed);
  op.farfield = op.eigenvectors * op.lambda.asDiagonal() * op.eigenvectors.adjoint();

  // Smallest arc containing the eigenvalue phases theta_j / 2: sort, take
  // the complement of the largest circular gap.
  std::vector<Real> args(M);
  for (int j = 0; j < M; ++j) args[j] = std::arg(op.lambda(j));
  std::sort(args.begin(), args.end());
  Real largest_gap = 2 * pi - (args.back() - args.front());
  for (int j = 1; j < M; ++j)
    largest_gap = std::max(largest_gap, args[j] - args[j - 1]);
  const Real opening = 2 * pi - largest_gap;
  if (opening < pi) op.mu = std::cos(opening / 2);
  return op;
}

CMatrix q_matrix(const SyntheticNormalOperator& op) {
  const int M = static_cast<int>(op.lambda.size());
  CVector unimodular(M);
  for (int j = 0; j < M; ++j) unimodular(j) = op.lambda(j) / std::abs(op.lambda(j));
  return op.eigenvectors * unimodular.asDiagonal() * op.eigenvectors.adjoint();
}

CheckReport check_q_coercivity(const SyntheticNormalOperator& op, int trials,
                               std::uint64_t seed) {
  if (!op.mu)
    throw std::invalid_argument("check_q_coercivity: mu is undefined (phase arc >= pi)");
  CheckReport report;
  report.name = "q_coercivity";
  report.trials = trials;
  report.seeds = {seed};
  const CMatrix q = q_matrix(op);
  const int M = static_cast<int>(op.lambda.size());
  UniformStream stream(seed);
  for (int t = 0; t < trials; ++t) {
    CVector g(M);
    for (int j = 0; j < M; ++j) g(j) = Complex(stream.gaussian(), stream.gaussian());
    g /= g.norm();
    const CVector qg = q * g;
    const Real form = std::abs(g.dot(qg));
    record(report, form - *op.mu, 1e-9, [&] {
      std::ostringstream what;
      what << "trial " << t << ": |g*Qg| = " << form << " below mu = " << *op.mu;
      return what.str();
    });
    record(report, Real(1) - qg.norm(), 1e-12, [&] {
      std::ostringstream what;
      what << "trial " << t << ": ||Qg|| = " << qg.norm() << " exceeds 1";
      return what.str();
    });
  }
  return report;
}

CheckReport check_equivalence(const SyntheticNormalOperator& op, int num_z,
                              Real k, const DirectionSet& dirs,
                              std::uint64_t seed) {
  if (!op.mu)
    throw std::invalid_argument("check_equivalence: mu is undefined (phase arc >= pi)");
  if (dirs.count() != op.lambda.size())
    throw std::invalid_argument("check_equivalence: direction count mismatch");
  CheckReport report;
  report.name = "dsm_fdsm_equivalence";
  report.trials = num_z;
  report.seeds = {seed};
  const WaveContext ctx{dirs.dimension, k};
  const SpectralDecomposition decomp = svd(op.farfield);
  const Real mu = *op.mu;
  const Real sqrt_s1 = std::sqrt(decomp.s(0));
  const int M = dirs.count();
  UniformStream stream(seed);
  for (int t = 0; t < num_z; ++t) {
    RVector z(dirs.dimension);
    for (int i = 0; i < dirs.dimension; ++i) z(i) = stream.next(-1, 1);
    const CVector phi = phi_vector(z, ctx, dirs);
    const Real dsm = w_dsm(op.farfield, phi);
    const Real fdsm = w_fdsm(decomp, phi);
    record(report, dsm - mu / M * fdsm * fdsm, 1e-9, [&] {
      std::ostringstream what;
      what << "lower bound violated at z = " << format_point(z)
           << ": (mu/M) W_FDSM^2 = " << mu / M * fdsm * fdsm
           << " > W_DSM = " << dsm;
      return what.str();
    });
    record(report, sqrt_s1 * fdsm - dsm, 1e-9, [&] {
      std::ostringstream what;
      what << "upper bound violated at z = " << format_point(z)
           << ": W_DSM = " << dsm << " > sqrt(s1) W_FDSM = " << sqrt_s1 * fdsm;
      return what.str();
    });
  }
  return report;
}

CheckReport check_tdsm_bound(const SyntheticNormalOperator& op,
                             const FilterPolynomial& poly, int num_z, Real k,
                             const DirectionSet& dirs, std::uint64_t seed) {
  if (!op.mu)
    throw std::invalid_argument("check_tdsm_bound: mu is undefined (phase arc >= pi)");
  if (dirs.count() != op.lambda.size())
    throw std::invalid_argument("check_tdsm_bound: direction count mismatch");
  CheckReport report;
  report.name = "tdsm_bound";
  report.trials = num_z;
  report.seeds = {seed};
  const WaveContext ctx{dirs.dimension, k};
  const SpectralDecomposition decomp = svd(op.farfield);
  const Real mu = *op.mu;
  const Real alpha = poly.alpha;
  const int M = dirs.count();
  const Real tail = M * (2 * poly.eps * c_alpha(alpha, poly.norm_f) + poly.eps * poly.eps);
  UniformStream stream(seed);
  for (int t = 0; t < num_z; ++t) {
    RVector z(dirs.dimension);
    for (int i = 0; i < dirs.dimension; ++i) z(i) = stream.next(-1, 1);
    const CVector phi = phi_vector(z, ctx, dirs);
    const Real tdsm = w_tdsm(decomp, poly, phi);
    const Real dsm = w_dsm(op.farfield, phi);
    const Real bound = dsm / (mu * alpha * alpha) + tail;
    record(report, bound - tdsm, 1e-9, [&] {
      std::ostringstream what;
      what << "bound violated at z = " << format_point(z)
           << ": W_TDSM = " << tdsm << " > " << bound;
      return what.str();
    });
  }
  return report;
}

Real estimate_decay_rate(const std::vector<Real>& radii,
                         const std::vector<RVector>& annulus_values) {
  if (radii.size() < 3)
    throw std::invalid_argument("estimate_decay_rate: need at least 3 radii");
  if (annulus_values.size() != radii.size())
    throw std::invalid_argument("estimate_decay_rate: radii/value count mismatch");
  const Eigen::Index n = static_cast<Eigen::Index>(radii.size());
  RVector log_r(n), log_mean(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (annulus_values[i].size() < 64)
      throw std::invalid_argument("estimate_decay_rate: need >= 64 samples per annulus");
    if (!(radii[i] > 0))
      throw std::invalid_argument("estimate_decay_rate: radii must be positive");
    const Real mean = annulus_values[i].mean();
    if (!(mean > 0))
      throw degenerate_error("estimate_decay_rate: nonpositive annulus mean");
    log_r(i) = std::log(radii[i]);
    log_mean(i) = std::log(mean);
  }
  const RVector dr = log_r.array() - log_r.mean();
  const RVector dm = log_mean.array() - log_mean.mean();
  return dr.dot(dm) / dr.squaredNorm();
}

}  // namespace dsm
