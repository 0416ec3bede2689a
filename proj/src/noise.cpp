#include "dsm/noise.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <random>

namespace dsm {

Real spectral_norm(const Eigen::Ref<const CMatrix>& m) {
  if (m.size() == 0) throw std::invalid_argument("spectral_norm: empty matrix");
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

namespace {

// Box-Muller on top of mt19937_64; avoids the implementation-defined
// std::normal_distribution so streams are reproducible across platforms.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  Real next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const Real u1 = uniform01();
    const Real u2 = uniform01();
    const Real r = std::sqrt(-2.0 * std::log(u1));
    have_spare_ = true;
    spare_ = r * std::sin(2.0 * pi * u2);
    return r * std::cos(2.0 * pi * u2);
  }

 private:
  Real uniform01() {
    // (0, 1) exclusive
    return (static_cast<Real>(rng_() >> 11) + 0.5) * 0x1p-53;
  }

  std::mt19937_64 rng_;
  bool have_spare_ = false;
  Real spare_ = 0;
};

}  // namespace

CMatrix noise_matrix(int M, std::uint64_t seed) {
  if (M < 1) throw std::invalid_argument("noise_matrix: M must be >= 1");
  GaussianStream gauss(seed);
  CMatrix e(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      const Real re = gauss.next();
      const Real im = gauss.next();
      e(i, j) = Complex(re, im);
    }
  return e / spectral_norm(e);
}

FarFieldMatrix corrupt(const FarFieldMatrix& farfield, const NoiseSpec& spec) {
  if (farfield.provenance.kind != Provenance::Kind::clean)
    throw std::invalid_argument("corrupt: input far field is already noisy");
  if (spec.delta < 0)
    throw std::invalid_argument("corrupt: delta must be nonnegative");
  const int M = static_cast<int>(farfield.entries.rows());
  const CMatrix e = noise_matrix(M, spec.seed);
  FarFieldMatrix out = farfield;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      out.entries(i, j) = farfield.entries(i, j) * (Real(1) + spec.delta * e(i, j));
  out.provenance = Provenance{Provenance::Kind::noisy, spec.delta, spec.seed};
  return out;
}

}  // namespace dsm
