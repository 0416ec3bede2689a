#include "dsm/spectral.hpp"

#include "dsm/verify.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

using namespace dsm;

TEST_SUITE_BEGIN("spectral");

TEST_CASE("svd of a diagonal matrix") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 2;
  d(1, 1) = 1;
  const SpectralDecomposition decomp = svd(d);
  CHECK(decomp.s(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(decomp.s(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(decomp.s(2) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("svd recovers singular values of a rotated diagonal") {
  const Real a = 0.3, b = -0.7;
  CMatrix q(2, 2), p(2, 2);
  q << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  p << std::cos(b), -std::sin(b), std::sin(b), std::cos(b);
  CMatrix s = CMatrix::Zero(2, 2);
  s(0, 0) = 3;
  s(1, 1) = 1;
  const SpectralDecomposition decomp = svd(CMatrix(q * s * p.adjoint()));
  CHECK(decomp.s(0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(decomp.s(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("svd residual and orthonormality contracts") {
  const CMatrix f = oracles::random_complex_matrix(32, 32, 21);
  const SpectralDecomposition d = svd(f);
  const Real s1 = d.s(0);
  CHECK((f - d.U * d.s.asDiagonal() * d.V.adjoint()).cwiseAbs().maxCoeff() < 1e-10 * s1);
  CHECK((d.U.adjoint() * d.U - CMatrix::Identity(32, 32)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((d.V.adjoint() * d.V - CMatrix::Identity(32, 32)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::is_sorted(d.s.begin(), d.s.end(), std::greater<>()));
  CHECK(d.s(d.s.size() - 1) >= 0);
}

TEST_CASE("svd input validation") {
  CHECK_THROWS_AS(svd(CMatrix()), std::invalid_argument);
  CHECK_THROWS_AS(svd(CMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("half power of a PSD diagonal") {
  CMatrix f = CMatrix::Zero(2, 2);
  f(0, 0) = 4;
  f(1, 1) = 1;
  const CMatrix h = half_power_matrix(svd(f));
  CHECK(std::abs(h(0, 0) - Complex(2, 0)) < 1e-12);
  CHECK(std::abs(h(1, 1) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(h(0, 1)) < 1e-12);
}

TEST_CASE("half power of zero is zero") {
  const CMatrix h = half_power_matrix(svd(CMatrix::Zero(3, 3)));
  CHECK(h.cwiseAbs().maxCoeff() < 1e-300);
}

TEST_CASE("half power squares back to V diag(s) V^*") {
  const CMatrix f = oracles::random_complex_matrix(8, 8, 33);
  const SpectralDecomposition d = svd(f);
  const CMatrix h = half_power_matrix(d);
  const CMatrix squared = h * h;
  const CMatrix target = d.V * d.s.asDiagonal() * d.V.adjoint();
  CHECK((squared - target).cwiseAbs().maxCoeff() < 1e-9 * (1 + d.s(0)));
  // Hermitian PSD
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("f_sharp on real and imaginary diagonals") {
  CMatrix f = CMatrix::Zero(2, 2);
  f(0, 0) = 1;
  f(1, 1) = -2;
  const CMatrix s = f_sharp(f);
  CHECK(std::abs(s(0, 0) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(s(1, 1) - Complex(2, 0)) < 1e-12);

  const CMatrix si = f_sharp(CMatrix(Complex(0, 1) * CMatrix::Identity(3, 3)));
  CHECK((si - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("f_sharp is Hermitian PSD") {
  const CMatrix f = oracles::random_complex_matrix(12, 12, 44);
  const CMatrix s = f_sharp(f);
  CHECK((s - s.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(s);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("singular values of a normal matrix are its eigenvalue moduli") {
  const WaveContext ctx = make_wave_context(2, 10.0);
  RVector phases(24);
  for (int j = 0; j < 24; ++j) phases(j) = 0.3 + 5.0 * j / 23.0;
  const SyntheticNormalOperator op = synth_normal_farfield(ctx, phases, 3);
  const SpectralDecomposition d = svd(op.farfield);
  RVector moduli(24);
  for (int j = 0; j < 24; ++j) moduli(j) = std::abs(op.lambda(j));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  CHECK((moduli - d.s).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_SUITE_END();
