#include "dsm/noise.hpp"

#include "dsm/forward.hpp"
#include "dsm/geometry.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace dsm;

TEST_SUITE_BEGIN("noise");

TEST_CASE("spectral norm basics") {
  CHECK(spectral_norm(CMatrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-12));

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = Complex(3, 0);
  d(1, 1) = Complex(0, -4);
  CHECK(spectral_norm(d) == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(spectral_norm(CMatrix()), std::invalid_argument);
}

TEST_CASE("spectral norm agrees with power iteration") {
  const CMatrix f = oracles::random_complex_matrix(32, 32, 5);
  const Real direct = spectral_norm(f);
  const Real iterated = oracles::power_iteration_norm(f);
  CHECK(std::abs(direct - iterated) < 1e-8 * direct);
}

TEST_CASE("noise matrix has unit spectral norm and is seeded") {
  const CMatrix e = noise_matrix(16, 42);
  CHECK(std::abs(spectral_norm(e) - 1.0) < 1e-12);

  const CMatrix again = noise_matrix(16, 42);
  CHECK((e - again).cwiseAbs().maxCoeff() == 0.0);

  // different seeds give different matrices
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CMatrix a = noise_matrix(8, seed);
    const CMatrix b = noise_matrix(8, seed + 1);
    CHECK((a - b).norm() > 0);
  }
}

namespace {

FarFieldMatrix test_farfield(int M) {
  const WaveContext ctx = make_wave_context(2, 10.0);
  const DirectionSet dirs = make_directions(2, M);
  return analytic_farfield(0.4, 0.5, ctx, dirs);
}

}  // namespace

TEST_CASE("corrupt with delta = 0 is the identity on the entries") {
  const FarFieldMatrix clean = test_farfield(8);
  const FarFieldMatrix noisy = corrupt(clean, NoiseSpec{0.0, 3});
  CHECK((noisy.entries - clean.entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK(noisy.provenance.kind == Provenance::Kind::noisy);
  CHECK(noisy.provenance.delta == 0.0);
  CHECK(noisy.provenance.seed == 3);
}

TEST_CASE("corrupt is deterministic given the seed") {
  const FarFieldMatrix clean = test_farfield(12);
  const FarFieldMatrix a = corrupt(clean, NoiseSpec{0.05, 17});
  const FarFieldMatrix b = corrupt(clean, NoiseSpec{0.05, 17});
  CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("corrupt applies exactly delta * F o E") {
  const FarFieldMatrix clean = test_farfield(16);
  const Real delta = 0.05;
  const std::uint64_t seed = 9;
  const FarFieldMatrix noisy = corrupt(clean, NoiseSpec{delta, seed});
  const CMatrix e = noise_matrix(16, seed);

  const Real scale = clean.entries.cwiseAbs().maxCoeff();
  Real worst = 0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const Complex hadamard = delta * clean.entries(i, j) * e(i, j);
      worst = std::max(worst, std::abs((noisy.entries(i, j) - clean.entries(i, j)) - hadamard));
    }
  CHECK(worst < 1e-13 * scale);

  // Hadamard-product norm bound with c = M
  const Real diff_norm = spectral_norm(noisy.entries - clean.entries);
  CHECK(diff_norm <= delta * scale * 16 * (1 + 1e-12));
}

TEST_CASE("corrupting noisy data is refused") {
  const FarFieldMatrix clean = test_farfield(8);
  const FarFieldMatrix noisy = corrupt(clean, NoiseSpec{0.01, 1});
  CHECK_THROWS_AS(corrupt(noisy, NoiseSpec{0.01, 2}), std::invalid_argument);
  CHECK_THROWS_AS(corrupt(clean, NoiseSpec{-0.1, 1}), std::invalid_argument);
}

TEST_SUITE_END();
