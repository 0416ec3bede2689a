#pragma once

#include "dsm/types.hpp"

namespace dsm {

struct NoiseSpec {
  Real delta = 0.0;  // dimensionless noise level, >= 0
  std::uint64_t seed = 0;
};

/// Largest singular value of a square complex matrix.
Real spectral_norm(const Eigen::Ref<const CMatrix>& m);

/// Complex Gaussian M x M matrix rescaled to unit spectral norm.
/// Deterministic for a given seed.
CMatrix noise_matrix(int M, std::uint64_t seed);

/// Multiplicative noise: entries F_ij (1 + delta E_ij) with ||E||_2 = 1.
/// The input must be clean; provenance becomes noisy(delta, seed).
FarFieldMatrix corrupt(const FarFieldMatrix& farfield, const NoiseSpec& spec);

}  // namespace dsm
