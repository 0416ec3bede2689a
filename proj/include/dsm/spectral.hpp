#pragma once

#include "dsm/types.hpp"

namespace dsm {

/// Singular system F = U diag(s) V^*, s sorted descending.
struct SpectralDecomposition {
  RVector s;
  CMatrix U;
  CMatrix V;
};

/// Full SVD of a square complex matrix (M <= 1e4). Throws numerical_error
/// if the decomposition fails its residual/orthonormality contract.
SpectralDecomposition svd(const Eigen::Ref<const CMatrix>& m);

/// V diag(sqrt(s)) V^*: the Hermitian PSD operator |F|^{1/2} = (F^* F)^{1/4}.
CMatrix half_power_matrix(const SpectralDecomposition& decomp);

/// |Re F| + |Im F| with Re F = (F + F^*)/2, Im F = (F - F^*)/(2i) and |.|
/// taken through the Hermitian eigendecomposition. Hermitian PSD.
CMatrix f_sharp(const Eigen::Ref<const CMatrix>& m);

}  // namespace dsm
