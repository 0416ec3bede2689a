#pragma once

#include "dsm/filter.hpp"
#include "dsm/types.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace dsm {

/// Discrete normal operator whose scattering matrix I + 2ik|gamma|^2 F is
/// exactly unitary: lambda_j = (e^{i theta_j} - 1) / (2ik|gamma|^2) with
/// theta_j in (0, 2 pi), F = Psi diag(lambda) Psi^*. mu is the constructed
/// coercivity constant of the unimodular factor Q = Psi diag(lambda/|lambda|) Psi^*:
/// cos(omega/2) where omega is the opening of the smallest arc holding all
/// eigenvalue phases. Undefined (nullopt) when omega >= pi.
struct SyntheticNormalOperator {
  WaveContext ctx;
  RVector phases;        // theta_j
  CMatrix eigenvectors;  // unitary Psi
  CVector lambda;
  std::optional<Real> mu;
  CMatrix farfield;      // Psi diag(lambda) Psi^*
};

/// Unitary matrix from a QR factorization of a seeded Gaussian matrix.
CMatrix random_unitary(int M, std::uint64_t seed);

SyntheticNormalOperator synth_normal_farfield(const WaveContext& ctx,
                                              const Eigen::Ref<const RVector>& phases,
                                              std::uint64_t unitary_seed);

/// Psi diag(lambda/|lambda|) Psi^*.
CMatrix q_matrix(const SyntheticNormalOperator& op);

struct CheckReport {
  std::string name;
  int trials = 0;
  int violations = 0;
  Real worst_margin = std::numeric_limits<Real>::infinity();
  std::vector<std::uint64_t> seeds;
  std::string detail;  // first violation, if any

  bool passed() const { return violations == 0; }
};

/// |g^* Q g| >= mu and ||Q g|| <= ||g|| over random unit vectors g.
CheckReport check_q_coercivity(const SyntheticNormalOperator& op, int trials,
                               std::uint64_t seed);

/// Two-sided bound (mu / M) W_FDSM^2 <= W_DSM <= sqrt(s_1) W_FDSM at random
/// sampling points z in [-1, 1]^d.
CheckReport check_equivalence(const SyntheticNormalOperator& op, int num_z,
                              Real k, const DirectionSet& dirs,
                              std::uint64_t seed);

/// W_TDSM <= W_DSM / (mu alpha^2) + M (2 eps C_alpha + eps^2) at random
/// sampling points; poly must have been fitted to this operator's s_1.
CheckReport check_tdsm_bound(const SyntheticNormalOperator& op,
                             const FilterPolynomial& poly, int num_z, Real k,
                             const DirectionSet& dirs, std::uint64_t seed);

/// Least-squares slope of log(mean annulus value) against log(radius).
/// Needs >= 3 radii with >= 64 samples each and positive means.
Real estimate_decay_rate(const std::vector<Real>& radii,
                         const std::vector<RVector>& annulus_values);

}  // namespace dsm
