#pragma once

#include "dsm/filter.hpp"
#include "dsm/spectral.hpp"
#include "dsm/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dsm {

/// Test vector [exp(-i k xhat_j . z)]_j; every entry has modulus 1.
CVector phi_vector(const Eigen::Ref<const RVector>& z, const WaveContext& ctx,
                   const DirectionSet& dirs);

/// |phi^* F phi| on the raw (noisy) matrix.
Real w_dsm(const Eigen::Ref<const CMatrix>& noisy,
           const Eigen::Ref<const CVector>& phi);

/// sum_j sqrt(s_j) |phi^* v_j|^2.
Real w_fdsm(const SpectralDecomposition& decomp,
            const Eigen::Ref<const CVector>& phi);

/// sum_j P^2(s_j) |phi^* v_j|^2; the polynomial must have been fitted to
/// this spectrum (norm_f within 10% of s_1).
Real w_tdsm(const SpectralDecomposition& decomp, const FilterPolynomial& poly,
            const Eigen::Ref<const CVector>& phi);

/// sum_j f(s_j)^2 |phi^* v_j|^2 for an arbitrary spectral weight f.
Real w_filtered(const SpectralDecomposition& decomp,
                const std::function<Real(Real)>& filter,
                const Eigen::Ref<const CVector>& phi);

/// Picard-series comparison indicator: sum over {j : s_j > cutoff * s_1}
/// of |phi^* v_j|^2 / s_j. Diagnostic only; unstable by construction.
Real fm_picard(const SpectralDecomposition& decomp,
               const Eigen::Ref<const CVector>& phi, Real cutoff);

enum class IndicatorKind { dsm, fdsm, tdsm, fm };

std::string indicator_name(IndicatorKind kind);
IndicatorKind indicator_from_name(const std::string& name);

/// Rectangular sampling window, endpoint inclusive. In 3D the window is a
/// plane slice with coordinate `plane_axis` frozen at `plane_offset`; the
/// (x, y) bounds then refer to the two remaining axes in ascending order.
struct SamplingGrid {
  Real x_lo = -1, x_hi = 1;
  Real y_lo = -1, y_hi = 1;
  int nx = 2, ny = 2;
  int plane_axis = -1;  // -1 in 2D
  Real plane_offset = 0.0;

  Real dx() const { return (x_hi - x_lo) / (nx - 1); }
  Real dy() const { return (y_hi - y_lo) / (ny - 1); }
  Real x(int a) const { return x_lo + a * dx(); }
  Real y(int b) const { return y_lo + b * dy(); }
  /// Ambient sampling point for node (a, b).
  RVector point(int a, int b, int dimension) const;
};

enum class GridState { raw, normalized, sharpened };

struct IndicatorGrid {
  IndicatorKind kind = IndicatorKind::dsm;
  SamplingGrid grid;
  GridMatrix values;  // nx x ny, values(a, b) at grid.point(a, b)
  GridState state = GridState::raw;
  Real p = 1.0;  // sharpening exponent, meaningful once sharpened

  std::string state_label() const;
};

/// Everything a grid evaluation may need; only the pieces required by the
/// requested indicator kind have to be present.
struct IndicatorData {
  const WaveContext* ctx = nullptr;
  const DirectionSet* dirs = nullptr;
  const CMatrix* matrix = nullptr;               // dsm
  const SpectralDecomposition* decomp = nullptr; // fdsm / tdsm / fm
  const FilterPolynomial* poly = nullptr;        // tdsm
  Real fm_cutoff = 1e-8;
};

/// Raw indicator values over the grid. Deterministic and independent of the
/// worker count (workers = 0 means all hardware threads).
IndicatorGrid evaluate_grid(IndicatorKind kind, const IndicatorData& data,
                            const SamplingGrid& grid, int workers = 0);

/// Divide by the grid maximum; throws degenerate_error on an all-zero grid.
IndicatorGrid normalize(IndicatorGrid grid);

/// v -> v^p on a normalized grid, p >= 1. p = 1 leaves the grid unchanged.
IndicatorGrid sharpen(IndicatorGrid grid, Real p);

struct GridArgmax {
  int a = 0;
  int b = 0;
  Real value = 0;
};

/// First maximum in row-major order.
GridArgmax argmax(const IndicatorGrid& grid);

struct LevelSet {
  Real tau = 0;
  std::vector<std::uint8_t> mask;         // nx*ny, row-major (a * ny + b)
  std::vector<Eigen::Vector2d> contour;   // centers of cells where the mask changes
};

/// Threshold mask {value >= tau} plus the contour cells, for a normalized
/// grid and tau in (0, 1). Contour points are in grid-plane coordinates.
LevelSet level_set(const IndicatorGrid& grid, Real tau);

/// Symmetric Hausdorff distance between contour points and equally spaced
/// samples of the true 2D boundary.
Real hausdorff_to_truth(const std::vector<Eigen::Vector2d>& contour,
                        const Scatterer& truth, int boundary_samples = 720);

}  // namespace dsm
