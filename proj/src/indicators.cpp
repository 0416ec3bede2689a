#include "dsm/indicators.hpp"

#include "dsm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace dsm {

CVector phi_vector(const Eigen::Ref<const RVector>& z, const WaveContext& ctx,
                   const DirectionSet& dirs) {
  if (z.size() != dirs.dimension)
    throw std::invalid_argument("phi_vector: point dimension mismatch");
  const int M = dirs.count();
  CVector phi(M);
  const RVector phase = -ctx.k * (dirs.directions * z);
  for (int j = 0; j < M; ++j)
    phi(j) = Complex(std::cos(phase(j)), std::sin(phase(j)));
  return phi;
}

Real w_dsm(const Eigen::Ref<const CMatrix>& noisy,
           const Eigen::Ref<const CVector>& phi) {
  if (noisy.rows() != noisy.cols() || noisy.rows() != phi.size())
    throw std::invalid_argument("w_dsm: dimension mismatch");
  return std::abs(phi.dot(noisy * phi));
}

Real w_fdsm(const SpectralDecomposition& decomp,
            const Eigen::Ref<const CVector>& phi) {
  if (decomp.V.rows() != phi.size())
    throw std::invalid_argument("w_fdsm: dimension mismatch");
  const CVector proj = decomp.V.adjoint() * phi;
  Real sum = 0;
  for (Eigen::Index j = 0; j < proj.size(); ++j)
    sum += std::sqrt(decomp.s(j)) * std::norm(proj(j));
  return sum;
}

Real w_filtered(const SpectralDecomposition& decomp,
                const std::function<Real(Real)>& filter,
                const Eigen::Ref<const CVector>& phi) {
  if (decomp.V.rows() != phi.size())
    throw std::invalid_argument("w_filtered: dimension mismatch");
  const CVector proj = decomp.V.adjoint() * phi;
  Real sum = 0;
  for (Eigen::Index j = 0; j < proj.size(); ++j) {
    const Real w = filter(decomp.s(j));
    sum += w * w * std::norm(proj(j));
  }
  return sum;
}

Real w_tdsm(const SpectralDecomposition& decomp, const FilterPolynomial& poly,
            const Eigen::Ref<const CVector>& phi) {
  const Real s1 = decomp.s(0);
  if (std::abs(poly.norm_f - s1) > 0.1 * std::max(s1, Real(1e-300))) {
    std::ostringstream msg;
    msg << "w_tdsm: filter polynomial was fitted to norm_f = " << poly.norm_f
        << " but the spectrum has s_1 = " << s1;
    throw config_error(msg.str());
  }
  return w_filtered(decomp, [&](Real s) { return eval_polynomial(poly, s); }, phi);
}

Real fm_picard(const SpectralDecomposition& decomp,
               const Eigen::Ref<const CVector>& phi, Real cutoff) {
  if (cutoff < 0) throw std::invalid_argument("fm_picard: cutoff must be nonnegative");
  if (decomp.V.rows() != phi.size())
    throw std::invalid_argument("fm_picard: dimension mismatch");
  const Real floor = cutoff * decomp.s(0);
  const CVector proj = decomp.V.adjoint() * phi;
  Real sum = 0;
  int kept = 0;
  for (Eigen::Index j = 0; j < proj.size(); ++j) {
    if (!(decomp.s(j) > floor) || decomp.s(j) == 0) continue;
    sum += std::norm(proj(j)) / decomp.s(j);
    ++kept;
  }
  if (kept == 0)
    throw degenerate_error("fm_picard: every singular value falls below the cutoff");
  return sum;
}

std::string indicator_name(IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::dsm: return "dsm";
    case IndicatorKind::fdsm: return "fdsm";
    case IndicatorKind::tdsm: return "tdsm";
    case IndicatorKind::fm: return "fm";
  }
  throw std::invalid_argument("unknown indicator kind");
}

IndicatorKind indicator_from_name(const std::string& name) {
  if (name == "dsm") return IndicatorKind::dsm;
  if (name == "fdsm") return IndicatorKind::fdsm;
  if (name == "tdsm") return IndicatorKind::tdsm;
  if (name == "fm") return IndicatorKind::fm;
  throw std::invalid_argument("unknown indicator name: " + name);
}

RVector SamplingGrid::point(int a, int b, int dimension) const {
  if (dimension == 2) {
    RVector p(2);
    p << x(a), y(b);
    return p;
  }
  if (plane_axis < 0 || plane_axis > 2)
    throw std::invalid_argument("sampling grid: 3D grids need plane_axis in {0,1,2}");
  RVector p(3);
  p(plane_axis) = plane_offset;
  const int u = plane_axis == 0 ? 1 : 0;
  const int v = plane_axis == 2 ? 1 : 2;
  p(u) = x(a);
  p(v) = y(b);
  return p;
}

std::string IndicatorGrid::state_label() const {
  switch (state) {
    case GridState::raw: return "raw";
    case GridState::normalized: return "normalized";
    case GridState::sharpened: {
      std::ostringstream label;
      label << "normalized-sharpened(" << p << ")";
      return label.str();
    }
  }
  throw std::logic_error("unknown grid state");
}

namespace {

void validate_grid(const SamplingGrid& grid) {
  if (grid.nx < 2 || grid.ny < 2)
    throw std::invalid_argument("sampling grid: nx and ny must be >= 2");
  if (!(grid.x_hi > grid.x_lo) || !(grid.y_hi > grid.y_lo))
    throw std::invalid_argument("sampling grid: degenerate bounds");
}

std::function<Real(const CVector&)> point_op(IndicatorKind kind,
                                             const IndicatorData& data) {
  switch (kind) {
    case IndicatorKind::dsm:
      if (!data.matrix) throw config_error("evaluate_grid: dsm needs the raw matrix");
      return [&data](const CVector& phi) { return w_dsm(*data.matrix, phi); };
    case IndicatorKind::fdsm:
      if (!data.decomp) throw config_error("evaluate_grid: fdsm needs a decomposition");
      return [&data](const CVector& phi) { return w_fdsm(*data.decomp, phi); };
    case IndicatorKind::tdsm:
      if (!data.decomp || !data.poly)
        throw config_error("evaluate_grid: tdsm needs a decomposition and a filter polynomial");
      return [&data](const CVector& phi) { return w_tdsm(*data.decomp, *data.poly, phi); };
    case IndicatorKind::fm:
      if (!data.decomp) throw config_error("evaluate_grid: fm needs a decomposition");
      return [&data](const CVector& phi) {
        return fm_picard(*data.decomp, phi, data.fm_cutoff);
      };
  }
  throw std::invalid_argument("unknown indicator kind");
}

}  // namespace

IndicatorGrid evaluate_grid(IndicatorKind kind, const IndicatorData& data,
                            const SamplingGrid& grid, int workers) {
  validate_grid(grid);
  if (!data.ctx || !data.dirs)
    throw config_error("evaluate_grid: wave context and directions are required");
  const auto op = point_op(kind, data);
  const int dim = data.ctx->dimension;

  IndicatorGrid out;
  out.kind = kind;
  out.grid = grid;
  out.values.resize(grid.nx, grid.ny);

  if (workers <= 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, grid.nx);

  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run_rows = [&](int a_begin, int a_end) {
    try {
      for (int a = a_begin; a < a_end; ++a)
        for (int b = 0; b < grid.ny; ++b) {
          const CVector phi = phi_vector(grid.point(a, b, dim), *data.ctx, *data.dirs);
          out.values(a, b) = op(phi);
        }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    run_rows(0, grid.nx);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (grid.nx + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int a_begin = w * chunk;
      const int a_end = std::min(grid.nx, a_begin + chunk);
      if (a_begin >= a_end) break;
      pool.emplace_back(run_rows, a_begin, a_end);
    }
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

IndicatorGrid normalize(IndicatorGrid grid) {
  const Real max = grid.values.maxCoeff();
  if (!(max > 0)) throw degenerate_error("normalize: grid has no positive values");
  grid.values /= max;
  if (grid.state == GridState::raw) grid.state = GridState::normalized;
  return grid;
}

IndicatorGrid sharpen(IndicatorGrid grid, Real p) {
  if (p < 1) throw std::invalid_argument("sharpen: p must be >= 1");
  if (grid.state == GridState::raw)
    throw std::invalid_argument("sharpen: normalize the grid first");
  if (p == 1) return grid;
  grid.values = grid.values.array().pow(p);
  grid.state = GridState::sharpened;
  grid.p = p;
  return grid;
}

GridArgmax argmax(const IndicatorGrid& grid) {
  GridArgmax best{0, 0, grid.values(0, 0)};
  for (int a = 0; a < grid.values.rows(); ++a)
    for (int b = 0; b < grid.values.cols(); ++b)
      if (grid.values(a, b) > best.value) best = {a, b, grid.values(a, b)};
  return best;
}

LevelSet level_set(const IndicatorGrid& grid, Real tau) {
  if (grid.state == GridState::raw)
    throw std::invalid_argument("level_set: normalize the grid first");
  if (!(tau > 0) || !(tau < 1))
    throw std::invalid_argument("level_set: tau must lie in (0, 1)");
  const int nx = grid.grid.nx, ny = grid.grid.ny;
  LevelSet out;
  out.tau = tau;
  out.mask.assign(static_cast<std::size_t>(nx) * ny, 0);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b)
      out.mask[static_cast<std::size_t>(a) * ny + b] = grid.values(a, b) >= tau ? 1 : 0;

  for (int a = 0; a + 1 < nx; ++a)
    for (int b = 0; b + 1 < ny; ++b) {
      const int corners = out.mask[static_cast<std::size_t>(a) * ny + b] +
                          out.mask[static_cast<std::size_t>(a + 1) * ny + b] +
                          out.mask[static_cast<std::size_t>(a) * ny + b + 1] +
                          out.mask[static_cast<std::size_t>(a + 1) * ny + b + 1];
      if (corners > 0 && corners < 4)
        out.contour.emplace_back(grid.grid.x(a) + 0.5 * grid.grid.dx(),
                                 grid.grid.y(b) + 0.5 * grid.grid.dy());
    }
  return out;
}

Real hausdorff_to_truth(const std::vector<Eigen::Vector2d>& contour,
                        const Scatterer& truth, int boundary_samples) {
  if (contour.empty())
    throw degenerate_error("hausdorff_to_truth: empty contour");
  const auto boundary = boundary_points(truth, boundary_samples);
  auto one_sided = [](const std::vector<Eigen::Vector2d>& from,
                      const std::vector<Eigen::Vector2d>& to) {
    Real worst = 0;
    for (const auto& p : from) {
      Real best = std::numeric_limits<Real>::infinity();
      for (const auto& q : to) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(contour, boundary), one_sided(boundary, contour));
}

}  // namespace dsm
