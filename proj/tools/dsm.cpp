// Command-line front end: synthesize far-field data, corrupt it with
// multiplicative noise, reconstruct scatterer supports with the sampling
// indicators, run the theorem checks, and render grids to PGM.

#include "dsm/forward.hpp"
#include "dsm/geometry.hpp"
#include "dsm/indicators.hpp"
#include "dsm/io.hpp"
#include "dsm/noise.hpp"
#include "dsm/spectral.hpp"
#include "dsm/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dsm;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<Real> parse_reals(const std::string& text, const char* what) {
  std::vector<Real> values;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      values.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(what) + ": cannot parse '" + cell + "'");
    }
  }
  return values;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, range));
    const std::uint64_t hi = std::stoull(text.substr(range + 2));
    if (hi < lo) throw CLI::ValidationError("--seeds: empty range " + text);
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) seeds.push_back(std::stoull(cell));
  if (seeds.empty()) throw CLI::ValidationError("--seeds: no seeds given");
  return seeds;
}

// Everything the pipeline commands can be configured with; JSON config file
// values act as defaults, command-line flags override.
struct RunConfig {
  std::string experiment = "run";
  std::string shape = "pear";
  Real radius = 0.4;
  Real n = 0.5;
  std::string center = "0,0";
  Real k = 10.0;
  int M = 32;
  int quad_level = 48;
  bool analytic = false;
  Real delta = 0.05;
  std::uint64_t seed = 1;
  std::string grid = "-1,1,-1,1,100,100";
  int plane_axis = 0;
  Real plane_offset = 0.0;
  std::string indicators = "dsm,fdsm,tdsm";
  Real alpha = 1e-2;
  Real p = 1.0;
  Real tau = -1.0;  // auto: 0.85 in 2D, 0.7 in 3D
  Real fm_cutoff = 1e-8;
  int workers = 0;
  std::string out = "out";
};

// Returns true when the config file names a scatterer (usable as truth).
bool load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config: cannot open " + path);
  json doc = json::parse(in);
  cfg.experiment = doc.value("experiment", cfg.experiment);
  cfg.k = doc.value("k", cfg.k);
  cfg.M = doc.value("M", cfg.M);
  cfg.quad_level = doc.value("quad_level", cfg.quad_level);
  cfg.analytic = doc.value("analytic", cfg.analytic);
  cfg.alpha = doc.value("alpha", cfg.alpha);
  cfg.p = doc.value("p", cfg.p);
  cfg.tau = doc.value("tau", cfg.tau);
  cfg.fm_cutoff = doc.value("fm_cutoff", cfg.fm_cutoff);
  cfg.workers = doc.value("workers", cfg.workers);
  cfg.out = doc.value("out", cfg.out);
  if (doc.contains("scatterer")) {
    const json& s = doc["scatterer"];
    cfg.shape = s.value("shape", cfg.shape);
    cfg.radius = s.value("radius", cfg.radius);
    cfg.n = s.value("n", cfg.n);
    if (s.contains("center")) {
      std::ostringstream c;
      for (std::size_t i = 0; i < s["center"].size(); ++i)
        c << (i ? "," : "") << s["center"][i].get<Real>();
      cfg.center = c.str();
    }
  }
  if (doc.contains("noise")) {
    cfg.delta = doc["noise"].value("delta", cfg.delta);
    cfg.seed = doc["noise"].value("seed", cfg.seed);
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (g.contains("bounds")) {
      std::ostringstream b;
      for (std::size_t i = 0; i < g["bounds"].size(); ++i)
        b << (i ? "," : "") << g["bounds"][i].get<Real>();
      b << "," << g.value("nx", 100) << "," << g.value("ny", 100);
      cfg.grid = b.str();
    }
    cfg.plane_axis = g.value("plane_axis", cfg.plane_axis);
    cfg.plane_offset = g.value("plane_offset", cfg.plane_offset);
  }
  if (doc.contains("indicators")) {
    std::ostringstream inds;
    for (std::size_t i = 0; i < doc["indicators"].size(); ++i)
      inds << (i ? "," : "") << doc["indicators"][i].get<std::string>();
    cfg.indicators = inds.str();
  }
  return doc.contains("scatterer");
}

Scatterer scatterer_from(const RunConfig& cfg) {
  Scatterer s;
  s.shape = shape_from_name(cfg.shape);
  s.radius = cfg.radius;
  s.n = cfg.n;
  const auto c = parse_reals(cfg.center, "--center");
  if (c.size() < 2 || c.size() > 3)
    throw CLI::ValidationError("--center: expected x,y or x,y,z");
  s.center = Eigen::Vector3d(c[0], c[1], c.size() == 3 ? c[2] : 0.0);
  return s;
}

SamplingGrid grid_from(const RunConfig& cfg, int dimension) {
  const auto v = parse_reals(cfg.grid, "--grid");
  if (v.size() != 6)
    throw CLI::ValidationError("--grid: expected x_lo,x_hi,y_lo,y_hi,nx,ny");
  SamplingGrid g;
  g.x_lo = v[0];
  g.x_hi = v[1];
  g.y_lo = v[2];
  g.y_hi = v[3];
  g.nx = static_cast<int>(v[4]);
  g.ny = static_cast<int>(v[5]);
  if (dimension == 3) {
    g.plane_axis = cfg.plane_axis;
    g.plane_offset = cfg.plane_offset;
  }
  return g;
}

int cmd_synthesize(const RunConfig& cfg, const std::string& out_file) {
  const auto start = std::chrono::steady_clock::now();
  const Scatterer scatterer = scatterer_from(cfg);
  const int dim = scatterer.dimension();
  const WaveContext ctx = make_wave_context(dim, cfg.k);
  const DirectionSet dirs = make_directions(dim, cfg.M);

  if (scatterer.n == 1.0)
    std::cerr << "warning: refractive index n = 1 gives zero contrast; "
                 "the far field vanishes\n";

  FarFieldMatrix farfield = [&] {
    if (!cfg.analytic) return born_farfield(scatterer, ctx, dirs, cfg.quad_level);
    if ((scatterer.shape != ShapeKind::disk && scatterer.shape != ShapeKind::ball) ||
        scatterer.center.norm() > 0)
      throw CLI::ValidationError("--analytic requires a centered disk or ball");
    return analytic_farfield(scatterer.radius, scatterer.n, ctx, dirs);
  }();

  io::write_farfield(farfield, out_file);
  std::cout << "wrote " << out_file << " (" << shape_name(scatterer.shape) << ", M=" << cfg.M
            << ", k=" << cfg.k << ") in " << seconds_since(start) << " s\n";
  return 0;
}

int cmd_corrupt(const std::string& in_file, Real delta, std::uint64_t seed,
                const std::string& out_file, bool force) {
  const auto start = std::chrono::steady_clock::now();
  FarFieldMatrix farfield = io::read_farfield(in_file);
  if (farfield.provenance.kind != Provenance::Kind::clean) {
    if (!force) {
      std::cerr << "error: " << in_file
                << " is already noisy (delta=" << farfield.provenance.delta
                << ", seed=" << farfield.provenance.seed
                << "); pass --force to corrupt it anyway\n";
      return 1;
    }
    farfield.provenance = Provenance{};
  }
  const FarFieldMatrix noisy = corrupt(farfield, NoiseSpec{delta, seed});
  io::write_farfield(noisy, out_file);
  std::cout << "wrote " << out_file << " (delta=" << delta << ", seed=" << seed << ") in "
            << seconds_since(start) << " s\n";
  return 0;
}

int cmd_reconstruct(RunConfig cfg, const std::string& in_file, bool have_truth) {
  const auto total_start = std::chrono::steady_clock::now();
  const FarFieldMatrix farfield = io::read_farfield(in_file);
  const int dim = farfield.ctx.dimension;
  if (cfg.tau <= 0) cfg.tau = dim == 2 ? 0.85 : 0.7;

  std::vector<IndicatorKind> kinds;
  {
    std::istringstream in(cfg.indicators);
    std::string name;
    while (std::getline(in, name, ',')) kinds.push_back(indicator_from_name(name));
  }
  if (kinds.empty()) throw CLI::ValidationError("--indicators: none requested");

  const SamplingGrid grid = grid_from(cfg, dim);

  // One SVD and one filter fit per invocation, shared by every indicator;
  // the report always carries s1, epsilon and C_alpha.
  const auto svd_start = std::chrono::steady_clock::now();
  const SpectralDecomposition decomp = svd(farfield.entries);
  const double svd_seconds = seconds_since(svd_start);
  if (!(decomp.s(0) > 0)) {
    std::cerr << "error: reconstruct: the far-field matrix has an empty spectrum "
                 "(s1 = 0); synthesize with nonzero contrast (n != 1)\n";
    return 1;
  }
  const FilterPolynomial poly = fit_filter_polynomial(cfg.alpha, decomp.s(0));

  std::optional<Scatterer> truth;
  if (have_truth && dim == 2) truth = scatterer_from(cfg);

  fs::create_directories(cfg.out);
  json report;
  report["experiment"] = cfg.experiment;
  report["input"] = in_file;
  report["dimension"] = dim;
  report["k"] = farfield.ctx.k;
  report["M"] = farfield.dirs.count();
  report["provenance"] = {
      {"kind", farfield.provenance.kind == Provenance::Kind::clean ? "clean" : "noisy"},
      {"delta", farfield.provenance.delta},
      {"seed", farfield.provenance.seed},
  };
  report["alpha"] = cfg.alpha;
  report["p"] = cfg.p;
  report["tau"] = cfg.tau;
  report["svd_seconds"] = svd_seconds;
  report["s1"] = decomp.s(0);
  report["filter"] = {{"alpha", poly.alpha},
                      {"norm_f", poly.norm_f},
                      {"c", std::vector<Real>(poly.coeffs.begin(), poly.coeffs.end())},
                      {"eps", poly.eps}};
  report["c_alpha"] = c_alpha(poly.alpha, poly.norm_f);
  report["indicators"] = json::array();

  IndicatorData data;
  data.ctx = &farfield.ctx;
  data.dirs = &farfield.dirs;
  data.matrix = &farfield.entries;
  data.decomp = &decomp;
  data.poly = &poly;
  data.fm_cutoff = cfg.fm_cutoff;

  for (const IndicatorKind kind : kinds) {
    const auto start = std::chrono::steady_clock::now();
    IndicatorGrid result = normalize(evaluate_grid(kind, data, grid, cfg.workers));
    if (cfg.p > 1) result = sharpen(result, cfg.p);
    const double elapsed = seconds_since(start);

    const std::string base = indicator_name(kind);
    io::write_indicator_csv(result, fs::path(cfg.out) / (base + ".csv"));
    io::write_pgm(result, fs::path(cfg.out) / (base + ".pgm"));

    const GridArgmax peak = argmax(result);
    const LevelSet levels = level_set(result, cfg.tau);
    json entry = {
        {"kind", base},
        {"csv", base + ".csv"},
        {"pgm", base + ".pgm"},
        {"seconds", elapsed},
        {"argmax", {result.grid.x(peak.a), result.grid.y(peak.b)}},
        {"argmax_value", peak.value},
        {"contour_points", levels.contour.size()},
    };
    if (truth && !levels.contour.empty())
      entry["hausdorff"] = hausdorff_to_truth(levels.contour, *truth);
    report["indicators"].push_back(std::move(entry));
    std::cout << base << ": " << elapsed << " s, argmax (" << result.grid.x(peak.a) << ", "
              << result.grid.y(peak.b) << ")\n";
  }

  report["total_seconds"] = seconds_since(total_start);
  std::ofstream out(fs::path(cfg.out) / "report.json");
  out << report.dump(1) << "\n";
  std::cout << "report: " << (fs::path(cfg.out) / "report.json").string() << " ("
            << seconds_since(total_start) << " s total)\n";
  return 0;
}

int cmd_verify(int M, int trials, int num_z, Real alpha, Real mu_scale,
               const std::string& seeds_text, const std::string& out_dir) {
  const std::vector<std::uint64_t> seeds = parse_seeds(seeds_text);
  fs::create_directories(out_dir);
  const WaveContext ctx = make_wave_context(2, 10.0);
  const DirectionSet dirs = make_directions(2, M);
  RVector phases(M);
  for (int j = 0; j < M; ++j)
    phases(j) = pi / 2 + pi * (M == 1 ? 0.0 : static_cast<Real>(j) / (M - 1));

  int total_violations = 0;
  for (const std::uint64_t seed : seeds) {
    SyntheticNormalOperator op = synth_normal_farfield(ctx, phases, seed);
    if (!op.mu) {
      std::cerr << "error: synthetic operator has no coercivity constant\n";
      return 1;
    }
    *op.mu *= mu_scale;

    std::vector<CheckReport> checks;

    // Eigenvalues must sit on the scattering circle |1 + 2ik|gamma|^2 z| = 1.
    CheckReport circle;
    circle.name = "scattering_circle";
    circle.trials = M;
    circle.seeds = {seed};
    const Complex two_ik_gamma_sq = Complex(0, 2) * ctx.k * ctx.gamma_sq();
    for (int j = 0; j < M; ++j) {
      const Real off = std::abs(std::abs(Real(1) + two_ik_gamma_sq * op.lambda(j)) - Real(1));
      circle.worst_margin = std::min(circle.worst_margin, 1e-12 - off);
      if (off > 1e-12) ++circle.violations;
    }
    checks.push_back(circle);

    checks.push_back(check_q_coercivity(op, trials, seed + 1000));
    checks.push_back(check_equivalence(op, num_z, ctx.k, dirs, seed + 2000));

    const SpectralDecomposition decomp = svd(op.farfield);
    const FilterPolynomial poly = fit_filter_polynomial(alpha, decomp.s(0));
    checks.push_back(check_tdsm_bound(op, poly, num_z, ctx.k, dirs, seed + 3000));

    const fs::path report_path = fs::path(out_dir) / ("verify_seed" + std::to_string(seed) + ".json");
    io::write_check_reports(checks, report_path);
    int seed_violations = 0;
    for (const auto& check : checks) seed_violations += check.violations;
    total_violations += seed_violations;
    std::cout << "seed " << seed << ": " << (seed_violations == 0 ? "ok" : "VIOLATIONS")
              << " (" << report_path.string() << ")\n";
  }
  if (total_violations > 0) {
    std::cerr << "error: " << total_violations << " theorem-check violations\n";
    return 1;
  }
  return 0;
}

int cmd_render(const std::string& in_file, const std::string& out_file) {
  io::write_pgm(io::read_indicator_csv(in_file), out_file);
  std::cout << "wrote " << out_file << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direct sampling reconstruction toolkit for far-field data"};
  app.require_subcommand(1);

  RunConfig cfg;
  // The config file provides defaults; flags parsed afterwards override them.
  bool config_has_truth = false;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config")
      config_has_truth = load_config_file(argv[i + 1], cfg);
  std::string config_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file with defaults");
  };

  // synthesize
  auto* synth = app.add_subcommand("synthesize", "compute a clean far-field matrix");
  add_common(synth);
  std::string synth_out = "farfield.json";
  synth->add_option("--shape", cfg.shape, "disk|ball|pear|star|peanut");
  synth->add_option("--radius", cfg.radius, "radius for disk/ball");
  synth->add_option("--n", cfg.n, "refractive index");
  synth->add_option("--center", cfg.center, "scatterer center x,y[,z]");
  synth->add_option("--k", cfg.k, "wavenumber");
  synth->add_option("--M", cfg.M, "number of directions");
  synth->add_option("--quad-level", cfg.quad_level, "radial quadrature nodes");
  synth->add_flag("--analytic", cfg.analytic, "closed-form disk/ball far field");
  synth->add_option("--out", synth_out, "output far-field JSON");

  // corrupt
  auto* corrupt_cmd = app.add_subcommand("corrupt", "apply multiplicative noise");
  std::string corrupt_in, corrupt_out = "farfield_noisy.json";
  bool corrupt_force = false;
  corrupt_cmd->add_option("--in", corrupt_in, "clean far-field JSON")->required();
  corrupt_cmd->add_option("--delta", cfg.delta, "noise level");
  corrupt_cmd->add_option("--seed", cfg.seed, "noise seed");
  corrupt_cmd->add_option("--out", corrupt_out, "output far-field JSON");
  corrupt_cmd->add_flag("--force", corrupt_force, "corrupt even if already noisy");

  // reconstruct
  auto* recon = app.add_subcommand("reconstruct", "evaluate sampling indicators on a grid");
  add_common(recon);
  std::string recon_in;
  recon->add_option("--in", recon_in, "far-field JSON")->required();
  recon->add_option("--indicators", cfg.indicators, "comma list: dsm,fdsm,tdsm,fm");
  recon->add_option("--grid", cfg.grid, "x_lo,x_hi,y_lo,y_hi,nx,ny");
  recon->add_option("--alpha", cfg.alpha, "Tikhonov regularization parameter");
  recon->add_option("--p", cfg.p, "sharpening exponent (>= 1)");
  recon->add_option("--tau", cfg.tau, "level-set threshold in (0, 1)");
  recon->add_option("--fm-cutoff", cfg.fm_cutoff, "relative cutoff for the fm indicator");
  recon->add_option("--workers", cfg.workers, "grid worker threads (0 = all cores)");
  recon->add_option("--plane-axis", cfg.plane_axis, "3D: frozen coordinate axis (0..2)");
  recon->add_option("--plane-offset", cfg.plane_offset, "3D: frozen coordinate value");
  recon->add_option("--out", cfg.out, "output directory");
  auto* truth_shape =
      recon->add_option("--shape", cfg.shape, "true shape, enables the Hausdorff metric");
  recon->add_option("--radius", cfg.radius, "true radius for disk");
  recon->add_option("--center", cfg.center, "true center");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the theorem checks");
  std::string verify_seeds = "1";
  std::string verify_out = "verify_out";
  int verify_M = 64, verify_trials = 10000, verify_num_z = 1000;
  Real verify_alpha = 1e-2, mu_scale = 1.0;
  verify_cmd->add_option("--seeds", verify_seeds, "seed list 1,2,3 or range 1..5");
  verify_cmd->add_option("--M", verify_M, "synthetic operator size");
  verify_cmd->add_option("--trials", verify_trials, "coercivity trial vectors");
  verify_cmd->add_option("--num-z", verify_num_z, "sampling points per bound check");
  verify_cmd->add_option("--alpha", verify_alpha, "regularization parameter");
  verify_cmd->add_option("--mu-scale", mu_scale,
                         "scale the constructed mu (negative control)");
  verify_cmd->add_option("--out", verify_out, "report directory");

  // render
  auto* render_cmd = app.add_subcommand("render", "indicator CSV -> PGM");
  std::string render_in, render_out;
  render_cmd->add_option("--in", render_in, "indicator CSV")->required();
  render_cmd->add_option("--out", render_out, "output PGM")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synthesize(cfg, synth_out);
    if (corrupt_cmd->parsed())
      return cmd_corrupt(corrupt_in, cfg.delta, cfg.seed, corrupt_out, corrupt_force);
    if (recon->parsed()) {
      const bool have_truth = truth_shape->count() > 0 || config_has_truth;
      return cmd_reconstruct(cfg, recon_in, have_truth);
    }
    if (verify_cmd->parsed())
      return cmd_verify(verify_M, verify_trials, verify_num_z, verify_alpha, mu_scale,
                        verify_seeds, verify_out);
    if (render_cmd->parsed()) return cmd_render(render_in, render_out);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
