// End-to-end pipeline checks that drive the installed CLI binary (path in
// the DSM_CLI environment variable).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsm/indicators.hpp"
#include "dsm/io.hpp"
#include "dsm/spectral.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace dsm;
using nlohmann::json;

namespace {

std::string cli() {
  const char* path = std::getenv("DSM_CLI");
  REQUIRE_MESSAGE(path != nullptr, "DSM_CLI must point at the dsm binary");
  return path;
}

int run(const std::string& args) {
  const std::string command = cli() + " " + args + " >/dev/null 2>&1";
  return std::system(command.c_str());
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dsm_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("synthesize quadrature agrees with the analytic flag") {
  TempDir tmp;
  REQUIRE(run("synthesize --shape disk --radius 0.4 --n 0.5 --k 10 --M 16 --out " +
              (tmp / "quad.json")) == 0);
  REQUIRE(run("synthesize --shape disk --radius 0.4 --n 0.5 --k 10 --M 16 --analytic --out " +
              (tmp / "closed.json")) == 0);
  const FarFieldMatrix quad = io::read_farfield(tmp / "quad.json");
  const FarFieldMatrix closed = io::read_farfield(tmp / "closed.json");
  Real worst = 0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      worst = std::max(worst, std::abs(quad.entries(i, j) - closed.entries(i, j)) /
                                  std::abs(closed.entries(i, j)));
  CHECK(worst < 1e-6);
  CHECK(quad.provenance.kind == Provenance::Kind::clean);
}

TEST_CASE("zero contrast synthesizes a zero matrix") {
  TempDir tmp;
  REQUIRE(run("synthesize --shape disk --radius 0.4 --n 1.0 --k 10 --M 8 --out " +
              (tmp / "zero.json")) == 0);
  const FarFieldMatrix f = io::read_farfield(tmp / "zero.json");
  CHECK(f.entries.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("corrupt is reproducible and refuses noisy input") {
  TempDir tmp;
  REQUIRE(run("synthesize --shape pear --k 10 --n 0.5 --M 16 --out " + (tmp / "clean.json")) == 0);
  REQUIRE(run("corrupt --in " + (tmp / "clean.json") + " --delta 0.05 --seed 1 --out " +
              (tmp / "noisy_a.json")) == 0);
  REQUIRE(run("corrupt --in " + (tmp / "clean.json") + " --delta 0.05 --seed 1 --out " +
              (tmp / "noisy_b.json")) == 0);
  CHECK(slurp(tmp / "noisy_a.json") == slurp(tmp / "noisy_b.json"));

  // already-noisy input is refused without --force
  CHECK(run("corrupt --in " + (tmp / "noisy_a.json") + " --delta 0.01 --seed 2 --out " +
            (tmp / "twice.json")) != 0);
  CHECK(run("corrupt --in " + (tmp / "noisy_a.json") + " --delta 0.01 --seed 2 --force --out " +
            (tmp / "twice.json")) == 0);

  // delta 0 leaves the matrix untouched but restamps provenance
  REQUIRE(run("corrupt --in " + (tmp / "clean.json") + " --delta 0 --seed 9 --out " +
              (tmp / "still_clean.json")) == 0);
  const FarFieldMatrix clean = io::read_farfield(tmp / "clean.json");
  const FarFieldMatrix stamped = io::read_farfield(tmp / "still_clean.json");
  CHECK((clean.entries - stamped.entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK(stamped.provenance.kind == Provenance::Kind::noisy);
  CHECK(stamped.provenance.seed == 9);
}

TEST_CASE("reconstruct smoke grid matches library calls and reports all fields") {
  TempDir tmp;
  REQUIRE(run("synthesize --shape peanut --k 10 --n 0.5 --M 32 --out " + (tmp / "f.json")) == 0);
  REQUIRE(run("corrupt --in " + (tmp / "f.json") + " --delta 0.05 --seed 1 --out " +
              (tmp / "fd.json")) == 0);
  REQUIRE(run("reconstruct --in " + (tmp / "fd.json") +
              " --indicators dsm,fdsm,tdsm,fm --grid -1,1,-1,1,4,4 --workers 2 --shape peanut "
              "--out " + (tmp / "out")) == 0);

  const FarFieldMatrix noisy = io::read_farfield(tmp / "fd.json");
  const SpectralDecomposition decomp = svd(noisy.entries);
  const IndicatorGrid dsm_grid = io::read_indicator_csv(tmp / "out/dsm.csv");
  REQUIRE(dsm_grid.grid.nx == 4);
  REQUIRE(dsm_grid.state == GridState::normalized);

  // normalized CSV values match direct evaluation at the grid nodes
  GridMatrix raw(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const CVector phi = phi_vector(dsm_grid.grid.point(a, b, 2), noisy.ctx, noisy.dirs);
      raw(a, b) = w_dsm(noisy.entries, phi);
    }
  raw /= raw.maxCoeff();
  CHECK((raw - dsm_grid.values).cwiseAbs().maxCoeff() < 1e-12);

  json report = json::parse(slurp(tmp / "out/report.json"));
  CHECK(report.contains("s1"));
  CHECK(report.contains("c_alpha"));
  CHECK(report["filter"].contains("eps"));
  CHECK(report["filter"]["c"].size() == 3);
  REQUIRE(report["indicators"].size() == 4);
  for (const auto& entry : report["indicators"]) {
    CHECK(entry.contains("seconds"));
    CHECK(entry.contains("argmax"));
    CHECK(entry.contains("hausdorff"));
  }
}

TEST_CASE("reconstruction outputs are byte-identical across runs and worker counts") {
  TempDir tmp;
  REQUIRE(run("synthesize --shape star --k 10 --n 0.5 --M 16 --out " + (tmp / "f.json")) == 0);
  REQUIRE(run("corrupt --in " + (tmp / "f.json") + " --delta 0.05 --seed 4 --out " +
              (tmp / "fd.json")) == 0);
  REQUIRE(run("reconstruct --in " + (tmp / "fd.json") +
              " --indicators dsm,tdsm --grid -1,1,-1,1,20,20 --workers 1 --out " +
              (tmp / "run1")) == 0);
  REQUIRE(run("reconstruct --in " + (tmp / "fd.json") +
              " --indicators dsm,tdsm --grid -1,1,-1,1,20,20 --workers 2 --out " +
              (tmp / "run2")) == 0);
  CHECK(slurp(tmp / "run1/dsm.csv") == slurp(tmp / "run2/dsm.csv"));
  CHECK(slurp(tmp / "run1/tdsm.csv") == slurp(tmp / "run2/tdsm.csv"));
  CHECK(slurp(tmp / "run1/dsm.pgm") == slurp(tmp / "run2/dsm.pgm"));
}

TEST_CASE("unknown indicator names fail with a nonzero exit") {
  TempDir tmp;
  REQUIRE(run("synthesize --shape disk --radius 0.4 --M 8 --out " + (tmp / "f.json")) == 0);
  CHECK(run("reconstruct --in " + (tmp / "f.json") + " --indicators bogus --out " +
            (tmp / "out")) != 0);
}

TEST_CASE("verify suite passes and the forced-mu negative control fails") {
  TempDir tmp;
  CHECK(run("verify --M 32 --trials 500 --num-z 200 --seeds 1..3 --out " + (tmp / "v")) == 0);
  CHECK(fs::exists(tmp.path / "v/verify_seed1.json"));
  CHECK(fs::exists(tmp.path / "v/verify_seed2.json"));
  CHECK(fs::exists(tmp.path / "v/verify_seed3.json"));
  json report = json::parse(slurp(tmp / "v/verify_seed1.json"));
  CHECK(report["violations"] == 0);
  REQUIRE(report["checks"].size() == 4);
  for (const auto& check : report["checks"]) {
    CHECK(check.contains("name"));
    CHECK(check.contains("trials"));
    CHECK(check.contains("violations"));
    CHECK(check.contains("worst_margin"));
    CHECK(check.contains("seeds"));
  }

  // overstating mu by 10x must produce violations and a nonzero exit
  CHECK(run("verify --M 32 --trials 500 --num-z 200 --seeds 1 --mu-scale 10 --out " +
            (tmp / "bad")) != 0);
}

TEST_CASE("config file supplies defaults and flags override them") {
  TempDir tmp;
  {
    std::ofstream cfg(tmp / "run.json");
    cfg << R"({
      "experiment": "cfg-run",
      "scatterer": {"shape": "star", "n": 0.5, "center": [0, 0]},
      "k": 10.0, "M": 16,
      "grid": {"bounds": [-1, 1, -1, 1], "nx": 12, "ny": 12},
      "indicators": ["dsm", "fdsm"],
      "out": ")" << (tmp / "out") << R"("
    })";
  }
  REQUIRE(run("synthesize --config " + (tmp / "run.json") + " --out " + (tmp / "f.json")) == 0);
  const FarFieldMatrix f = io::read_farfield(tmp / "f.json");
  CHECK(f.dirs.count() == 16);

  REQUIRE(run("reconstruct --in " + (tmp / "f.json") + " --config " + (tmp / "run.json")) == 0);
  json report = json::parse(slurp(tmp / "out/report.json"));
  CHECK(report["experiment"] == "cfg-run");
  REQUIRE(report["indicators"].size() == 2);
  CHECK(report["indicators"][0].contains("hausdorff"));  // truth from the config
  const IndicatorGrid grid = io::read_indicator_csv(tmp / "out/dsm.csv");
  CHECK(grid.grid.nx == 12);

  // a flag on top of the config wins
  REQUIRE(run("reconstruct --in " + (tmp / "f.json") + " --config " + (tmp / "run.json") +
              " --indicators dsm --out " + (tmp / "out2")) == 0);
  json report2 = json::parse(slurp(tmp / "out2/report.json"));
  CHECK(report2["indicators"].size() == 1);
}

TEST_CASE("render converts CSV to PGM") {
  TempDir tmp;
  REQUIRE(run("synthesize --shape disk --radius 0.4 --M 8 --out " + (tmp / "f.json")) == 0);
  REQUIRE(run("reconstruct --in " + (tmp / "f.json") + " --indicators dsm "
              "--grid -1,1,-1,1,8,8 --out " + (tmp / "out")) == 0);
  REQUIRE(run("render --in " + (tmp / "out/dsm.csv") + " --out " + (tmp / "re.pgm")) == 0);
  const std::string pgm = slurp(tmp / "re.pgm");
  CHECK(pgm.rfind("P2\n8 8\n255\n", 0) == 0);
  CHECK(pgm == slurp(tmp / "out/dsm.pgm"));
}

TEST_CASE("sharpening flag is recorded in the CSV state header") {
  TempDir tmp;
  REQUIRE(run("synthesize --shape peanut --k 10 --n 0.5 --M 16 --out " + (tmp / "f.json")) == 0);
  REQUIRE(run("reconstruct --in " + (tmp / "f.json") +
              " --indicators fdsm --grid -1,1,-1,1,10,10 --p 2 --out " + (tmp / "out")) == 0);
  const std::string csv = slurp(tmp / "out/fdsm.csv");
  CHECK(csv.find("# state=normalized-sharpened(2)") != std::string::npos);

  const IndicatorGrid grid = io::read_indicator_csv(tmp / "out/fdsm.csv");
  CHECK(grid.state == GridState::sharpened);
  CHECK(grid.p == 2.0);
  CHECK(grid.values.maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("indicator CSV round-trips the grid exactly") {
  TempDir tmp;
  IndicatorGrid grid;
  grid.kind = IndicatorKind::tdsm;
  grid.grid.x_lo = -1.5;
  grid.grid.x_hi = 0.25;
  grid.grid.y_lo = 0.1;
  grid.grid.y_hi = 2.0;
  grid.grid.nx = 5;
  grid.grid.ny = 3;
  grid.values.resize(5, 3);
  std::mt19937_64 rng(3);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 3; ++b)
      grid.values(a, b) = (static_cast<Real>(rng() >> 11) + 0.5) * 0x1p-53;
  grid.state = GridState::raw;

  io::write_indicator_csv(grid, tmp / "grid.csv");
  const IndicatorGrid back = io::read_indicator_csv(tmp / "grid.csv");
  CHECK(back.kind == IndicatorKind::tdsm);
  CHECK(back.grid.nx == 5);
  CHECK(back.grid.ny == 3);
  CHECK(back.grid.x_lo == grid.grid.x_lo);
  CHECK(back.grid.y_hi == grid.grid.y_hi);
  CHECK(back.state == GridState::raw);
  CHECK((back.values - grid.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("far-field files round-trip exactly") {
  TempDir tmp;
  REQUIRE(run("synthesize --shape pear --k 10 --n 0.5 --M 12 --out " + (tmp / "f.json")) == 0);
  const FarFieldMatrix f = io::read_farfield(tmp / "f.json");
  io::write_farfield(f, tmp / "copy.json");
  const FarFieldMatrix g = io::read_farfield(tmp / "copy.json");
  CHECK((f.entries - g.entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK((f.dirs.directions - g.dirs.directions).cwiseAbs().maxCoeff() == 0.0);
  CHECK(f.ctx.k == g.ctx.k);
}

TEST_SUITE_END();
