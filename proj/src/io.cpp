#include "dsm/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dsm::io {

using nlohmann::json;

namespace {

std::string format_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json matrix_to_rows(const Eigen::Ref<const RMatrix>& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix rows_to_matrix(const json& rows, const char* field) {
  if (!rows.is_array() || rows.empty())
    throw std::runtime_error(std::string("far-field file: bad field ") + field);
  const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index nc = static_cast<Eigen::Index>(rows.at(0).size());
  RMatrix m(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i) {
    const json& row = rows.at(i);
    if (static_cast<Eigen::Index>(row.size()) != nc)
      throw std::runtime_error(std::string("far-field file: ragged field ") + field);
    for (Eigen::Index j = 0; j < nc; ++j) m(i, j) = row.at(j).get<Real>();
  }
  return m;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void write_farfield(const FarFieldMatrix& farfield, const std::filesystem::path& path) {
  json doc;
  doc["dimension"] = farfield.ctx.dimension;
  doc["k"] = farfield.ctx.k;
  doc["M"] = farfield.dirs.count();
  doc["directions"] = matrix_to_rows(farfield.dirs.directions);
  doc["re"] = matrix_to_rows(farfield.entries.real());
  doc["im"] = matrix_to_rows(farfield.entries.imag());
  doc["provenance"] = {
      {"kind", farfield.provenance.kind == Provenance::Kind::clean ? "clean" : "noisy"},
      {"delta", farfield.provenance.delta},
      {"seed", farfield.provenance.seed},
  };
  write_text(path, doc.dump(1) + "\n");
}

FarFieldMatrix read_farfield(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open far-field file: " + path.string());
  json doc = json::parse(in);

  const int dimension = doc.at("dimension").get<int>();
  const Real k = doc.at("k").get<Real>();
  const int M = doc.at("M").get<int>();

  FarFieldMatrix out{make_wave_context(dimension, k), DirectionSet{}, CMatrix(), Provenance{}};
  out.dirs.dimension = dimension;
  out.dirs.directions = rows_to_matrix(doc.at("directions"), "directions");
  if (out.dirs.count() != M || out.dirs.directions.cols() != dimension)
    throw std::runtime_error("far-field file: direction shape mismatch");
  for (int j = 0; j < M; ++j)
    if (std::abs(out.dirs.directions.row(j).norm() - 1.0) > 1e-12)
      throw std::runtime_error("far-field file: direction rows must be unit vectors");

  const RMatrix re = rows_to_matrix(doc.at("re"), "re");
  const RMatrix im = rows_to_matrix(doc.at("im"), "im");
  if (re.rows() != M || re.cols() != M || im.rows() != M || im.cols() != M)
    throw std::runtime_error("far-field file: entries must be M x M");
  out.entries = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();

  const json& prov = doc.at("provenance");
  const std::string kind = prov.at("kind").get<std::string>();
  if (kind == "clean") {
    out.provenance.kind = Provenance::Kind::clean;
  } else if (kind == "noisy") {
    out.provenance.kind = Provenance::Kind::noisy;
  } else {
    throw std::runtime_error("far-field file: unknown provenance kind " + kind);
  }
  out.provenance.delta = prov.value("delta", 0.0);
  out.provenance.seed = prov.value("seed", std::uint64_t{0});
  return out;
}

void write_indicator_csv(const IndicatorGrid& grid, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "# kind=" << indicator_name(grid.kind) << "\n";
  out << "# bounds=" << format_real(grid.grid.x_lo) << "," << format_real(grid.grid.x_hi)
      << "," << format_real(grid.grid.y_lo) << "," << format_real(grid.grid.y_hi) << "\n";
  out << "# nx=" << grid.grid.nx << " ny=" << grid.grid.ny << "\n";
  out << "# state=" << grid.state_label() << "\n";
  for (int b = 0; b < grid.grid.ny; ++b) {
    for (int a = 0; a < grid.grid.nx; ++a) {
      if (a) out << ",";
      out << format_real(grid.values(a, b));
    }
    out << "\n";
  }
  write_text(path, out.str());
}

IndicatorGrid read_indicator_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open indicator CSV: " + path.string());
  IndicatorGrid grid;
  std::string line;

  auto expect_header = [&](const std::string& prefix) {
    if (!std::getline(in, line) || line.rfind(prefix, 0) != 0)
      throw std::runtime_error("indicator CSV: missing header " + prefix);
    return line.substr(prefix.size());
  };

  grid.kind = indicator_from_name(expect_header("# kind="));
  {
    std::istringstream bounds(expect_header("# bounds="));
    char comma;
    bounds >> grid.grid.x_lo >> comma >> grid.grid.x_hi >> comma >> grid.grid.y_lo >>
        comma >> grid.grid.y_hi;
    if (!bounds) throw std::runtime_error("indicator CSV: bad bounds header");
  }
  {
    std::istringstream size(expect_header("# nx="));
    std::string ny_token;
    size >> grid.grid.nx >> ny_token;
    if (!size || ny_token.rfind("ny=", 0) != 0)
      throw std::runtime_error("indicator CSV: bad size header");
    grid.grid.ny = std::stoi(ny_token.substr(3));
  }
  {
    const std::string state = expect_header("# state=");
    if (state == "raw") {
      grid.state = GridState::raw;
    } else if (state == "normalized") {
      grid.state = GridState::normalized;
    } else if (state.rfind("normalized-sharpened(", 0) == 0 && state.back() == ')') {
      grid.state = GridState::sharpened;
      grid.p = std::stod(state.substr(21, state.size() - 22));
    } else {
      throw std::runtime_error("indicator CSV: unknown state " + state);
    }
  }

  grid.values.resize(grid.grid.nx, grid.grid.ny);
  for (int b = 0; b < grid.grid.ny; ++b) {
    if (!std::getline(in, line))
      throw std::runtime_error("indicator CSV: truncated value rows");
    std::istringstream row(line);
    std::string cell;
    for (int a = 0; a < grid.grid.nx; ++a) {
      if (!std::getline(row, cell, ','))
        throw std::runtime_error("indicator CSV: short row");
      grid.values(a, b) = std::stod(cell);
    }
  }
  return grid;
}

void write_pgm(const IndicatorGrid& grid, const std::filesystem::path& path) {
  const Real max = grid.values.maxCoeff();
  std::ostringstream out;
  out << "P2\n" << grid.grid.nx << " " << grid.grid.ny << "\n255\n";
  for (int b = grid.grid.ny - 1; b >= 0; --b) {  // top row = highest y
    for (int a = 0; a < grid.grid.nx; ++a) {
      const int level =
          max > 0 ? static_cast<int>(std::lround(255.0 * grid.values(a, b) / max)) : 0;
      out << level << (a + 1 < grid.grid.nx ? " " : "");
    }
    out << "\n";
  }
  write_text(path, out.str());
}

void write_check_reports(const std::vector<CheckReport>& checks,
                         const std::filesystem::path& path) {
  json doc;
  doc["checks"] = json::array();
  int total = 0;
  for (const auto& check : checks) {
    json entry = {
        {"name", check.name},
        {"trials", check.trials},
        {"violations", check.violations},
        {"worst_margin", check.worst_margin},
        {"seeds", check.seeds},
    };
    if (!check.detail.empty()) entry["detail"] = check.detail;
    doc["checks"].push_back(std::move(entry));
    total += check.violations;
  }
  doc["violations"] = total;
  write_text(path, doc.dump(1) + "\n");
}

}  // namespace dsm::io
