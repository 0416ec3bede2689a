#pragma once

#include "dsm/indicators.hpp"
#include "dsm/types.hpp"
#include "dsm/verify.hpp"

#include <filesystem>
#include <vector>

namespace dsm::io {

/// Far-field JSON: {"dimension", "k", "M", "directions", "re", "im",
/// "provenance": {"kind", "delta", "seed"}}, row = observation index.
void write_farfield(const FarFieldMatrix& farfield, const std::filesystem::path& path);
FarFieldMatrix read_farfield(const std::filesystem::path& path);

/// Indicator CSV: four "#" header lines (kind, bounds, nx/ny, state), then
/// ny rows of nx comma-separated values (row b sweeps a = 0..nx-1).
void write_indicator_csv(const IndicatorGrid& grid, const std::filesystem::path& path);
IndicatorGrid read_indicator_csv(const std::filesystem::path& path);

/// 8-bit PGM (P2) render, 255 = grid maximum, top row = highest y.
void write_pgm(const IndicatorGrid& grid, const std::filesystem::path& path);

/// Verification report JSON: per-check {name, trials, violations,
/// worst_margin, seeds, detail}.
void write_check_reports(const std::vector<CheckReport>& checks,
                         const std::filesystem::path& path);

}  // namespace dsm::io
