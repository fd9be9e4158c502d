#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dwl/grid.hpp"

#include "json.hpp"

namespace dwl {

/// One CSV row; cells are printed with 17 significant digits.
using CsvRow = std::vector<double>;

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<CsvRow>& rows);

/// FNV-1a 64-bit over raw bytes, hex-encoded.
std::string fnv1a64_hex(const std::string& bytes);
std::string hash_file(const std::filesystem::path& path);

/// Field snapshot: 32-byte little-endian header
/// [0:4) magic "DWLF", [4:8) u32 n, [8:12) u32 N, [12:16) u32 zero,
/// [16:24) f64 t, [24:32) f64 L, then N^n f64 values in C order.
void dump_field(const std::filesystem::path& path, const Grid& grid, double t,
                const std::vector<double>& values);

struct LoadedField {
  int dim = 0;
  int points_per_axis = 0;
  double t = 0.0;
  double half_length = 0.0;
  std::vector<double> values;
};
LoadedField load_field(const std::filesystem::path& path);

/// summary.json writer: attaches a manifest (name, bytes, fnv1a64) of the
/// listed artifact files, then writes the summary itself.
void write_summary(const std::filesystem::path& out_dir, nlohmann::json summary,
                   const std::vector<std::filesystem::path>& artifacts);

}  // namespace dwl
