#include "dwl/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "dwl/error.hpp"

namespace dwl {

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<CsvRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << "\n";
  char buf[40];
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw SizeMismatch("csv row width != header width");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

std::string hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return fnv1a64_hex(bytes);
}

namespace {

void put_u32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(char((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& s, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) s.push_back(char((bits >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::string& s, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | std::uint8_t(s[at + i]);
  return v;
}

double get_f64(const std::string& s, std::size_t at) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | std::uint8_t(s[at + i]);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void dump_field(const std::filesystem::path& path, const Grid& grid, double t,
                const std::vector<double>& values) {
  if (values.size() != grid.size()) throw SizeMismatch("dump_field: size");
  std::string header = "DWLF";
  put_u32(header, std::uint32_t(grid.dim()));
  put_u32(header, std::uint32_t(grid.points_per_axis()));
  put_u32(header, 0);
  put_f64(header, t);
  put_f64(header, grid.half_length());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(header.data(), std::streamsize(header.size()));
  static_assert(sizeof(double) == 8);
  out.write(reinterpret_cast<const char*>(values.data()),
            std::streamsize(values.size() * 8));
}

LoadedField load_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (bytes.size() < 32 || bytes.compare(0, 4, "DWLF") != 0) {
    throw Error("not a DWLF field file: " + path.string());
  }
  LoadedField f;
  f.dim = int(get_u32(bytes, 4));
  f.points_per_axis = int(get_u32(bytes, 8));
  f.t = get_f64(bytes, 16);
  f.half_length = get_f64(bytes, 24);
  const std::size_t count = (bytes.size() - 32) / 8;
  f.values.resize(count);
  std::memcpy(f.values.data(), bytes.data() + 32, count * 8);
  return f;
}

void write_summary(const std::filesystem::path& out_dir, nlohmann::json summary,
                   const std::vector<std::filesystem::path>& artifacts) {
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& p : artifacts) {
    manifest.push_back({{"file", p.filename().string()},
                        {"bytes", std::filesystem::file_size(p)},
                        {"fnv1a64", hash_file(p)}});
  }
  summary["manifest"] = manifest;
  std::ofstream out(out_dir / "summary.json");
  if (!out) throw Error("cannot write summary.json");
  out << summary.dump(2) << "\n";
}

}  // namespace dwl
