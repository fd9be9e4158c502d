#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dwl/grid.hpp"
#include "dwl/modulus.hpp"
#include "dwl/solver.hpp"

namespace dwl {

enum class ExperimentKind {
  DiniCheck,
  Simulate,
  DecaySweep,
  ProfileCheck,
  LifespanSweep,
  PicardDemo,
};

ExperimentKind experiment_from_name(const std::string& name);
std::string experiment_name(ExperimentKind kind);

/// Flat `key = value` store with dotted section names. '#' starts a
/// comment; values may be numbers, booleans, quoted or bare strings, or
/// comma-separated real lists.
class KeyValues {
 public:
  static KeyValues parse_text(const std::string& text);
  static KeyValues parse_file(const std::filesystem::path& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_real(const std::string& key) const;
  double get_real(const std::string& key, double dflt) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;
  std::vector<double> get_list(const std::string& key) const;

  /// Keys present in the file but never read by the validator.
  std::vector<std::string> unused() const;

 private:
  std::map<std::string, std::string> kv_;
  mutable std::set<std::string> used_;
};

/// Fully validated experiment description; every numeric field is
/// range-checked against the module preconditions before any computation.
struct ExperimentConfig {
  int dim = 1;
  int points_per_axis = 1024;
  double half_length = 64.0;

  SolverConfig solver;
  ModulusSpec mu = ModulusSpec::power(1.0);

  std::vector<double> eps_list;       // lifespan-sweep
  double fit_window_lo = -1.0;        // decay fit window; <0 = last decade
  double fit_window_hi = -1.0;
  int picard_iterations = 4;
  std::vector<double> functional_radii{4.0, 8.0, 16.0, 32.0};
  bool dump_fields = false;

  Grid make_grid() const { return Grid(dim, points_per_axis, half_length); }
};

ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace dwl
