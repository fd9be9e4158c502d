#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "dwl/error.hpp"

namespace dwl {

/// Uniform periodic box [-L, L]^n, N points per axis (N a power of two).
/// Mode frequencies are xi_k = pi k / L with signed k in [-N/2, N/2).
/// Flat storage is C order, last axis fastest, matching FFTW.
class Grid {
 public:
  Grid(int dim, int points_per_axis, double half_length);

  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  double half_length() const { return L_; }
  std::size_t size() const { return size_; }

  double dx() const { return 2.0 * L_ / n_; }
  double dxi() const { return kPi / L_; }
  double cell_volume() const { return cell_volume_; }
  double box_volume() const { return box_volume_; }

  /// Signed mode number for an axis position m in [0, N).
  int signed_index(int m) const { return m < n_ / 2 ? m : m - n_; }
  double xi_axis(int m) const { return dxi() * signed_index(m); }
  double x_axis(int j) const { return -L_ + j * dx(); }

  /// |xi|^2 of a flat index (decodes the multi-index; fine for one-off
  /// sweeps, tables cache the result for hot loops).
  double xi_norm_sq(std::size_t flat) const;

  /// Physical coordinates of a flat index.
  std::array<double, 4> coords(std::size_t flat) const;

  /// |x|^2 of a flat index.
  double x_norm_sq(std::size_t flat) const;

  static constexpr double kPi = 3.141592653589793238462643383279502884;

 private:
  int dim_;
  int n_;
  double L_;
  std::size_t size_;
  double cell_volume_;
  double box_volume_;
};

}  // namespace dwl
