#include "dwl/grid.hpp"

#include <cmath>

namespace dwl {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim, int points_per_axis, double half_length)
    : dim_(dim), n_(points_per_axis), L_(half_length) {
  if (dim < 1 || dim > 4) throw InvalidArg("grid: dimension must be 1..4");
  if (!power_of_two(n_) || n_ < 2) {
    throw InvalidArg("grid: points per axis must be a power of two >= 2");
  }
  if (!(L_ > 0.0)) throw InvalidArg("grid: half length must be positive");
  // Delta xi <= 0.1 keeps >= 5 modes per axis inside |xi| <= 1/2, where the
  // kernel symbol switches branch.
  if (dxi() > 0.1 + 1e-12) {
    throw InvalidArg("grid: frequency spacing pi/L exceeds 0.1; enlarge L");
  }
  double sz = 1.0;
  for (int a = 0; a < dim_; ++a) sz *= n_;
  if (sz > double(1 << 24)) {
    throw InvalidArg("grid: total modes N^n exceed 2^24");
  }
  size_ = std::size_t(sz);
  cell_volume_ = std::pow(dx(), dim_);
  box_volume_ = std::pow(2.0 * L_, dim_);
}

double Grid::xi_norm_sq(std::size_t flat) const {
  double s = 0.0;
  for (int a = dim_ - 1; a >= 0; --a) {
    const int m = int(flat % n_);
    flat /= n_;
    const double x = xi_axis(m);
    s += x * x;
  }
  return s;
}

std::array<double, 4> Grid::coords(std::size_t flat) const {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
  for (int a = dim_ - 1; a >= 0; --a) {
    c[a] = x_axis(int(flat % n_));
    flat /= n_;
  }
  return c;
}

double Grid::x_norm_sq(std::size_t flat) const {
  double s = 0.0;
  for (int a = dim_ - 1; a >= 0; --a) {
    const double x = x_axis(int(flat % n_));
    flat /= n_;
    s += x * x;
  }
  return s;
}

}  // namespace dwl
