#include "dwl/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace dwl {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Walks flat C-order indices tracking the parity of the digit sum. Each
// digit increment (including rollover carries) flips parity once.
template <typename F>
void for_each_parity(int dim, int n, std::size_t total, F&& fn) {
  int digits[4] = {0, 0, 0, 0};
  int parity = 0;
  for (std::size_t f = 0; f < total; ++f) {
    fn(f, parity);
    for (int a = dim - 1; a >= 0; --a) {
      parity ^= 1;
      if (++digits[a] < n) break;
      digits[a] = 0;
    }
  }
}

}  // namespace

SpectralTransform::SpectralTransform(const Grid& grid)
    : grid_(&grid), buf_(grid.size()) {
  int dims[4];
  for (int a = 0; a < grid.dim(); ++a) dims[a] = grid.points_per_axis();
  auto* raw = reinterpret_cast<fftw_complex*>(buf_.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft(grid.dim(), dims, raw, raw, FFTW_FORWARD,
                            FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft(grid.dim(), dims, raw, raw, FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw Error("fftw plan creation failed");
}

SpectralTransform::~SpectralTransform() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void SpectralTransform::forward_into(const std::vector<double>& u,
                                     std::vector<Complex>& u_hat) const {
  const std::size_t n = grid_->size();
  if (u.size() != n) throw SizeMismatch("forward: field size != grid size");
  u_hat.resize(n);
  for (std::size_t i = 0; i < n; ++i) buf_[i] = Complex(u[i], 0.0);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  // The box starts at -L, which shows up as a (-1)^{k1+...+kn} phase on
  // the coefficients; the scale dx^n matches the continuous transform.
  const double scale = grid_->cell_volume();
  for_each_parity(grid_->dim(), grid_->points_per_axis(), n,
                  [&](std::size_t f, int parity) {
                    u_hat[f] = (parity ? -scale : scale) * buf_[f];
                  });
}

void SpectralTransform::inverse_into(const std::vector<Complex>& u_hat,
                                     std::vector<double>& u) const {
  const std::size_t n = grid_->size();
  if (u_hat.size() != n) throw SizeMismatch("inverse: field size != grid size");
  u.resize(n);
  const double scale = 1.0 / grid_->box_volume();
  for_each_parity(grid_->dim(), grid_->points_per_axis(), n,
                  [&](std::size_t f, int parity) {
                    buf_[f] = (parity ? -scale : scale) * u_hat[f];
                  });
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  for (std::size_t i = 0; i < n; ++i) u[i] = buf_[i].real();
}

std::vector<Complex> SpectralTransform::forward(
    const std::vector<double>& u) const {
  std::vector<Complex> out;
  forward_into(u, out);
  return out;
}

std::vector<double> SpectralTransform::inverse(
    const std::vector<Complex>& u_hat) const {
  std::vector<double> out;
  inverse_into(u_hat, out);
  return out;
}

}  // namespace dwl
