#include "dwl/symbols.hpp"

#include <cmath>

namespace dwl {

namespace {

// K and dK/dt by the even Taylor series in x = t^2 (1/4 - |xi|^2):
//   K  = e^{-t/2} t   sum_k x^k / (2k+1)!
//   K' = e^{-t/2} [ sum_k x^k / (2k)!  -  (t/2) sum_k x^k / (2k+1)! ]
// Inside the seam strip |x| <= t^2 * 1e-4, convergence is fast for any t
// of practical size; terms are summed until they stop contributing.
void seam_series(double t, double omega_sq, double* k_out, double* kt_out) {
  const double x = t * t * omega_sq;
  double term_odd = 1.0;   // x^k / (2k+1)!
  double term_even = 1.0;  // x^k / (2k)!
  double sum_odd = 1.0;
  double sum_even = 1.0;
  for (int k = 1; k <= 60; ++k) {
    const double d = 2.0 * k;
    term_even *= x / (d * (d - 1.0));
    term_odd *= x / (d * (d + 1.0));
    sum_even += term_even;
    sum_odd += term_odd;
    if (std::abs(term_odd) < 1e-18 * std::abs(sum_odd) &&
        std::abs(term_even) < 1e-18 * std::abs(sum_even)) {
      break;
    }
  }
  const double damp = std::exp(-0.5 * t);
  if (k_out) *k_out = damp * t * sum_odd;
  if (kt_out) *kt_out = damp * (sum_even - 0.5 * t * sum_odd);
}

}  // namespace

double kernel_symbol(double t, double xi_norm) {
  const double r = xi_norm;
  if (std::abs(r - 0.5) <= kSeamHalfWidth) {
    double k;
    seam_series(t, 0.25 - r * r, &k, nullptr);
    return k;
  }
  if (r < 0.5) {
    const double w = std::sqrt(0.25 - r * r);
    // e^{-t/2} sinh(t w)/w, written with expm1 so the slow mode never
    // cancels; for large t w the fast mode is below rounding anyway.
    const double a = 2.0 * t * w;
    if (a > 36.0) return std::exp(-t * (0.5 - w)) / (2.0 * w);
    return std::exp(-t * (0.5 + w)) * std::expm1(a) / (2.0 * w);
  }
  const double w = std::sqrt(r * r - 0.25);
  return std::exp(-0.5 * t) * std::sin(t * w) / w;
}

double kernel_dt_symbol(double t, double xi_norm) {
  const double r = xi_norm;
  if (std::abs(r - 0.5) <= kSeamHalfWidth) {
    double kt;
    seam_series(t, 0.25 - r * r, nullptr, &kt);
    return kt;
  }
  if (r < 0.5) {
    const double w = std::sqrt(0.25 - r * r);
    // e^{-t/2} [cosh(t w) - sinh(t w)/(2 w)], split into the two modes.
    const double slow = std::exp(-t * (0.5 - w));
    const double fast = std::exp(-t * (0.5 + w));
    return slow * (2.0 * w - 1.0) / (4.0 * w) +
           fast * (2.0 * w + 1.0) / (4.0 * w);
  }
  const double w = std::sqrt(r * r - 0.25);
  return std::exp(-0.5 * t) * (std::cos(t * w) - 0.5 * std::sin(t * w) / w);
}

double gauss_symbol(double t, double xi_norm) {
  return std::exp(-xi_norm * xi_norm * t);
}

}  // namespace dwl
