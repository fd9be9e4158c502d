#pragma once

#include <vector>

#include "dwl/fft.hpp"
#include "dwl/grid.hpp"
#include "dwl/modulus.hpp"
#include "dwl/symbols.hpp"

namespace dwl {

/// Spectral pair (u_hat, ut_hat) at time t.
struct State {
  double t = 0.0;
  std::vector<Complex> u_hat;
  std::vector<Complex> ut_hat;
};

/// Per-mode data of the exact one-step propagator over a fixed dt,
///
///   (u, u_t)(t + dt) = [ K + K_t   K   ] (dt) (u, u_t)(t)
///                      [ -|xi|^2 K K_t ]
///
/// plus the Duhamel column integrals against constant and linear-in-tau
/// forcing (8-point Gauss-Legendre):
///   w0_u  = int_0^dt K(s) ds          w0_ut  = int_0^dt K_t(s) ds
///   w1_u  = int_0^dt K(s)(1 - s/dt) ds  (same for w1_ut)
struct PropagatorTable {
  double dt = 0.0;
  std::vector<double> a11, a12, a21, a22;
  std::vector<double> w0_u, w0_ut, w1_u, w1_ut;

  static PropagatorTable build(const Grid& grid, double dt);
};

/// Exact solution of the linear damped wave equation over dt, per mode.
State linear_propagate(const Grid& grid, const State& s, double dt);

/// M * F^{-1}(e^{-|xi|^2 t}) realized on the grid (t > 0).
std::vector<double> gauss_field(const Grid& grid,
                                const SpectralTransform& fft, double t,
                                double mass);

/// Spectral array of the Gauss profile, M e^{-|xi|^2 t}.
std::vector<Complex> gauss_spectrum(const Grid& grid, double t, double mass);

/// Pointwise N(u) = |u|^{1+2/n} mu(|u|). With dealias set, the result's
/// spectrum is truncated by the 2/3 rule (costs one transform round trip).
std::vector<double> apply_nonlinearity(const Grid& grid,
                                       const SpectralTransform& fft,
                                       const std::vector<double>& u,
                                       const ModulusSpec& spec, bool dealias);

/// In-place pointwise N(u); no dealiasing.
void nonlinearity_into(const Grid& grid, const std::vector<double>& u,
                       const ModulusSpec& spec, std::vector<double>& out);

/// Zeroes every mode with any axis wavenumber above N/3 (2/3 rule).
void dealias_truncate(const Grid& grid, std::vector<Complex>& u_hat);

}  // namespace dwl
