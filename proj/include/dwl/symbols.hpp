#pragma once

namespace dwl {

/// Fourier symbol K(t, |xi|) of the damped-wave kernel: the solution of
/// B'' + B' + |xi|^2 B = 0 with B(0) = 0, B'(0) = 1. Three branches:
/// hyperbolic for |xi| < 1/2, trigonometric for |xi| > 1/2, and the even
/// Taylor series in omega^2 = 1/4 - |xi|^2 inside a strip of half-width
/// delta_s = 1e-4 around the seam (summed to machine precision, so the
/// strip value is exact for every t, not just small ones).
double kernel_symbol(double t, double xi_norm);

/// d/dt of kernel_symbol; same branch structure. Equals B'(t) of the mode
/// ODE, so kernel_dt_symbol(0, xi) = 1.
double kernel_dt_symbol(double t, double xi_norm);

/// Heat/Gauss kernel symbol e^{-|xi|^2 t}.
double gauss_symbol(double t, double xi_norm);

/// Half-width of the seam strip around |xi| = 1/2.
inline constexpr double kSeamHalfWidth = 1e-4;

}  // namespace dwl
