#pragma once

#include <limits>
#include <vector>

#include "dwl/fft.hpp"
#include "dwl/grid.hpp"
#include "dwl/spectral_ops.hpp"

namespace dwl {

/// alpha = min{2, 1 + 2/n}, the low Lebesgue index of the decay estimates.
inline double alpha_index(int dim) {
  const double a = 1.0 + 2.0 / dim;
  return a < 2.0 ? a : 2.0;
}

/// L^q norm by trapezoid quadrature on the uniform periodic grid
/// (which reduces to the rectangle rule); q = infinity gives the max.
double lq_norm(const Grid& grid, const std::vector<double>& f, double q);

/// Homogeneous H^2 seminorm via Plancherel with |xi|^4 weight.
double h2dot_norm(const Grid& grid, const std::vector<Complex>& u_hat);

/// L^2 norm straight from the spectrum.
double l2_norm_spectral(const Grid& grid, const std::vector<Complex>& u_hat);

struct NormSample {
  double t = 0.0;
  double l_alpha = 0.0;
  double l2 = 0.0;
  double l_inf = 0.0;
  double h2dot = 0.0;
  double cum_nonlinear_mass = 0.0;  // int_0^t int N(u) dx dtau
  double mass = 0.0;                // eps int(u0+u1) + cumulative mass
};

struct Snapshot {
  double t = 0.0;
  std::vector<Complex> u_hat;
};

struct NormSeries {
  int dim = 1;
  double alpha = 2.0;
  double eps = 0.0;
  double data_integral = 0.0;  // int (u0 + u1) dx
  std::vector<NormSample> samples;
};

/// Weighted sup over the recorded samples that stands in for the X(T)
/// norm: max over t of (1+t)^{n/2(1-1/alpha)} |u|_{L^alpha} +
/// (1+t)^{n/4+1} |u|_{H^2} + (1+t)^{n/2} |u|_{L^inf}.
double x_norm_proxy(const NormSeries& series);

struct MassResult {
  std::vector<double> t;
  std::vector<double> mass;      // M(t) curve
  double extrapolated = 0.0;     // M at the final sample
  double tail_increment = 0.0;   // M(T) - M(T/2)
  bool converged = false;        // tail <= 5% of M
};

/// M(t) curve and the tail-convergence certificate of the mass constant.
MassResult mass_functional(const NormSeries& series);

/// Throws NotConverged unless the 5% tail certificate holds.
double require_mass(const MassResult& mass);

/// t^{n/2(1-1/q)} ||u(t) - M G(t)||_{L^q} for q in {alpha, 2, inf}.
double profile_deviation(const Grid& grid, const SpectralTransform& fft,
                         const std::vector<Complex>& u_hat, double t,
                         double mass, double q);

/// t^{n/4+1} ||u(t) - M G(t)||_{H^2}.
double profile_deviation_h2(const Grid& grid, const std::vector<Complex>& u_hat,
                            double t, double mass);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
};

/// Least-squares slope of log(value) vs log(t) over t in [t_lo, t_hi].
/// Values must be positive inside the window; needs >= 5 samples.
FitResult fit_decay_rate(const std::vector<double>& t,
                         const std::vector<double>& value, double t_lo,
                         double t_hi);

/// Plain least squares of y against x with R^2.
FitResult linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace dwl
