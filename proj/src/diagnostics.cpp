#include "dwl/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace dwl {

double lq_norm(const Grid& grid, const std::vector<double>& f, double q) {
  if (f.size() != grid.size()) throw SizeMismatch("lq_norm: field size");
  if (q == kInf) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(q >= 1.0)) throw InvalidArg("lq_norm: q must be >= 1");
  double s = 0.0;
  if (q == 2.0) {
    for (double v : f) s += v * v;
  } else {
    for (double v : f) s += std::pow(std::abs(v), q);
  }
  return std::pow(s * grid.cell_volume(), 1.0 / q);
}

double h2dot_norm(const Grid& grid, const std::vector<Complex>& u_hat) {
  if (u_hat.size() != grid.size()) throw SizeMismatch("h2dot_norm: size");
  double s = 0.0;
  for (std::size_t f = 0; f < u_hat.size(); ++f) {
    const double r2 = grid.xi_norm_sq(f);
    s += r2 * r2 * std::norm(u_hat[f]);
  }
  return std::sqrt(s / grid.box_volume());
}

double l2_norm_spectral(const Grid& grid, const std::vector<Complex>& u_hat) {
  double s = 0.0;
  for (const auto& c : u_hat) s += std::norm(c);
  return std::sqrt(s / grid.box_volume());
}

double x_norm_proxy(const NormSeries& series) {
  double best = 0.0;
  const double n2 = 0.5 * series.dim;
  for (const auto& s : series.samples) {
    const double w = 1.0 + s.t;
    const double v = std::pow(w, n2 * (1.0 - 1.0 / series.alpha)) * s.l_alpha +
                     std::pow(w, 0.25 * series.dim + 1.0) * s.h2dot +
                     std::pow(w, n2) * s.l_inf;
    best = std::max(best, v);
  }
  return best;
}

MassResult mass_functional(const NormSeries& series) {
  MassResult r;
  for (const auto& s : series.samples) {
    r.t.push_back(s.t);
    r.mass.push_back(s.mass);
  }
  if (r.mass.empty()) return r;
  r.extrapolated = r.mass.back();
  const double t_half = 0.5 * r.t.back();
  double m_half = r.mass.front();
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    if (r.t[i] <= t_half) m_half = r.mass[i];
  }
  r.tail_increment = r.extrapolated - m_half;
  r.converged =
      std::abs(r.tail_increment) <= 0.05 * std::abs(r.extrapolated);
  return r;
}

double require_mass(const MassResult& mass) {
  if (!mass.converged) {
    throw NotConverged("mass functional: tail increment above 5% of M");
  }
  return mass.extrapolated;
}

double profile_deviation(const Grid& grid, const SpectralTransform& fft,
                         const std::vector<Complex>& u_hat, double t,
                         double mass, double q) {
  std::vector<Complex> diff(u_hat);
  for (std::size_t f = 0; f < diff.size(); ++f) {
    diff[f] -= Complex(mass * std::exp(-grid.xi_norm_sq(f) * t), 0.0);
  }
  const double weight =
      std::pow(t, 0.5 * grid.dim() * (1.0 - (q == kInf ? 0.0 : 1.0 / q)));
  if (q == 2.0) return weight * l2_norm_spectral(grid, diff);
  return weight * lq_norm(grid, fft.inverse(diff), q);
}

double profile_deviation_h2(const Grid& grid,
                            const std::vector<Complex>& u_hat, double t,
                            double mass) {
  std::vector<Complex> diff(u_hat);
  for (std::size_t f = 0; f < diff.size(); ++f) {
    diff[f] -= Complex(mass * std::exp(-grid.xi_norm_sq(f) * t), 0.0);
  }
  return std::pow(t, 0.25 * grid.dim() + 1.0) * h2dot_norm(grid, diff);
}

FitResult linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y) {
  FitResult r;
  const int n = int(x.size());
  r.points = n;
  if (n < 2 || y.size() != x.size()) {
    throw InsufficientData("linear_fit: need at least two points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw InsufficientData("linear_fit: degenerate abscissae");
  r.slope = (n * sxy - sx * sy) / det;
  r.intercept = (sy - r.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (int i = 0; i < n; ++i) {
    const double fit = r.slope * x[i] + r.intercept;
    ss_res += (y[i] - fit) * (y[i] - fit);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  r.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return r;
}

FitResult fit_decay_rate(const std::vector<double>& t,
                         const std::vector<double>& value, double t_lo,
                         double t_hi) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(t[i] > 0.0) || !(value[i] > 0.0)) {
      throw InsufficientData("fit_decay_rate: nonpositive sample in window");
    }
    lx.push_back(std::log(t[i]));
    ly.push_back(std::log(value[i]));
  }
  if (lx.size() < 5) {
    throw InsufficientData("fit_decay_rate: fewer than 5 samples in window");
  }
  return linear_fit(lx, ly);
}

}  // namespace dwl
