#include "dwl/spectral_ops.hpp"

#include <cmath>

#include "dwl/quadrature.hpp"

namespace dwl {

PropagatorTable PropagatorTable::build(const Grid& grid, double dt) {
  if (!(dt > 0.0)) throw InvalidArg("propagator: dt must be positive");
  const std::size_t n = grid.size();
  PropagatorTable T;
  T.dt = dt;
  T.a11.resize(n);
  T.a12.resize(n);
  T.a21.resize(n);
  T.a22.resize(n);
  T.w0_u.resize(n);
  T.w0_ut.resize(n);
  T.w1_u.resize(n);
  T.w1_ut.resize(n);
  const auto& gl = gauss_legendre_8();
  for (std::size_t f = 0; f < n; ++f) {
    const double r = std::sqrt(grid.xi_norm_sq(f));
    const double K = kernel_symbol(dt, r);
    const double Kt = kernel_dt_symbol(dt, r);
    T.a11[f] = K + Kt;
    T.a12[f] = K;
    T.a21[f] = -r * r * K;
    T.a22[f] = Kt;
    double w0u = 0.0, w0t = 0.0, w1u = 0.0, w1t = 0.0;
    for (int q = 0; q < GaussLegendre8::n; ++q) {
      const double s = gl.node[q] * dt;
      const double w = gl.weight[q] * dt;
      const double ks = kernel_symbol(s, r);
      const double kts = kernel_dt_symbol(s, r);
      const double ramp = 1.0 - s / dt;
      w0u += w * ks;
      w0t += w * kts;
      w1u += w * ks * ramp;
      w1t += w * kts * ramp;
    }
    T.w0_u[f] = w0u;
    T.w0_ut[f] = w0t;
    T.w1_u[f] = w1u;
    T.w1_ut[f] = w1t;
  }
  return T;
}

State linear_propagate(const Grid& grid, const State& s, double dt) {
  if (!(dt > 0.0)) throw InvalidArg("linear_propagate: dt must be positive");
  if (s.u_hat.size() != grid.size() || s.ut_hat.size() != grid.size()) {
    throw SizeMismatch("linear_propagate: state size != grid size");
  }
  State out;
  out.t = s.t + dt;
  out.u_hat.resize(grid.size());
  out.ut_hat.resize(grid.size());
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const double r2 = grid.xi_norm_sq(f);
    const double r = std::sqrt(r2);
    const double K = kernel_symbol(dt, r);
    const double Kt = kernel_dt_symbol(dt, r);
    out.u_hat[f] = (K + Kt) * s.u_hat[f] + K * s.ut_hat[f];
    out.ut_hat[f] = -r2 * K * s.u_hat[f] + Kt * s.ut_hat[f];
  }
  return out;
}

std::vector<Complex> gauss_spectrum(const Grid& grid, double t, double mass) {
  if (!(t > 0.0)) throw InvalidArg("gauss: t must be positive");
  std::vector<Complex> g(grid.size());
  for (std::size_t f = 0; f < grid.size(); ++f) {
    g[f] = Complex(mass * std::exp(-grid.xi_norm_sq(f) * t), 0.0);
  }
  return g;
}

std::vector<double> gauss_field(const Grid& grid, const SpectralTransform& fft,
                                double t, double mass) {
  return fft.inverse(gauss_spectrum(grid, t, mass));
}

void nonlinearity_into(const Grid& grid, const std::vector<double>& u,
                       const ModulusSpec& spec, std::vector<double>& out) {
  const double p = 1.0 + 2.0 / grid.dim();
  out.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = std::abs(u[i]);
    out[i] = a == 0.0 ? 0.0 : std::pow(a, p) * eval_mu(spec, a);
  }
}

std::vector<double> apply_nonlinearity(const Grid& grid,
                                       const SpectralTransform& fft,
                                       const std::vector<double>& u,
                                       const ModulusSpec& spec, bool dealias) {
  std::vector<double> v;
  nonlinearity_into(grid, u, spec, v);
  if (dealias) {
    auto v_hat = fft.forward(v);
    dealias_truncate(grid, v_hat);
    fft.inverse_into(v_hat, v);
  }
  return v;
}

void dealias_truncate(const Grid& grid, std::vector<Complex>& u_hat) {
  if (u_hat.size() != grid.size()) {
    throw SizeMismatch("dealias: field size != grid size");
  }
  const int cut = grid.points_per_axis() / 3;
  const int n = grid.points_per_axis();
  for (std::size_t f = 0; f < u_hat.size(); ++f) {
    std::size_t rem = f;
    for (int a = grid.dim() - 1; a >= 0; --a) {
      const int m = int(rem % n);
      rem /= n;
      if (std::abs(grid.signed_index(m)) > cut) {
        u_hat[f] = Complex(0.0, 0.0);
        break;
      }
    }
  }
}

}  // namespace dwl
