#include "dwl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dwl {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> default_samples(double t_max) {
  std::vector<double> s;
  for (int i = 0; i <= 32; ++i) s.push_back(t_max * i / 32.0);
  return s;
}

}  // namespace

double interpolate_crossing(double t0, double m0, double t1, double m1,
                            double threshold) {
  if (!(m0 > 0.0) || !std::isfinite(m0)) return t0;
  const double x0 = 1.0 / m0;
  const double x1 = std::isfinite(m1) && m1 > 0.0 ? 1.0 / m1 : 0.0;
  const double xc = 1.0 / threshold;
  if (!(x0 > xc) || x0 <= x1) return t1;
  const double frac = (x0 - xc) / (x0 - x1);
  return t0 + std::clamp(frac, 0.0, 1.0) * (t1 - t0);
}

std::vector<double> realize_component(const Grid& grid,
                                      const DataComponent& c) {
  std::vector<double> f(grid.size(), 0.0);
  if (c.amplitude == 0.0) return f;
  switch (c.family) {
    case DataComponent::Family::Gaussian: {
      const double inv2w2 = 1.0 / (2.0 * c.width * c.width);
      for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = c.amplitude * std::exp(-grid.x_norm_sq(i) * inv2w2);
      }
      break;
    }
    case DataComponent::Family::Constant:
      std::fill(f.begin(), f.end(), c.amplitude);
      break;
  }
  return f;
}

State initial_state(const Grid& grid, const SpectralTransform& fft,
                    const SolverConfig& cfg) {
  State s;
  s.t = 0.0;
  s.u_hat = fft.forward(realize_component(grid, cfg.u0));
  s.ut_hat = fft.forward(realize_component(grid, cfg.u1));
  for (auto& c : s.u_hat) c *= cfg.eps;
  for (auto& c : s.ut_hat) c *= cfg.eps;
  return s;
}

double data_integral(const Grid& grid, const SolverConfig& cfg) {
  const auto u0 = realize_component(grid, cfg.u0);
  const auto u1 = realize_component(grid, cfg.u1);
  double s = 0.0;
  for (std::size_t i = 0; i < u0.size(); ++i) s += u0[i] + u1[i];
  return s * grid.cell_volume();
}

Stepper::Stepper(const Grid& grid, const SolverConfig& cfg,
                 const ModulusSpec& spec)
    : grid_(&grid), cfg_(&cfg), spec_(&spec), fft_(grid) {
  if (!(cfg.dt > 0.0) || cfg.dt > 0.1 + 1e-12) {
    throw InvalidArg("solver: dt must lie in (0, 0.1]");
  }
}

const PropagatorTable& Stepper::table(double h) {
  auto it = tables_.find(h);
  if (it == tables_.end()) {
    it = tables_.emplace(h, PropagatorTable::build(*grid_, h)).first;
  }
  return it->second;
}

Stepper::StepInfo Stepper::step(State& s, double h) {
  const PropagatorTable& T = table(h);
  const std::size_t n = grid_->size();
  StepInfo info;

  const bool nonlinear = !cfg_->linear_only;
  fft_.inverse_into(s.u_hat, u_phys_);
  info.start_max_abs = max_abs(u_phys_);
  info.finite = all_finite(u_phys_);
  if (!info.finite) {
    throw NonFiniteState("step: state is no longer finite at t = " +
                         std::to_string(s.t));
  }

  if (nonlinear) {
    nonlinearity_into(*grid_, u_phys_, *spec_, w_);
    fft_.forward_into(w_, w_hat_);
    if (cfg_->dealias) dealias_truncate(*grid_, w_hat_);
    info.start_integral_n = w_hat_[0].real();
    if (has_pending_) {
      cum_ += 0.5 * (pending_integral_ + info.start_integral_n) * pending_h_;
    }
    pending_integral_ = info.start_integral_n;
    pending_h_ = h;
    has_pending_ = true;
  }

  pred_u_.resize(n);
  pred_ut_.resize(n);
  for (std::size_t f = 0; f < n; ++f) {
    Complex au = T.a11[f] * s.u_hat[f] + T.a12[f] * s.ut_hat[f];
    Complex at = T.a21[f] * s.u_hat[f] + T.a22[f] * s.ut_hat[f];
    if (nonlinear) {
      au += T.w0_u[f] * w_hat_[f];
      at += T.w0_ut[f] * w_hat_[f];
    }
    pred_u_[f] = au;
    pred_ut_[f] = at;
  }

  if (nonlinear && cfg_->scheme == Scheme::ETD2) {
    fft_.inverse_into(pred_u_, wa_);
    nonlinearity_into(*grid_, wa_, *spec_, wa_);
    fft_.forward_into(wa_, wa_hat_);
    if (cfg_->dealias) dealias_truncate(*grid_, wa_hat_);
    for (std::size_t f = 0; f < n; ++f) {
      const Complex d = wa_hat_[f] - w_hat_[f];
      pred_u_[f] += T.w1_u[f] * d;
      pred_ut_[f] += T.w1_ut[f] * d;
    }
  }

  s.u_hat.swap(pred_u_);
  s.ut_hat.swap(pred_ut_);
  s.t += h;
  return info;
}

double Stepper::cumulative_mass(const State& head) {
  if (!has_pending_ || cfg_->linear_only) return cum_;
  fft_.inverse_into(head.u_hat, u_phys_);
  nonlinearity_into(*grid_, u_phys_, *spec_, w_);
  double integral = 0.0;
  for (double v : w_) integral += v;
  integral *= grid_->cell_volume();
  return cum_ + 0.5 * (pending_integral_ + integral) * pending_h_;
}

void Stepper::reset_accumulator() {
  cum_ = 0.0;
  pending_integral_ = 0.0;
  pending_h_ = 0.0;
  has_pending_ = false;
}

RunResult run(const Grid& grid, const SolverConfig& cfg,
              const ModulusSpec& spec) {
  Stepper stepper(grid, cfg, spec);
  const SpectralTransform& fft = stepper.fft();

  RunResult result;
  NormSeries& series = result.series;
  series.dim = grid.dim();
  series.alpha = alpha_index(grid.dim());
  series.eps = cfg.eps;
  series.data_integral = data_integral(grid, cfg);

  std::vector<double> samples =
      cfg.sample_times.empty() ? default_samples(cfg.t_max) : cfg.sample_times;
  if (samples.front() != 0.0) samples.insert(samples.begin(), 0.0);

  State state = initial_state(grid, fft, cfg);
  const double u_star = cfg.blowup_threshold * std::max(1.0, cfg.eps);

  std::vector<double> u_phys;
  // Returns |u|_inf; pushes the sample only while it is finite.
  const auto record = [&](const State& s) {
    fft.inverse_into(s.u_hat, u_phys);
    NormSample ns;
    ns.t = s.t;
    ns.l_alpha = lq_norm(grid, u_phys, series.alpha);
    ns.l2 = lq_norm(grid, u_phys, 2.0);
    ns.l_inf = lq_norm(grid, u_phys, kInf);
    ns.h2dot = h2dot_norm(grid, s.u_hat);
    ns.cum_nonlinear_mass = stepper.cumulative_mass(s);
    ns.mass = cfg.eps * series.data_integral + ns.cum_nonlinear_mass;
    if (!std::isfinite(ns.l_inf) || !std::isfinite(ns.h2dot)) {
      return std::numeric_limits<double>::infinity();
    }
    series.samples.push_back(ns);
    if (cfg.keep_snapshots) result.snapshots.push_back({s.t, s.u_hat});
    return ns.l_inf;
  };

  double last_t = 0.0;
  double last_max = record(state);
  bool blown = false;

  for (std::size_t si = 1; si < samples.size() && !blown; ++si) {
    const double target = samples[si];
    const double span = target - state.t;
    if (span <= 0.0) continue;
    const int nsteps = std::max(1, int(std::ceil(span / cfg.dt - 1e-9)));
    const double h = span / nsteps;
    for (int i = 0; i < nsteps; ++i) {
      const double t_before = state.t;
      Stepper::StepInfo info;
      try {
        info = stepper.step(state, h);
      } catch (const NonFiniteState&) {
        result.t_detect =
            interpolate_crossing(last_t, last_max, t_before,
                                 std::numeric_limits<double>::infinity(),
                                 u_star);
        blown = true;
        break;
      }
      if (info.start_max_abs > u_star) {
        result.t_detect = interpolate_crossing(last_t, last_max, t_before,
                                               info.start_max_abs, u_star);
        blown = true;
        break;
      }
      last_t = t_before;
      last_max = info.start_max_abs;
    }
    if (!blown) {
      state.t = target;  // clear accumulated rounding at sample boundaries
      const double l_inf = record(state);
      if (l_inf > u_star || !std::isfinite(l_inf)) {
        result.t_detect =
            interpolate_crossing(last_t, last_max, state.t, l_inf, u_star);
        blown = true;
      }
    }
  }

  result.status = blown ? RunStatus::BlownUp : RunStatus::Completed;
  result.final_state = std::move(state);
  return result;
}

PicardResult picard_solve(const Grid& grid, const SolverConfig& cfg,
                          const ModulusSpec& spec, int iterations) {
  if (iterations < 2) throw InvalidArg("picard: need at least 2 iterates");
  std::vector<double> times =
      cfg.sample_times.empty() ? default_samples(cfg.t_max) : cfg.sample_times;
  if (times.size() < 3 || times.front() != 0.0) {
    throw InvalidArg("picard: sample grid must start at 0");
  }
  const int K = int(times.size());
  const double h = times[1] - times[0];
  for (int k = 1; k < K; ++k) {
    if (std::abs(times[k] - times[k - 1] - h) > 1e-9 * std::max(1.0, h)) {
      throw InvalidArg("picard: sample grid must be uniform");
    }
  }

  SpectralTransform fft(grid);
  const std::size_t n = grid.size();

  // u_lin at every sample, by exact chained propagation.
  std::vector<std::vector<Complex>> u_lin(K);
  {
    State s = initial_state(grid, fft, cfg);
    u_lin[0] = s.u_hat;
    for (int k = 1; k < K; ++k) {
      s = linear_propagate(grid, s, h);
      u_lin[k] = s.u_hat;
    }
  }

  // Kernel symbol per lag m: K((m h), |xi|); lag 0 vanishes identically.
  std::vector<std::vector<double>> ker(K);
  for (int m = 1; m < K; ++m) {
    ker[m].resize(n);
    for (std::size_t f = 0; f < n; ++f) {
      ker[m][f] = kernel_symbol(m * h, std::sqrt(grid.xi_norm_sq(f)));
    }
  }

  PicardResult out;
  out.times = times;

  std::vector<std::vector<Complex>> prev(K, std::vector<Complex>(n));  // u_0=0
  std::vector<std::vector<Complex>> next(K);
  std::vector<std::vector<Complex>> n_hat(K);
  std::vector<double> phys, nl;

  for (int j = 1; j <= iterations; ++j) {
    // N(u_{j-1}) at every sample.
    for (int i = 0; i < K; ++i) {
      fft.inverse_into(prev[i], phys);
      if (!all_finite(phys)) throw NonFiniteState("picard: iterate diverged");
      nonlinearity_into(grid, phys, spec, nl);
      fft.forward_into(nl, n_hat[i]);
    }
    for (int k = 0; k < K; ++k) {
      next[k] = u_lin[k];
      // trapezoid over tau_0..tau_k; the tau = t_k endpoint carries K(0) = 0
      for (int i = 0; i < k; ++i) {
        const double w = (i == 0 ? 0.5 : 1.0) * h;
        const auto& kern = ker[k - i];
        auto& acc = next[k];
        const auto& src = n_hat[i];
        for (std::size_t f = 0; f < n; ++f) acc[f] += w * kern[f] * src[f];
      }
    }

    NormSeries ns;
    ns.dim = grid.dim();
    ns.alpha = alpha_index(grid.dim());
    double ydiff = 0.0;
    for (int k = 0; k < K; ++k) {
      fft.inverse_into(next[k], phys);
      NormSample s;
      s.t = times[k];
      s.l_alpha = lq_norm(grid, phys, ns.alpha);
      s.l_inf = lq_norm(grid, phys, kInf);
      s.h2dot = h2dot_norm(grid, next[k]);
      ns.samples.push_back(s);
      std::vector<Complex> diff(n);
      for (std::size_t f = 0; f < n; ++f) diff[f] = next[k][f] - prev[k][f];
      ydiff = std::max(ydiff, l2_norm_spectral(grid, diff));
    }
    out.x_norm.push_back(x_norm_proxy(ns));
    out.y_diff.push_back(ydiff);
    prev.swap(next);
  }
  for (std::size_t j = 1; j < out.y_diff.size(); ++j) {
    const double d = out.y_diff[j - 1];
    out.ratios.push_back(d > 0.0 ? out.y_diff[j] / d : 0.0);
  }
  out.last_iterate = std::move(prev);
  return out;
}

}  // namespace dwl
