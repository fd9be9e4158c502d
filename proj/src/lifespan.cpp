#include "dwl/lifespan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace dwl {

namespace {

struct ScanResult {
  std::optional<double> crossing;
  State state;
};

// Advances with fixed h until |u|_inf crosses u_star or t reaches the
// horizon. Optionally records a two-deep checkpoint ring so a caller can
// restart strictly before the crossing.
ScanResult scan_for_crossing(Stepper& st, State s, double h, double horizon,
                             double u_star, State* cp_old, State* cp_new,
                             int cp_every) {
  double last_t = s.t;
  double last_max = std::numeric_limits<double>::quiet_NaN();
  long steps = 0;
  while (s.t < horizon - 1e-12) {
    const double t_before = s.t;
    Stepper::StepInfo info;
    try {
      info = st.step(s, h);
    } catch (const NonFiniteState&) {
      const double inf = std::numeric_limits<double>::infinity();
      return {interpolate_crossing(last_t, last_max, t_before, inf, u_star),
              std::move(s)};
    }
    if (info.start_max_abs > u_star) {
      return {interpolate_crossing(last_t, last_max, t_before,
                                   info.start_max_abs, u_star),
              std::move(s)};
    }
    last_t = t_before;
    last_max = info.start_max_abs;
    if (cp_new && ++steps % cp_every == 0) {
      *cp_old = *cp_new;
      *cp_new = s;
    }
  }
  return {std::nullopt, std::move(s)};
}

double final_max(const SpectralTransform& fft, const State& s) {
  const auto u = fft.inverse(s.u_hat);
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

DetectOutcome detect_lifespan(const Grid& grid, const SolverConfig& cfg,
                              const ModulusSpec& spec, bool refine) {
  Stepper stepper(grid, cfg, spec);
  const double u_star = cfg.blowup_threshold * std::max(1.0, cfg.eps);
  State s0 = initial_state(grid, stepper.fft(), cfg);

  State cp_old = s0;
  State cp_new = s0;
  const int cp_every = std::max(16, int(std::ceil(0.5 / cfg.dt)));
  auto coarse = scan_for_crossing(stepper, std::move(s0), cfg.dt, cfg.t_max,
                                  u_star, &cp_old, &cp_new, cp_every);
  if (!coarse.crossing) {
    // the scan never examines the last state it produced
    const double m = final_max(stepper.fft(), coarse.state);
    if (m > u_star) coarse.crossing = coarse.state.t;
  }
  DetectOutcome out;
  if (!coarse.crossing) return out;  // NoBlowupWithinHorizon
  out.blew_up = true;
  out.t_coarse = *coarse.crossing;
  if (!refine) {
    out.T = out.t_coarse;
    return out;
  }

  // Final-window re-runs at dt/2 and dt/4 from the older checkpoint
  // (always strictly before the crossing), then Richardson on the three
  // detection times.
  const State& start = cp_old;
  const double horizon =
      out.t_coarse + (out.t_coarse - start.t) + 10.0 * cfg.dt + 1.0;
  double t_level[3] = {out.t_coarse, out.t_coarse, out.t_coarse};
  for (int lvl = 1; lvl <= 2; ++lvl) {
    const double h = cfg.dt / double(1 << lvl);
    auto r = scan_for_crossing(stepper, start, h, horizon, u_star, nullptr,
                               nullptr, 0);
    t_level[lvl] = r.crossing.value_or(out.t_coarse);
  }
  const double d1 = t_level[0] - t_level[1];
  const double d2 = t_level[1] - t_level[2];
  double T = t_level[2];
  // Extrapolate only when the level differences actually shrink like an
  // order-p sequence; near-threshold jumps otherwise feed it noise.
  if (std::abs(d2) > 1e-12 * std::max(1.0, std::abs(T)) && d1 * d2 > 0.0) {
    const double ratio = d1 / d2;
    if (ratio >= 1.5 && ratio <= 32.0) {
      const double p = std::clamp(std::log2(ratio), 1.0, 4.0);
      T -= d2 / (std::exp2(p) - 1.0);
    }
  }
  out.T = T;
  return out;
}

FitResult fit_lifespan_law(const std::vector<LifespanRow>& rows, int dim) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(std::pow(r.eps, -2.0 / dim));
    y.push_back(r.psi_T);
  }
  return linear_fit(x, y);
}

LifespanTable lifespan_sweep(const Grid& grid, const SolverConfig& base,
                             const ModulusSpec& spec,
                             const std::vector<double>& eps_list,
                             int threads) {
  if (eps_list.size() < 4) {
    throw InvalidArg("lifespan sweep: need at least 4 eps values");
  }
  std::vector<double> eps(eps_list);
  std::sort(eps.begin(), eps.end(), std::greater<>());

  std::vector<std::optional<DetectOutcome>> outs(eps.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= eps.size()) return;
      SolverConfig cfg = base;
      cfg.eps = eps[i];
      cfg.keep_snapshots = false;
      outs[i] = detect_lifespan(grid, cfg, spec);
    }
  };
  const int nw = std::max(1, std::min<int>(threads, int(eps.size())));
  if (nw == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  LifespanTable table;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const auto& o = *outs[i];
    if (!o.blew_up) {
      throw IncompleteSweep("lifespan sweep: eps = " + std::to_string(eps[i]) +
                            " did not blow up within the horizon");
    }
    LifespanRow row;
    row.eps = eps[i];
    row.T = o.T;
    row.psi_T = psi(spec, o.T, 1.0, grid.dim());
    row.dt = base.dt;
    row.points_per_axis = grid.points_per_axis();
    table.rows.push_back(row);
  }
  table.monotone = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i].T < table.rows[i - 1].T * (1.0 - 1e-9)) {
      table.monotone = false;
    }
  }
  table.fit = fit_lifespan_law(table.rows, grid.dim());
  return table;
}

double eta(const CutoffSpec& cut, double s) {
  if (s <= 0.5) return 1.0;
  if (s >= 1.0) return 0.0;
  const double z = 2.0 * s - 1.0;
  if (cut.smoothstep_degree == 3) return 1.0 - z * z * (3.0 - 2.0 * z);
  if (cut.smoothstep_degree != 5) {
    throw InvalidArg("cutoff: smoothstep degree must be 3 or 5");
  }
  return 1.0 - z * z * z * (10.0 + z * (-15.0 + 6.0 * z));
}

double eta_star(const CutoffSpec& cut, double s) {
  return s < 0.5 ? 0.0 : eta(cut, s);
}

TestFunctionalResult test_functional(const Grid& grid,
                                     const SpectralTransform& fft,
                                     const std::vector<Snapshot>& trajectory,
                                     const SolverConfig& cfg,
                                     const ModulusSpec& spec, double R,
                                     const CutoffSpec& cut) {
  if (!(R >= 1.0)) throw InvalidArg("test_functional: R must be >= 1");
  if (trajectory.empty() || trajectory.back().t < R - 1e-9) {
    throw TrajectoryTooShort(
        "test_functional: stored trajectory does not cover [0, R]");
  }
  const double expo = grid.dim() + 2;

  // Samples inside [0, R]; N(u) realized once per sample.
  std::vector<double> times;
  std::vector<std::vector<double>> nl;
  std::vector<double> phys;
  for (const auto& snap : trajectory) {
    if (snap.t > R + 1e-9) break;
    fft.inverse_into(snap.u_hat, phys);
    std::vector<double> w;
    nonlinearity_into(grid, phys, spec, w);
    times.push_back(std::min(snap.t, R));
    nl.push_back(std::move(w));
  }
  if (times.size() < 2) {
    throw TrajectoryTooShort("test_functional: fewer than two samples in Q_R");
  }

  std::vector<double> x2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) x2[i] = grid.x_norm_sq(i);

  // Space integral of N(u(t_i)) against the cutoff at scale r.
  const auto shell = [&](std::size_t i, double r, bool star) {
    double acc = 0.0;
    const auto& w = nl[i];
    for (std::size_t p = 0; p < w.size(); ++p) {
      if (w[p] == 0.0) continue;
      const double arg = (x2[p] + times[i]) / r;
      const double e = star ? eta_star(cut, arg) : eta(cut, arg);
      if (e > 0.0) acc += w[p] * std::pow(e, expo);
    }
    return acc * grid.cell_volume();
  };

  const auto spacetime = [&](double r, bool star) {
    double acc = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] > r) break;
      double w = 0.0;  // trapezoid weight on the possibly clipped grid
      if (i > 0) w += 0.5 * (std::min(times[i], r) - times[i - 1]);
      if (i + 1 < times.size() && times[i] < r) {
        w += 0.5 * (std::min(times[i + 1], r) - times[i]);
      }
      if (w > 0.0) acc += w * shell(i, r, star);
    }
    return acc;
  };

  TestFunctionalResult out;
  out.I_R = spacetime(R, false);

  // Y(R) by composite Simpson in r; y(r)/r -> 0 at r = 0.
  const int nodes = 64;  // even
  const double hr = R / nodes;
  double y_int = 0.0;
  for (int j = 1; j <= nodes; ++j) {
    const double r = j * hr;
    const double v = spacetime(r, true) / r;
    const double w = (j == nodes) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    y_int += w * v;
  }
  out.Y_R = y_int * hr / 3.0;

  const auto u0 = realize_component(grid, cfg.u0);
  const auto u1 = realize_component(grid, cfg.u1);
  double side = 0.0, full = 0.0;
  for (std::size_t p = 0; p < u0.size(); ++p) {
    const double d = u0[p] + u1[p];
    full += d;
    const double e = eta(cut, x2[p] / R);
    if (e > 0.0) side += d * std::pow(e, expo);
  }
  out.data_side = side * grid.cell_volume();
  out.data_integral = full * grid.cell_volume();
  return out;
}

}  // namespace dwl
