#include "dwl/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>

#include "dwl/io.hpp"
#include "dwl/lifespan.hpp"

namespace dwl {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct HandlerOut {
  bool pass = true;
  json outputs;
  json checks;
  std::vector<fs::path> artifacts;
};

json mu_json(const ModulusSpec& mu) {
  json j{{"family", mu.family_name()}, {"s0", mu.s0}};
  switch (mu.family) {
    case MuFamily::Power: j["kappa"] = mu.kappa; break;
    case MuFamily::LogPower:
    case MuFamily::IteratedLog: j["gamma"] = mu.gamma; break;
    case MuFamily::Constant: j["m"] = mu.m; break;
  }
  return j;
}

json inputs_json(const ExperimentConfig& cfg) {
  return json{
      {"grid",
       {{"n", cfg.dim}, {"N", cfg.points_per_axis}, {"L", cfg.half_length}}},
      {"solver",
       {{"dt", cfg.solver.dt},
        {"scheme", cfg.solver.scheme == Scheme::ETD2 ? "etd2" : "etd1"},
        {"Tmax", cfg.solver.t_max},
        {"blowup_threshold", cfg.solver.blowup_threshold},
        {"dealias", cfg.solver.dealias},
        {"linear_only", cfg.solver.linear_only}}},
      {"data", {{"eps", cfg.solver.eps}}},
      {"mu", mu_json(cfg.mu)}};
}

void guard_snapshot_memory(const Grid& grid, std::size_t samples) {
  const std::size_t bytes = grid.size() * std::max<std::size_t>(samples, 33) * 16;
  if (bytes > (std::size_t(2) << 30)) {
    throw BadValue("solver.sample_times",
                   "snapshot storage would exceed 2 GiB; reduce samples or grid");
  }
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

/// series.csv with the profile-deviation columns appended. Deviations use
/// the extrapolated mass constant; rows at t = 0 carry zeros there.
fs::path write_series_csv(const fs::path& out_dir, const Grid& grid,
                          const SpectralTransform& fft, const RunResult& run,
                          double mass) {
  const auto& series = run.series;
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    const auto& s = series.samples[i];
    double dev_a = 0.0, dev_inf = 0.0, dev_h2 = 0.0;
    if (s.t > 0.0 && i < run.snapshots.size()) {
      const auto& snap = run.snapshots[i];
      dev_a = profile_deviation(grid, fft, snap.u_hat, snap.t, mass,
                                series.alpha);
      dev_inf = profile_deviation(grid, fft, snap.u_hat, snap.t, mass, kInf);
      dev_h2 = profile_deviation_h2(grid, snap.u_hat, snap.t, mass);
    }
    rows.push_back({s.t, s.l_alpha, s.l2, s.l_inf, s.h2dot,
                    s.cum_nonlinear_mass, s.mass, dev_a, dev_inf, dev_h2});
  }
  const fs::path path = out_dir / "series.csv";
  write_csv(path,
            {"t", "Lalpha", "L2", "Linf", "H2dot", "cumNL", "M", "devLalpha",
             "devLinf", "devH2"},
            rows);
  return path;
}

HandlerOut dini_check(const ExperimentConfig& cfg, const fs::path&) {
  HandlerOut h;
  const bool dini = is_dini(cfg.mu);
  h.outputs["dini"] = dini;
  if (dini) h.outputs["dini_integral_at_1"] = dini_integral(cfg.mu, 1.0);
  std::vector<double> grid_pts;
  for (int i = 1; i <= 200; ++i) {
    grid_pts.push_back(cfg.mu.s0 * 0.999 * i / 200.0);
  }
  h.outputs["derivative_ratio"] = derivative_ratio(cfg.mu, grid_pts);
  h.outputs["psi_at_e"] = psi(cfg.mu, std::exp(1.0), 1.0, cfg.dim);
  h.outputs["psi_inverse_at_1"] = psi_inverse(cfg.mu, 1.0, 1.0, cfg.dim);
  h.checks["finished"] = true;
  return h;
}

HandlerOut simulate(const ExperimentConfig& cfg, ExperimentKind kind,
                    const fs::path& out) {
  HandlerOut h;
  Grid grid = cfg.make_grid();
  SolverConfig scfg = cfg.solver;
  scfg.keep_snapshots = true;
  guard_snapshot_memory(grid, scfg.sample_times.size());
  RunResult rr = run(grid, scfg, cfg.mu);
  SpectralTransform fft(grid);

  const MassResult mass = mass_functional(rr.series);
  h.artifacts.push_back(write_series_csv(out, grid, fft, rr, mass.extrapolated));
  if (cfg.dump_fields) {
    char name[32];
    for (std::size_t i = 0; i < rr.snapshots.size(); ++i) {
      std::snprintf(name, sizeof name, "field_%03zu.dwlf", i);
      const fs::path p = out / name;
      dump_field(p, grid, rr.snapshots[i].t, fft.inverse(rr.snapshots[i].u_hat));
      h.artifacts.push_back(p);
    }
  }

  const bool blown = rr.status == RunStatus::BlownUp;
  h.outputs["status"] = blown ? "BlownUp" : "Completed";
  if (blown) h.outputs["t_detect"] = rr.t_detect;
  h.outputs["mass"] = {{"extrapolated", mass.extrapolated},
                       {"tail_increment", mass.tail_increment},
                       {"converged", mass.converged}};
  if (!rr.series.samples.empty()) {
    const auto& last = rr.series.samples.back();
    h.outputs["final"] = {{"t", last.t},
                          {"Linf", last.l_inf},
                          {"L2", last.l2},
                          {"H2dot", last.h2dot}};
  }

  if (kind == ExperimentKind::DecaySweep) {
    h.checks["completed"] = !blown;
    h.pass = !blown;
    if (!blown) {
      double lo = cfg.fit_window_lo, hi = cfg.fit_window_hi;
      if (lo < 0.0) lo = cfg.solver.t_max / 10.0;  // last decade default
      if (hi < 0.0) hi = cfg.solver.t_max;
      std::vector<double> t, la, l2, li, h2;
      for (const auto& s : rr.series.samples) {
        t.push_back(s.t);
        la.push_back(s.l_alpha);
        l2.push_back(s.l2);
        li.push_back(s.l_inf);
        h2.push_back(s.h2dot);
      }
      json fits{{"window", {lo, hi}}};
      const auto put = [&](const char* name, const std::vector<double>& v) {
        const FitResult f = fit_decay_rate(t, v, lo, hi);
        fits[name] = {{"slope", f.slope},
                      {"intercept", f.intercept},
                      {"r2", f.r2},
                      {"points", f.points}};
      };
      put("Lalpha", la);
      put("L2", l2);
      put("Linf", li);
      put("H2dot", h2);
      h.outputs["fits"] = fits;
      write_json_file(out / "fits.json", fits);
      h.artifacts.push_back(out / "fits.json");
    }
  } else if (kind == ExperimentKind::ProfileCheck) {
    h.checks["mass_converged"] = mass.converged;
    h.pass = mass.converged && !blown;
    const auto& snaps = rr.snapshots;
    std::size_t first = snaps.size();
    for (std::size_t i = 0; i < snaps.size(); ++i) {
      if (snaps[i].t >= 1.0) {
        first = i;
        break;
      }
    }
    if (!blown && first + 1 < snaps.size()) {
      const auto dev3 = [&](const Snapshot& s) {
        return std::array<double, 3>{
            profile_deviation(grid, fft, s.u_hat, s.t, mass.extrapolated,
                              rr.series.alpha),
            profile_deviation(grid, fft, s.u_hat, s.t, mass.extrapolated, kInf),
            profile_deviation_h2(grid, s.u_hat, s.t, mass.extrapolated)};
      };
      const auto d0 = dev3(snaps[first]);
      const auto d1 = dev3(snaps.back());
      h.outputs["deviation_first"] = {{"t", snaps[first].t},
                                      {"Lalpha", d0[0]},
                                      {"Linf", d0[1]},
                                      {"H2dot", d0[2]}};
      h.outputs["deviation_last"] = {{"t", snaps.back().t},
                                     {"Lalpha", d1[0]},
                                     {"Linf", d1[1]},
                                     {"H2dot", d1[2]}};
      const bool shrinking = d1[0] <= d0[0] && d1[1] <= d0[1] && d1[2] <= d0[2];
      h.checks["deviation_nonincreasing"] = shrinking;
      h.pass = h.pass && shrinking;
    } else {
      h.checks["deviation_nonincreasing"] = false;
      h.pass = false;
    }
  } else {
    h.checks["finished"] = true;
  }
  return h;
}

HandlerOut lifespan(const ExperimentConfig& cfg, const fs::path& out,
                    int threads) {
  if (cfg.eps_list.size() < 4) {
    throw BadValue("sweep.eps", "lifespan sweep needs at least 4 eps values");
  }
  Grid grid = cfg.make_grid();
  const LifespanTable table =
      lifespan_sweep(grid, cfg.solver, cfg.mu, cfg.eps_list, threads);

  std::vector<CsvRow> rows;
  for (const auto& r : table.rows) {
    rows.push_back({r.eps, r.T, r.psi_T, r.dt, double(r.points_per_axis)});
  }
  const fs::path csv = out / "lifespan.csv";
  write_csv(csv, {"eps", "T", "PsiT", "dt", "N"}, rows);

  json fit{{"slope", table.fit.slope},
           {"intercept", table.fit.intercept},
           {"r2", table.fit.r2},
           {"n", cfg.dim},
           {"family", cfg.mu.family_name()}};
  write_json_file(out / "lifespan_fit.json", fit);

  HandlerOut h;
  h.pass = table.monotone && table.fit.slope > 0.0 && table.fit.r2 >= 0.9;
  h.outputs = {{"fit", fit}, {"rows", rows.size()}};
  h.checks = {{"monotone", table.monotone},
              {"positive_slope", table.fit.slope > 0.0},
              {"r2_at_least_0.9", table.fit.r2 >= 0.9}};
  h.artifacts = {csv, out / "lifespan_fit.json"};
  return h;
}

HandlerOut picard_demo(const ExperimentConfig& cfg, const fs::path& out) {
  Grid grid = cfg.make_grid();
  const PicardResult pr =
      picard_solve(grid, cfg.solver, cfg.mu, cfg.picard_iterations);

  // Reference trajectory from the production stepper for the same config.
  RunResult ref = run(grid, cfg.solver, cfg.mu);
  double rel_l2 = std::numeric_limits<double>::quiet_NaN();
  if (ref.status == RunStatus::Completed && !pr.last_iterate.empty()) {
    std::vector<Complex> diff = pr.last_iterate.back();
    for (std::size_t f = 0; f < diff.size(); ++f) {
      diff[f] -= ref.final_state.u_hat[f];
    }
    const double denom = l2_norm_spectral(grid, ref.final_state.u_hat);
    rel_l2 = denom > 0.0 ? l2_norm_spectral(grid, diff) / denom : 0.0;
  }

  std::vector<CsvRow> rows;
  for (std::size_t j = 0; j < pr.y_diff.size(); ++j) {
    const double ratio = j < pr.ratios.size() ? pr.ratios[j] : 0.0;
    rows.push_back({double(j + 1), pr.x_norm[j], pr.y_diff[j], ratio});
  }
  const fs::path csv = out / "picard.csv";
  write_csv(csv, {"iterate", "Xnorm", "Ydiff", "ratio"}, rows);

  bool contracting = true;
  for (double r : pr.ratios) contracting = contracting && r < 1.0;

  HandlerOut h;
  h.pass = contracting;
  h.outputs = {{"ratios", pr.ratios},
               {"x_norms", pr.x_norm},
               {"rel_l2_vs_stepper", rel_l2}};
  h.checks = {{"contracting", contracting}};
  h.artifacts = {csv};
  return h;
}

}  // namespace

DispatchResult dispatch(const ExperimentConfig& cfg, ExperimentKind kind,
                        const std::filesystem::path& out_dir, int threads) {
  fs::create_directories(out_dir);
  HandlerOut h;
  switch (kind) {
    case ExperimentKind::DiniCheck:
      h = dini_check(cfg, out_dir);
      break;
    case ExperimentKind::Simulate:
    case ExperimentKind::DecaySweep:
    case ExperimentKind::ProfileCheck:
      h = simulate(cfg, kind, out_dir);
      break;
    case ExperimentKind::LifespanSweep:
      h = lifespan(cfg, out_dir, threads);
      break;
    case ExperimentKind::PicardDemo:
      h = picard_demo(cfg, out_dir);
      break;
  }
  h.checks["pass"] = h.pass;

  DispatchResult res;
  res.exit_code = h.pass ? 0 : 2;
  res.summary["experiment"] = experiment_name(kind);
  res.summary["inputs"] = inputs_json(cfg);
  res.summary["outputs"] = h.outputs;
  res.summary["checks"] = h.checks;
  write_summary(out_dir, res.summary, h.artifacts);
  // keep the returned document identical to the file, manifest included
  {
    nlohmann::json manifest = nlohmann::json::array();
    for (const auto& p : h.artifacts) {
      manifest.push_back({{"file", p.filename().string()},
                          {"bytes", std::filesystem::file_size(p)},
                          {"fnv1a64", hash_file(p)}});
    }
    res.summary["manifest"] = manifest;
  }
  return res;
}

}  // namespace dwl
