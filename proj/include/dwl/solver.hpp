#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dwl/diagnostics.hpp"
#include "dwl/fft.hpp"
#include "dwl/grid.hpp"
#include "dwl/modulus.hpp"
#include "dwl/spectral_ops.hpp"

namespace dwl {

enum class Scheme { ETD1, ETD2 };

struct DataComponent {
  enum class Family { Gaussian, Constant };
  Family family = Family::Gaussian;
  double amplitude = 0.0;
  double width = 1.0;  // Gaussian: a exp(-|x|^2 / (2 width^2))
};

struct SolverConfig {
  double dt = 0.05;
  Scheme scheme = Scheme::ETD2;
  double t_max = 10.0;
  std::vector<double> sample_times;  // sorted, in [0, t_max]; empty = uniform
  double blowup_threshold = 1e3;     // base U*; effective U* = base max(1, eps)
  bool dealias = false;
  bool linear_only = false;  // drop the nonlinearity (config switch)
  bool keep_snapshots = false;
  double eps = 0.0;
  DataComponent u0;
  DataComponent u1;
};

enum class RunStatus { Completed, BlownUp };

struct RunResult {
  RunStatus status = RunStatus::Completed;
  NormSeries series;
  State final_state;
  /// Threshold crossing time, interpolated linearly in 1/|u|_inf between
  /// the bracketing steps (matches the 1/(T-t) blow-up profile). Only
  /// meaningful for BlownUp.
  double t_detect = 0.0;
  std::vector<Snapshot> snapshots;
};

std::vector<double> realize_component(const Grid& grid,
                                      const DataComponent& c);

/// (eps u0_hat, eps u1_hat) at t = 0.
State initial_state(const Grid& grid, const SpectralTransform& fft,
                    const SolverConfig& cfg);

/// int (u0 + u1) dx before the eps scaling.
double data_integral(const Grid& grid, const SolverConfig& cfg);

/// One exponential-Duhamel time stepper bound to a grid/config/modulus.
/// Holds the FFT plans, per-dt propagator tables, and the running
/// space-time integral of the nonlinearity.
class Stepper {
 public:
  Stepper(const Grid& grid, const SolverConfig& cfg, const ModulusSpec& spec);

  struct StepInfo {
    double start_max_abs = 0.0;    // |u|_inf of the state stepped from
    double start_integral_n = 0.0; // int N(u) dx there
    bool finite = true;
  };

  /// Advances s by one step of size h. ETD1 freezes N over the step
  /// (Duhamel column against constant forcing, exact per-mode weights);
  /// ETD2 adds the linear-in-tau correction through an ETD1 predictor.
  StepInfo step(State& s, double h);

  /// Cumulative int_0^t int N dx dtau, trapezoid in tau, flushed at the
  /// state the stepper currently points at.
  double cumulative_mass(const State& head);

  void reset_accumulator();

  const SpectralTransform& fft() const { return fft_; }
  const Grid& grid() const { return *grid_; }

 private:
  const PropagatorTable& table(double h);

  const Grid* grid_;
  const SolverConfig* cfg_;
  const ModulusSpec* spec_;
  SpectralTransform fft_;
  std::map<double, PropagatorTable> tables_;
  // trapezoid bookkeeping for the mass integral
  double cum_ = 0.0;
  double pending_integral_ = 0.0;
  double pending_h_ = 0.0;
  bool has_pending_ = false;
  // scratch
  std::vector<double> u_phys_, w_, wa_;
  std::vector<Complex> w_hat_, wa_hat_, pred_u_, pred_ut_;
};

/// Steps from t=0, records diagnostics at the sample times, stops early
/// with BlownUp when |u|_inf crosses the effective threshold or the state
/// stops being finite.
RunResult run(const Grid& grid, const SolverConfig& cfg,
              const ModulusSpec& spec);

/// Crossing time of |u|_inf = threshold between (t0, m0) and (t1, m1),
/// linear in 1/|u| (exact on the 1/(T-t) blow-up profile). m1 may be
/// non-finite.
double interpolate_crossing(double t0, double m0, double t1, double m1,
                            double threshold);

struct PicardResult {
  std::vector<double> times;
  std::vector<double> x_norm;   // X-norm proxy per iterate u_1..u_J
  std::vector<double> y_diff;   // d_j = |u_j - u_{j-1}|_Y, j = 1..J
  std::vector<double> ratios;   // r_j = d_{j+1} / d_j, j = 1..J-1
  std::vector<std::vector<Complex>> last_iterate;  // u_J at the sample times
};

/// Fixed-point iteration u_j = u_lin + int_0^t K(t - tau) * N(u_{j-1})
/// on a uniform sample grid, trapezoid in tau. Mirrors the contraction
/// construction; not the production solver.
PicardResult picard_solve(const Grid& grid, const SolverConfig& cfg,
                          const ModulusSpec& spec, int iterations);

}  // namespace dwl
