#pragma once

#include <optional>
#include <vector>

#include "dwl/diagnostics.hpp"
#include "dwl/modulus.hpp"
#include "dwl/solver.hpp"

namespace dwl {

struct DetectOutcome {
  bool blew_up = false;
  double T = 0.0;        // refined detection time (blew_up only)
  double t_coarse = 0.0; // detection at the configured dt, no refinement
};

/// First |u|_inf crossing of the effective threshold. The final window is
/// re-run from a checkpoint at dt/2 and dt/4 and the three detection
/// times are Richardson-extrapolated. Returns blew_up = false when the
/// run completes the horizon (a finding, not an error, for Dini specs).
DetectOutcome detect_lifespan(const Grid& grid, const SolverConfig& cfg,
                              const ModulusSpec& spec, bool refine = true);

struct LifespanRow {
  double eps = 0.0;
  double T = 0.0;
  double psi_T = 0.0;  // Psi(T) at C = 1
  double dt = 0.0;
  int points_per_axis = 0;
};

struct LifespanTable {
  std::vector<LifespanRow> rows;  // sorted by eps descending
  FitResult fit;                  // Psi(T) against eps^{-2/n}
  bool monotone = false;          // T non-increasing in eps
};

/// Fit of the lifespan law on precomputed rows: Psi(T_eps) vs eps^{-2/n}.
FitResult fit_lifespan_law(const std::vector<LifespanRow>& rows, int dim);

/// Runs detect_lifespan for every eps (>= 4 of them); throws
/// IncompleteSweep if any member completes without blowing up.
/// threads > 1 runs sweep members concurrently.
LifespanTable lifespan_sweep(const Grid& grid, const SolverConfig& base,
                             const ModulusSpec& spec,
                             const std::vector<double>& eps_list,
                             int threads = 1);

/// Cutoff profile eta: 1 on [0, 1/2], smoothstep-decreasing on [1/2, 1],
/// 0 beyond. The test functions are psi_R = eta((|x|^2 + t)/R)^{n+2} and
/// the shell variant psi*_R built from eta* = eta restricted to [1/2, inf).
struct CutoffSpec {
  int smoothstep_degree = 5;  // 3 or 5
};

double eta(const CutoffSpec& cut, double s);
double eta_star(const CutoffSpec& cut, double s);

struct TestFunctionalResult {
  double I_R = 0.0;           // int N(u) psi_R over Q_R
  double Y_R = 0.0;           // int_0^R y(r)/r dr
  double data_side = 0.0;     // int (u0 + u1) psi_R(0, .) dx  (no eps)
  double data_integral = 0.0; // int (u0 + u1) dx
};

/// Space-time trapezoid quadrature of the Section-4 functionals on a
/// stored trajectory covering [0, R]. u0/u1 realized from cfg (unscaled).
TestFunctionalResult test_functional(const Grid& grid,
                                     const SpectralTransform& fft,
                                     const std::vector<Snapshot>& trajectory,
                                     const SolverConfig& cfg,
                                     const ModulusSpec& spec, double R,
                                     const CutoffSpec& cut);

}  // namespace dwl
