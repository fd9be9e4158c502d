#pragma once

#include <span>
#include <string>

#include "dwl/error.hpp"

namespace dwl {

enum class MuFamily { Power, LogPower, Constant, IteratedLog };

/// Parametric modulus-of-continuity profile, continued constantly past the
/// cap point s0. Profiles near zero:
///   Power        mu(s) = s^kappa,              kappa in (0, 1]
///   LogPower     mu(s) = (log(1/s))^{-gamma}
///   IteratedLog  mu(s) = (log(1/s))^{-1} (log log(1/s))^{-gamma}
///   Constant     mu(s) = m  (reference family: the pure power p = 1 + 2/n;
///                violates mu(0) = 0 on purpose)
struct ModulusSpec {
  MuFamily family = MuFamily::Power;
  double kappa = 1.0;
  double gamma = 1.0;
  double m = 1.0;
  double s0 = kDefaultCap;

  static constexpr double kDefaultCap = 0.36787944117144233;  // e^{-1}

  static ModulusSpec power(double kappa, double s0 = kDefaultCap);
  static ModulusSpec logpower(double gamma, double s0 = kDefaultCap);
  static ModulusSpec constant(double m);
  /// Default cap: the profile's concavity boundary for this gamma (the
  /// (log(1/s))^{-1}(log log(1/s))^{-gamma} profile is convex on a band
  /// below e^{-1}, so a fixed cap cannot serve every gamma).
  static ModulusSpec iterlog(double gamma, double s0 = -1.0);

  /// Largest cap point below which the IteratedLog profile stays concave.
  static double iterlog_concavity_cap(double gamma);
  static ModulusSpec from_name(const std::string& family, double param,
                               double s0);

  /// Constant is the pure-power benchmark, not a true modulus.
  bool reference_family() const { return family == MuFamily::Constant; }
  std::string family_name() const;
};

/// mu(s) with constant continuation for s >= s0. Total on s >= 0.
double eval_mu(const ModulusSpec& spec, double s);

/// Analytic mu'(s); zero on the constant continuation.
double eval_mu_derivative(const ModulusSpec& spec, double s);

/// Analytic Dini classification of the family.
bool is_dini(const ModulusSpec& spec);

/// I(eps0) = int_0^{eps0} mu(s)/s ds, eps0 in (0, 1]. The endpoint is
/// handled by the substitution s = e^{-y}; the resulting half-line integral
/// is summed over geometrically growing segments.
/// Throws DivergentIntegral for non-Dini specs.
double dini_integral(const ModulusSpec& spec, double eps0);

/// max over the grid of s |mu'(s)| / mu(s); certifies condition (1.4)
/// for the configured family. Grid points must lie in (0, s0).
double derivative_ratio(const ModulusSpec& spec, std::span<const double> s_grid);

/// Psi(R) = int_1^R mu(C r^{-n/2}) / r dr, R >= 1.
double psi(const ModulusSpec& spec, double R, double C, int dim);

/// Inverse of psi: the R >= 1 with |psi(R) - y| <= 1e-10 max(1, y).
/// Throws NoBracket when psi is bounded below y (Dini families have
/// finite psi(inf)).
double psi_inverse(const ModulusSpec& spec, double y, double C, int dim);

}  // namespace dwl
