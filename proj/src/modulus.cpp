#include "dwl/modulus.hpp"

#include <algorithm>
#include <cmath>

#include "dwl/quadrature.hpp"

namespace dwl {

namespace {

constexpr double kE = 2.718281828459045;

void check_cap(double s0, double upper, const char* family) {
  if (!(s0 > 0.0) || !(s0 < upper) || s0 > 1.0) {
    throw InvalidArg(std::string(family) + ": cap point s0 out of range");
  }
}

// Profile value as a function of y = log(1/s), valid for y >= y_cap.
// Working in y keeps the log-family tails exact long after e^{-y}
// underflows.
double profile_of_y(const ModulusSpec& spec, double y) {
  switch (spec.family) {
    case MuFamily::Power:
      return std::exp(-spec.kappa * y);
    case MuFamily::LogPower:
      return std::pow(y, -spec.gamma);
    case MuFamily::IteratedLog:
      return std::pow(std::log(y), -spec.gamma) / y;
    case MuFamily::Constant:
      return spec.m;
  }
  return 0.0;
}

double cap_y(const ModulusSpec& spec) { return std::log(1.0 / spec.s0); }

// Tail integrand of the Dini integral after the second substitution
// y = e^w: mu(e^{-e^w}) e^w, written per family so nothing overflows.
double dini_tail_w(const ModulusSpec& spec, double w) {
  switch (spec.family) {
    case MuFamily::Power:
      return std::exp(w - spec.kappa * std::exp(w));
    case MuFamily::LogPower:
      return std::exp((1.0 - spec.gamma) * w);
    case MuFamily::IteratedLog:
      return std::pow(w, -spec.gamma);
    case MuFamily::Constant:
      break;  // non-Dini, never reached
  }
  return 0.0;
}

}  // namespace

ModulusSpec ModulusSpec::power(double kappa, double s0) {
  if (!(kappa > 0.0) || kappa > 1.0) {
    throw InvalidArg("power: kappa must lie in (0, 1] to keep mu concave");
  }
  // s^kappa is concave up to 1; the cap may sit anywhere in (0, 1].
  if (!(s0 > 0.0) || s0 > 1.0) throw InvalidArg("power: s0 out of (0, 1]");
  ModulusSpec spec;
  spec.family = MuFamily::Power;
  spec.kappa = kappa;
  spec.s0 = s0;
  return spec;
}

ModulusSpec ModulusSpec::logpower(double gamma, double s0) {
  if (!(gamma > 0.0)) throw InvalidArg("logpower: gamma must be positive");
  check_cap(s0, 1.0, "logpower");  // profile diverges at s = 1
  ModulusSpec spec;
  spec.family = MuFamily::LogPower;
  spec.gamma = gamma;
  spec.s0 = s0;
  return spec;
}

ModulusSpec ModulusSpec::constant(double m) {
  if (!(m > 0.0)) throw InvalidArg("constant: m must be positive");
  ModulusSpec spec;
  spec.family = MuFamily::Constant;
  spec.m = m;
  spec.s0 = 1.0;
  return spec;
}

double ModulusSpec::iterlog_concavity_cap(double gamma) {
  // In y = log(1/s), with L = log y and h = (1 + gamma/L)/y, the profile
  // is concave iff h^2 - h' - h <= 0. The boundary is the root of
  //   F(y) = (1 + g/L)^2 + 1 + g(L+1)/L^2 - y (1 + g/L),
  // which is positive near y = 1 and negative for large y.
  const auto F = [gamma](double y) {
    const double L = std::log(y);
    const double a = 1.0 + gamma / L;
    return a * a + 1.0 + gamma * (L + 1.0) / (L * L) - y * a;
  };
  double lo = 1.0 + 1e-6, hi = 8.0;
  while (F(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (F(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::exp(-hi);
}

ModulusSpec ModulusSpec::iterlog(double gamma, double s0) {
  if (!(gamma > 0.0)) throw InvalidArg("iterlog: gamma must be positive");
  if (s0 < 0.0) s0 = iterlog_concavity_cap(gamma);
  // log log(1/s) must be positive below the cap.
  check_cap(s0, 1.0 / kE, "iterlog");
  ModulusSpec spec;
  spec.family = MuFamily::IteratedLog;
  spec.gamma = gamma;
  spec.s0 = s0;
  return spec;
}

ModulusSpec ModulusSpec::from_name(const std::string& family, double param,
                                   double s0) {
  if (family == "power") return power(param, s0);
  if (family == "logpower") return logpower(param, s0);
  if (family == "constant") return constant(param);
  if (family == "iterlog") return iterlog(param, s0);
  throw UnknownFamily(family);
}

std::string ModulusSpec::family_name() const {
  switch (family) {
    case MuFamily::Power: return "power";
    case MuFamily::LogPower: return "logpower";
    case MuFamily::Constant: return "constant";
    case MuFamily::IteratedLog: return "iterlog";
  }
  return "?";
}

double eval_mu(const ModulusSpec& spec, double s) {
  if (spec.family == MuFamily::Constant) return spec.m;
  if (s <= 0.0) return 0.0;
  if (s >= spec.s0) return profile_of_y(spec, cap_y(spec));
  return profile_of_y(spec, std::log(1.0 / s));
}

double eval_mu_derivative(const ModulusSpec& spec, double s) {
  if (spec.family == MuFamily::Constant) return 0.0;
  if (s <= 0.0 || s >= spec.s0) return 0.0;
  const double y = std::log(1.0 / s);
  switch (spec.family) {
    case MuFamily::Power:
      return spec.kappa * std::pow(s, spec.kappa - 1.0);
    case MuFamily::LogPower:
      return spec.gamma * std::pow(y, -spec.gamma - 1.0) / s;
    case MuFamily::IteratedLog: {
      const double ly = std::log(y);
      return profile_of_y(spec, y) * (1.0 + spec.gamma / ly) / (y * s);
    }
    default:
      return 0.0;
  }
}

bool is_dini(const ModulusSpec& spec) {
  switch (spec.family) {
    case MuFamily::Power: return true;
    case MuFamily::LogPower: return spec.gamma > 1.0;
    case MuFamily::IteratedLog: return spec.gamma > 1.0;
    case MuFamily::Constant: return false;
  }
  return false;
}

double dini_integral(const ModulusSpec& spec, double eps0) {
  if (!(eps0 > 0.0) || eps0 > 1.0) {
    throw InvalidArg("dini_integral: eps0 must lie in (0, 1]");
  }
  if (!is_dini(spec)) {
    throw DivergentIntegral("dini_integral: " + spec.family_name() +
                            " does not satisfy the Dini condition");
  }
  // int_0^{eps0} mu(s)/s ds = int_{y0}^{inf} mu(e^{-y}) dy.
  const double y0 = std::log(1.0 / eps0);
  const double yc = cap_y(spec);
  double total = 0.0;
  double a = y0;
  if (y0 < yc) {  // constant continuation stretch, integrand flat
    total += profile_of_y(spec, yc) * (yc - y0);
    a = yc;
  }
  // Finite head up to y = 1, then y = e^w for the half line. The second
  // substitution turns every family's tail geometric under doubling
  // segments (IteratedLog decays only like (log y)^{-gamma} otherwise).
  const double a1 = std::max(a, 1.0);
  if (a1 > a) {
    total += adaptive_simpson([&](double y) { return profile_of_y(spec, y); },
                              a, a1, 1e-12 * std::max(1.0, total));
  }
  total += integrate_tail([&](double w) { return dini_tail_w(spec, w); },
                          std::log(a1), 1e-10);
  return total;
}

double derivative_ratio(const ModulusSpec& spec,
                        std::span<const double> s_grid) {
  double best = 0.0;
  for (double s : s_grid) {
    const double mu = eval_mu(spec, s);
    if (mu <= 0.0) continue;
    best = std::max(best, s * std::abs(eval_mu_derivative(spec, s)) / mu);
  }
  return best;
}

double psi(const ModulusSpec& spec, double R, double C, int dim) {
  if (!(R >= 1.0)) throw InvalidArg("psi: R must be >= 1");
  if (!(C > 0.0)) throw InvalidArg("psi: C must be positive");
  if (dim < 1 || dim > 4) throw InvalidArg("psi: dimension must be 1..4");
  if (R == 1.0) return 0.0;
  const double vmax = std::log(R);
  if (spec.family == MuFamily::Constant) return spec.m * vmax;

  // With r = e^v the integrand is mu(C e^{-n v / 2}), constant while the
  // argument still sits on the continuation, then the decaying profile.
  const double h = 0.5 * dim;
  const double vstar =
      std::clamp((std::log(C) + cap_y(spec)) / h, 0.0, vmax);
  double total = eval_mu(spec, spec.s0) * vstar;
  if (vstar >= vmax) return total;

  const auto g = [&](double v) {
    return profile_of_y(spec, h * v - std::log(C));
  };
  // Geometric segments keep the adaptive rule honest when vmax is large.
  double lo = vstar;
  double len = 1.0;
  while (lo < vmax) {
    const double hi = std::min(lo + len, vmax);
    total += adaptive_simpson(g, lo, hi,
                              1e-12 * std::max(1.0, std::abs(total)));
    lo = hi;
    len *= 2.0;
  }
  return total;
}

double psi_inverse(const ModulusSpec& spec, double y, double C, int dim) {
  if (!(y >= 0.0)) throw InvalidArg("psi_inverse: y must be >= 0");
  if (y == 0.0) return 1.0;

  double lo = 1.0, hi = 2.0;
  double psi_hi = psi(spec, hi, C, dim);
  while (psi_hi < y) {
    lo = hi;
    if (hi >= 1e290) {
      throw NoBracket("psi_inverse: psi is bounded below the target " +
                      std::to_string(y));
    }
    hi = std::min(hi * hi, 1e290);
    psi_hi = psi(spec, hi, C, dim);
  }

  const double tol = 1e-10 * std::max(1.0, y);
  double llo = std::log(lo), lhi = std::log(hi);
  double mid = hi;
  for (int it = 0; it < 200; ++it) {
    const double lmid = 0.5 * (llo + lhi);
    mid = std::exp(lmid);
    const double val = psi(spec, mid, C, dim);
    if (std::abs(val - y) <= 0.5 * tol) return mid;
    (val < y ? llo : lhi) = lmid;
    if (lhi - llo < 1e-16 * std::max(1.0, std::abs(lhi))) break;
  }
  return mid;
}

}  // namespace dwl
