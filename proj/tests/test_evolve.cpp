#include <cmath>

#include "doctest.h"
#include "dwl/lifespan.hpp"
#include "dwl/solver.hpp"
#include "oracles.hpp"

using dwl::Grid;
using dwl::ModulusSpec;
using dwl::SolverConfig;

namespace {

SolverConfig base_config() {
  SolverConfig cfg;
  cfg.dt = 0.05;
  cfg.scheme = dwl::Scheme::ETD2;
  cfg.t_max = 5.0;
  cfg.eps = 0.1;
  cfg.u0.family = dwl::DataComponent::Family::Gaussian;
  cfg.u0.amplitude = 1.0;
  cfg.u0.width = 1.0;
  cfg.u1.amplitude = 0.0;
  return cfg;
}

// RK4 trajectory value y(t) for y'' + y' = f(y).
double ode_value(const std::function<double(double)>& f, double y0, double v0,
                 double t, double h = 1e-4) {
  double y = y0, v = v0;
  const long n = std::max(1L, long(std::ceil(t / h)));
  const double step = t / double(n);
  for (long i = 0; i < n; ++i) {
    const auto rhs = [&](double yy, double vv, double* dy, double* dv) {
      *dy = vv;
      *dv = f(yy) - vv;
    };
    double k1y, k1v, k2y, k2v, k3y, k3v, k4y, k4v;
    rhs(y, v, &k1y, &k1v);
    rhs(y + 0.5 * step * k1y, v + 0.5 * step * k1v, &k2y, &k2v);
    rhs(y + 0.5 * step * k2y, v + 0.5 * step * k2v, &k3y, &k3v);
    rhs(y + step * k3y, v + step * k3v, &k4y, &k4v);
    y += step / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    v += step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  return y;
}

}  // namespace

TEST_CASE("run: eps = 0 completes with all-zero norms") {
  Grid g(1, 64, 32.0);
  SolverConfig cfg = base_config();
  cfg.eps = 0.0;
  cfg.t_max = 1.0;
  const auto res = dwl::run(g, cfg, ModulusSpec::power(1.0));
  CHECK(res.status == dwl::RunStatus::Completed);
  for (const auto& s : res.series.samples) {
    CHECK(s.l2 == 0.0);
    CHECK(s.l_inf == 0.0);
    CHECK(s.mass == 0.0);
  }
}

TEST_CASE("run: scheme is exact on the linear problem") {
  Grid g(1, 256, 32.0);
  SolverConfig cfg = base_config();
  cfg.linear_only = true;
  cfg.eps = 1.0;
  cfg.u1.amplitude = 0.4;
  cfg.t_max = 10.0;
  cfg.dt = 0.1;
  cfg.sample_times = {0.0, 10.0};
  const auto res = dwl::run(g, cfg, ModulusSpec::power(1.0));
  REQUIRE(res.status == dwl::RunStatus::Completed);

  dwl::SpectralTransform fft(g);
  const auto exact =
      dwl::linear_propagate(g, dwl::initial_state(g, fft, cfg), 10.0);
  double num = 0.0, den = 0.0;
  for (std::size_t f = 0; f < g.size(); ++f) {
    num += std::norm(res.final_state.u_hat[f] - exact.u_hat[f]);
    den += std::norm(exact.u_hat[f]);
  }
  CHECK(std::sqrt(num / den) < 1e-10);
}

TEST_CASE("run: ETD2 self-convergence ratio near 4") {
  Grid g(1, 256, 32.0);
  ModulusSpec mu = ModulusSpec::power(1.0);
  SolverConfig cfg = base_config();
  cfg.eps = 0.3;  // |u| stays below the cap, N(u) = u^4 smooth
  cfg.u1.amplitude = 0.3;
  cfg.t_max = 1.0;
  cfg.sample_times = {0.0, 1.0};

  const auto at = [&](double dt) {
    SolverConfig c = cfg;
    c.dt = dt;
    return dwl::run(g, c, mu).final_state.u_hat;
  };
  const auto a = at(0.1);
  const auto b = at(0.05);
  const auto c = at(0.025);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t f = 0; f < g.size(); ++f) {
    e1 += std::norm(a[f] - b[f]);
    e2 += std::norm(b[f] - c[f]);
  }
  const double ratio = std::sqrt(e1 / e2);
  CHECK(ratio >= 3.4);
  CHECK(ratio <= 4.6);
}

TEST_CASE("run: sample times off the dt lattice stay exact on the linear "
          "problem") {
  Grid g(1, 128, 32.0);
  SolverConfig cfg = base_config();
  cfg.linear_only = true;
  cfg.eps = 1.0;
  cfg.u1.amplitude = 0.4;
  cfg.t_max = 3.7;
  cfg.dt = 0.1;
  cfg.sample_times = {0.0, 0.07, 1.234, 2.9999, 3.7};  // forces h != dt
  const auto res = dwl::run(g, cfg, ModulusSpec::power(1.0));
  dwl::SpectralTransform fft(g);
  const auto exact =
      dwl::linear_propagate(g, dwl::initial_state(g, fft, cfg), 3.7);
  double num = 0.0, den = 0.0;
  for (std::size_t f = 0; f < g.size(); ++f) {
    num += std::norm(res.final_state.u_hat[f] - exact.u_hat[f]);
    den += std::norm(exact.u_hat[f]);
  }
  CHECK(std::sqrt(num / den) < 1e-10);
  CHECK(res.series.samples[1].t == 0.07);
}

TEST_CASE("run: ETD1 self-convergence ratio near 2") {
  Grid g(1, 256, 32.0);
  SolverConfig cfg = base_config();
  cfg.scheme = dwl::Scheme::ETD1;
  cfg.eps = 0.3;
  cfg.u1.amplitude = 0.3;
  cfg.t_max = 1.0;
  cfg.sample_times = {0.0, 1.0};
  const auto at = [&](double dt) {
    SolverConfig c = cfg;
    c.dt = dt;
    return dwl::run(g, c, ModulusSpec::power(1.0)).final_state.u_hat;
  };
  const auto a = at(0.1);
  const auto b = at(0.05);
  const auto c = at(0.025);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t f = 0; f < g.size(); ++f) {
    e1 += std::norm(a[f] - b[f]);
    e2 += std::norm(b[f] - c[f]);
  }
  const double ratio = std::sqrt(e1 / e2);
  CHECK(ratio >= 1.7);
  CHECK(ratio <= 2.4);
}

TEST_CASE("run: halving dt moves the final L2 norm by under 1%") {
  Grid g(1, 256, 32.0);
  SolverConfig cfg = base_config();
  cfg.eps = 0.2;
  cfg.t_max = 5.0;
  cfg.sample_times = {0.0, 5.0};
  const auto l2_at = [&](double dt) {
    SolverConfig c = cfg;
    c.dt = dt;
    return dwl::run(g, c, ModulusSpec::power(1.0))
        .series.samples.back()
        .l2;
  };
  const double coarse = l2_at(0.1);
  const double fine = l2_at(0.05);
  CHECK(std::abs(coarse - fine) <= 0.01 * fine);
}

TEST_CASE("run: spatially uniform data follow the y'' + y' = y^3 oracle") {
  Grid g(1, 64, 32.0);
  ModulusSpec mu = ModulusSpec::constant(1.0);
  const auto cube = [](double y) { return std::abs(y * y * y); };
  const double t_blow = oracle::blowup_event_time(cube, 1.0, 0.0, 1e6);
  REQUIRE(std::isfinite(t_blow));

  SolverConfig cfg = base_config();
  cfg.eps = 1.0;
  cfg.dt = 0.01;
  cfg.u0.family = dwl::DataComponent::Family::Constant;
  cfg.u0.amplitude = 1.0;
  cfg.t_max = 0.9 * t_blow;
  cfg.sample_times = {0.0, 0.3 * t_blow, 0.6 * t_blow, 0.9 * t_blow};
  const auto res = dwl::run(g, cfg, mu);
  REQUIRE(res.status == dwl::RunStatus::Completed);
  for (std::size_t i = 1; i < res.series.samples.size(); ++i) {
    const auto& s = res.series.samples[i];
    const double ref = ode_value(cube, 1.0, 0.0, s.t);
    CHECK(std::abs(s.l_inf - std::abs(ref)) <= 0.01 * std::abs(ref));
  }
}

TEST_CASE("run: small-eps Dini runs decay in L-infinity past t = 5") {
  Grid g(1, 512, 64.0);
  SolverConfig cfg = base_config();
  cfg.eps = 0.05;
  cfg.t_max = 30.0;
  cfg.sample_times = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
  const auto res = dwl::run(g, cfg, ModulusSpec::power(1.0));
  REQUIRE(res.status == dwl::RunStatus::Completed);
  double prev = dwl::kInf;
  for (const auto& s : res.series.samples) {
    if (s.t < 5.0) continue;
    CHECK(s.l_inf <= prev * (1.0 + 1e-12));
    prev = s.l_inf;
  }
}

TEST_CASE("run: Gaussian data with the pure-power benchmark blow up, "
          "detection time decreasing in eps") {
  Grid g(1, 256, 32.0);
  ModulusSpec mu = ModulusSpec::constant(1.0);
  SolverConfig cfg = base_config();
  cfg.u0.amplitude = 2.0;
  cfg.u1.family = dwl::DataComponent::Family::Gaussian;
  cfg.u1.amplitude = 2.0;
  cfg.t_max = 400.0;
  double prev = dwl::kInf;
  for (double eps : {0.8, 1.0, 1.4}) {
    SolverConfig c = cfg;
    c.eps = eps;
    const auto out = dwl::detect_lifespan(g, c, mu, /*refine=*/false);
    CHECK(out.blew_up);
    CHECK(out.t_coarse < prev);
    prev = out.t_coarse;
  }
}

TEST_CASE("picard: first iterate reproduces the linear evolution exactly") {
  Grid g(1, 128, 32.0);
  SolverConfig cfg = base_config();
  cfg.eps = 0.1;
  cfg.t_max = 2.0;
  cfg.sample_times.clear();
  for (int i = 0; i <= 20; ++i) cfg.sample_times.push_back(0.1 * i);
  const auto pr = dwl::picard_solve(g, cfg, ModulusSpec::power(1.0), 2);

  dwl::SpectralTransform fft(g);
  dwl::State s = dwl::initial_state(g, fft, cfg);
  double sup = dwl::l2_norm_spectral(g, s.u_hat);
  for (int k = 1; k <= 20; ++k) {
    s = dwl::linear_propagate(g, s, 0.1);
    sup = std::max(sup, dwl::l2_norm_spectral(g, s.u_hat));
  }
  CHECK(pr.y_diff[0] == doctest::Approx(sup).epsilon(1e-12));
}

TEST_CASE("picard: contraction ratios small and limit matches the stepper") {
  Grid g(1, 256, 32.0);
  ModulusSpec mu = ModulusSpec::power(1.0);
  SolverConfig cfg = base_config();
  cfg.eps = 0.05;
  cfg.t_max = 5.0;
  cfg.dt = 0.05;
  cfg.sample_times.clear();
  for (int i = 0; i <= 50; ++i) cfg.sample_times.push_back(0.1 * i);
  const auto pr = dwl::picard_solve(g, cfg, mu, 3);
  REQUIRE(pr.ratios.size() == 2);
  for (double r : pr.ratios) CHECK(r <= 0.5);

  const auto ref = dwl::run(g, cfg, mu);
  REQUIRE(ref.status == dwl::RunStatus::Completed);
  std::vector<dwl::Complex> diff = pr.last_iterate.back();
  for (std::size_t f = 0; f < diff.size(); ++f) {
    diff[f] -= ref.final_state.u_hat[f];
  }
  const double rel = dwl::l2_norm_spectral(g, diff) /
                     dwl::l2_norm_spectral(g, ref.final_state.u_hat);
  CHECK(rel <= 0.01);
}
