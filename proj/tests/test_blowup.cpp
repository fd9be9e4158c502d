#include <cmath>

#include "doctest.h"
#include "dwl/lifespan.hpp"
#include "oracles.hpp"

using dwl::Grid;
using dwl::ModulusSpec;
using dwl::SolverConfig;

namespace {

SolverConfig sweep_config() {
  SolverConfig cfg;
  cfg.dt = 0.05;
  cfg.t_max = 3000.0;
  cfg.u0.amplitude = 0.6;
  cfg.u0.width = 1.0;
  cfg.u1.family = dwl::DataComponent::Family::Gaussian;
  cfg.u1.amplitude = 0.6;
  cfg.u1.width = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("detect_lifespan: linear problem never blows up") {
  Grid g(1, 256, 32.0);
  SolverConfig cfg = sweep_config();
  cfg.linear_only = true;
  cfg.eps = 1.0;
  cfg.t_max = 50.0;
  const auto out = dwl::detect_lifespan(g, cfg, ModulusSpec::constant(1.0));
  CHECK_FALSE(out.blew_up);
}

TEST_CASE("detect_lifespan: uniform data match the RK4 event oracle to 2%") {
  Grid g(1, 64, 32.0);
  SolverConfig cfg;
  cfg.dt = 0.01;
  cfg.t_max = 100.0;
  cfg.eps = 1.0;
  cfg.u0.family = dwl::DataComponent::Family::Constant;
  cfg.u0.amplitude = 1.0;
  const auto out = dwl::detect_lifespan(g, cfg, ModulusSpec::constant(1.0));
  REQUIRE(out.blew_up);
  const double t_ode = oracle::blowup_event_time(
      [](double y) { return std::abs(y * y * y); }, 1.0, 0.0, 1e6);
  CHECK(std::abs(out.T - t_ode) <= 0.02 * t_ode);
}

TEST_CASE("lifespan_sweep: synthetic exact law recovers slope and R2 = 1") {
  // rows T = exp(2 eps^{-2}) under the constant modulus: Psi(T) = log T
  const auto mu = ModulusSpec::constant(1.0);
  std::vector<dwl::LifespanRow> rows;
  for (double eps : {1.0, 0.8, 0.6, 0.5}) {
    dwl::LifespanRow r;
    r.eps = eps;
    r.T = std::exp(2.0 * std::pow(eps, -2.0));
    r.psi_T = dwl::psi(mu, r.T, 1.0, 1);
    rows.push_back(r);
  }
  const auto fit = dwl::fit_lifespan_law(rows, 1);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("lifespan_sweep: incomplete when the horizon cuts a member") {
  Grid g(1, 256, 32.0);
  SolverConfig cfg = sweep_config();
  cfg.t_max = 3.0;  // eps = 0.5 needs ~48 time units
  CHECK_THROWS_AS(dwl::lifespan_sweep(g, cfg, ModulusSpec::constant(1.0),
                                      {1.3, 1.1, 0.9, 0.5}),
                  dwl::IncompleteSweep);
  CHECK_THROWS_AS(dwl::lifespan_sweep(g, cfg, ModulusSpec::constant(1.0),
                                      {1.3, 1.1, 0.9}),
                  dwl::InvalidArg);
}

TEST_CASE("lifespan_sweep: monotone rows, positive slope, threads agree") {
  Grid g(1, 512, 64.0);
  const auto mu = ModulusSpec::constant(1.0);
  SolverConfig cfg = sweep_config();
  const std::vector<double> eps{1.3, 1.1, 0.9, 0.7};
  const auto t1 = dwl::lifespan_sweep(g, cfg, mu, eps, 1);
  CHECK(t1.monotone);
  CHECK(t1.fit.slope > 0.0);
  CHECK(t1.fit.r2 > 0.9);
  const auto t2 = dwl::lifespan_sweep(g, cfg, mu, eps, 2);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    CHECK(t2.rows[i].T == t1.rows[i].T);  // bitwise: rows are independent
  }
}

TEST_CASE("lifespan_sweep: critical log modulus in two dimensions") {
  // Psi(T) = log log T here, so the law reads Psi(T_eps) ~ c/eps.
  Grid g(2, 128, 32.0);
  const auto mu = ModulusSpec::logpower(1.0);
  SolverConfig cfg;
  cfg.dt = 0.05;
  cfg.t_max = 500.0;
  cfg.u0.amplitude = 0.8;
  cfg.u1.family = dwl::DataComponent::Family::Gaussian;
  cfg.u1.amplitude = 0.8;
  const auto table = dwl::lifespan_sweep(g, cfg, mu, {1.4, 1.2, 1.0, 0.8});
  CHECK(table.monotone);
  CHECK(table.fit.slope > 0.0);
  CHECK(table.fit.r2 >= 0.9);
}

TEST_CASE("cutoff eta: endpoint values, monotonicity, support") {
  const dwl::CutoffSpec quintic;
  CHECK(dwl::eta(quintic, 0.5) == 1.0);
  CHECK(dwl::eta(quintic, 1.0) == 0.0);
  CHECK(dwl::eta(quintic, 0.0) == 1.0);
  CHECK(dwl::eta(quintic, 2.0) == 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = dwl::eta(quintic, 0.5 + 0.005 * i);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  CHECK(dwl::eta_star(quintic, 0.49) == 0.0);
  CHECK(dwl::eta_star(quintic, 0.5) == 1.0);

  const dwl::CutoffSpec cubic{3};
  CHECK(dwl::eta(cubic, 0.5) == 1.0);
  CHECK(dwl::eta(cubic, 1.0) == 0.0);
  CHECK_THROWS_AS(dwl::eta(dwl::CutoffSpec{4}, 0.7), dwl::InvalidArg);
}

TEST_CASE("test_functional: zero trajectory, bounds, growth in R") {
  Grid g(1, 512, 64.0);
  dwl::SpectralTransform fft(g);
  SolverConfig cfg = sweep_config();
  cfg.eps = 0.25;
  cfg.t_max = 16.0;
  cfg.keep_snapshots = true;
  cfg.sample_times.clear();
  for (int i = 0; i <= 64; ++i) cfg.sample_times.push_back(0.25 * i);
  const dwl::CutoffSpec cut;

  SUBCASE("u = 0 gives vanishing functionals") {
    SolverConfig zero = cfg;
    zero.eps = 0.0;
    const auto res = dwl::run(g, zero, ModulusSpec::constant(1.0));
    const auto f =
        dwl::test_functional(g, fft, res.snapshots, zero,
                             ModulusSpec::constant(1.0), 8.0, cut);
    CHECK(f.I_R == 0.0);
    CHECK(f.Y_R == 0.0);
    CHECK(f.data_side > 0.0);  // data side ignores eps
  }

  SUBCASE("psi_R(0,.) <= 1 bounds the data side; Y grows with R") {
    const auto mu = ModulusSpec::constant(1.0);
    const auto res = dwl::run(g, cfg, mu);
    REQUIRE(res.status == dwl::RunStatus::Completed);
    double prev_y = -1.0;
    for (double R : {4.0, 8.0, 16.0}) {
      const auto f = dwl::test_functional(g, fft, res.snapshots, cfg, mu, R, cut);
      CHECK(f.data_side <= f.data_integral * (1.0 + 1e-12));
      CHECK(f.I_R >= 0.0);
      CHECK(f.Y_R >= prev_y);
      prev_y = f.Y_R;
    }
    CHECK_THROWS_AS(
        dwl::test_functional(g, fft, res.snapshots, cfg, mu, 32.0, cut),
        dwl::TrajectoryTooShort);
  }
}
