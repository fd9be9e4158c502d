#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dwl/experiments.hpp"
#include "dwl/lifespan.hpp"
#include "dwl/solver.hpp"

namespace py = pybind11;
using namespace dwl;

namespace {

py::dict series_dict(const NormSeries& s) {
  py::list t, l_alpha, l2, l_inf, h2dot, cum, mass;
  for (const auto& row : s.samples) {
    t.append(row.t);
    l_alpha.append(row.l_alpha);
    l2.append(row.l2);
    l_inf.append(row.l_inf);
    h2dot.append(row.h2dot);
    cum.append(row.cum_nonlinear_mass);
    mass.append(row.mass);
  }
  py::dict d;
  d["t"] = t;
  d["Lalpha"] = l_alpha;
  d["L2"] = l2;
  d["Linf"] = l_inf;
  d["H2dot"] = h2dot;
  d["cumNL"] = cum;
  d["M"] = mass;
  d["alpha"] = s.alpha;
  d["data_integral"] = s.data_integral;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "pseudospectral solver for the critically damped semilinear "
            "wave equation: modulus calculus, kernel symbols, simulation "
            "and lifespan experiments";

  py::register_exception<Error>(m, "DwlError");

  py::class_<ModulusSpec>(m, "Modulus")
      .def_static("power", &ModulusSpec::power, py::arg("kappa"),
                  py::arg("s0") = ModulusSpec::kDefaultCap)
      .def_static("logpower", &ModulusSpec::logpower, py::arg("gamma"),
                  py::arg("s0") = ModulusSpec::kDefaultCap)
      .def_static("constant", &ModulusSpec::constant, py::arg("m"))
      .def_static("iterlog", &ModulusSpec::iterlog, py::arg("gamma"),
                  py::arg("s0") = -1.0)
      .def_property_readonly("family", &ModulusSpec::family_name)
      .def_readonly("s0", &ModulusSpec::s0)
      .def("__call__",
           [](const ModulusSpec& s, double x) { return eval_mu(s, x); },
           py::arg("s"))
      .def("derivative",
           [](const ModulusSpec& s, double x) {
             return eval_mu_derivative(s, x);
           },
           py::arg("s"))
      .def("is_dini", [](const ModulusSpec& s) { return is_dini(s); })
      .def("dini_integral",
           [](const ModulusSpec& s, double eps0) {
             return dini_integral(s, eps0);
           },
           py::arg("eps0"))
      .def("derivative_ratio",
           [](const ModulusSpec& s, const std::vector<double>& grid) {
             return derivative_ratio(s, grid);
           },
           py::arg("s_grid"))
      .def("psi",
           [](const ModulusSpec& s, double R, double C, int n) {
             return psi(s, R, C, n);
           },
           py::arg("R"), py::arg("C") = 1.0, py::arg("n") = 1)
      .def("psi_inverse",
           [](const ModulusSpec& s, double y, double C, int n) {
             return psi_inverse(s, y, C, n);
           },
           py::arg("y"), py::arg("C") = 1.0, py::arg("n") = 1)
      .def("__repr__", [](const ModulusSpec& s) {
        return "Modulus(family=" + s.family_name() + ")";
      });

  m.def("kernel_symbol", &kernel_symbol, py::arg("t"), py::arg("xi"));
  m.def("kernel_dt_symbol", &kernel_dt_symbol, py::arg("t"), py::arg("xi"));
  m.def("gauss_symbol", &gauss_symbol, py::arg("t"), py::arg("xi"));

  m.def(
      "simulate",
      [](const std::string& config_text) {
        const ExperimentConfig cfg = parse_config_text(config_text);
        const Grid grid = cfg.make_grid();
        const RunResult res = run(grid, cfg.solver, cfg.mu);
        py::dict d = series_dict(res.series);
        d["status"] =
            res.status == RunStatus::Completed ? "Completed" : "BlownUp";
        if (res.status == RunStatus::BlownUp) d["t_detect"] = res.t_detect;
        return d;
      },
      py::arg("config_text"),
      "Run one simulation from config text (same `key = value` format as "
      "the CLI) and return the diagnostics series.");

  m.def(
      "detect_lifespan",
      [](const std::string& config_text) {
        const ExperimentConfig cfg = parse_config_text(config_text);
        const Grid grid = cfg.make_grid();
        const DetectOutcome out = detect_lifespan(grid, cfg.solver, cfg.mu);
        py::dict d;
        d["blew_up"] = out.blew_up;
        if (out.blew_up) {
          d["T"] = out.T;
          d["t_coarse"] = out.t_coarse;
        }
        return d;
      },
      py::arg("config_text"));

  m.def(
      "run_experiment_json",
      [](const std::string& kind, const std::string& config_text,
         const std::string& out_dir, int threads) {
        const ExperimentConfig cfg = parse_config_text(config_text);
        const DispatchResult res =
            dispatch(cfg, experiment_from_name(kind), out_dir, threads);
        py::dict d;
        d["exit_code"] = res.exit_code;
        d["summary_json"] = res.summary.dump();
        return d;
      },
      py::arg("kind"), py::arg("config_text"), py::arg("out_dir"),
      py::arg("threads") = 1);
}
