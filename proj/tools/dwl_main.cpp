#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dwl/experiments.hpp"

namespace {

int thread_count(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("DWL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dwl - pseudospectral experiments for the critically damped "
               "semilinear wave equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  int threads = 0;

  const char* names[] = {"dini-check",    "simulate",    "decay-sweep",
                         "profile-check", "lifespan-sweep", "picard-demo"};
  const char* descr[] = {
      "classify the configured modulus and report its calculus",
      "run one simulation and emit the diagnostics series",
      "run one simulation and fit log-log decay rates",
      "run one simulation and measure the Gauss-profile deviation",
      "sweep eps, detect lifespans, fit the lifespan law",
      "run the fixed-point iteration and report contraction ratios"};
  for (int i = 0; i < 6; ++i) {
    auto* sub = app.add_subcommand(names[i], descr[i]);
    sub->add_option("--config", config_path, "experiment config file")
        ->required();
    sub->add_option("--out", out_dir, "output directory (default: out)");
    sub->add_option("--threads", threads,
                    "worker threads for sweeps (env DWL_THREADS)");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    const dwl::ExperimentConfig cfg = dwl::parse_config(config_path);
    const dwl::DispatchResult res = dwl::dispatch(
        cfg, dwl::experiment_from_name(sub), out_dir, thread_count(threads));
    std::cout << res.summary.dump(2) << "\n";
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
