#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "glauert/runner.hpp"

namespace {

int log_level() {
  const char* env = std::getenv("GLAUERT_LOG");
  if (!env) return 1;  // warn
  const std::string s(env);
  if (s == "debug") return 3;
  if (s == "info") return 2;
  if (s == "error") return 0;
  return 1;
}

void info(const std::string& msg) {
  if (log_level() >= 2) std::fprintf(stderr, "info: %s\n", msg.c_str());
}

glauert::CaseConfig load_config(const std::string& path,
                                const std::string& out_dir, int threads,
                                const std::string& formulation, double eta,
                                bool eta_set) {
  glauert::CaseConfig config = glauert::CaseConfig::from_file(path);
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (threads > 0) config.threads = threads;
  if (!formulation.empty()) {
    if (formulation == "stable")
      config.formulation = glauert::Formulation::Stable;
    else if (formulation == "unstable")
      config.formulation = glauert::Formulation::Unstable;
    else
      throw glauert::ConfigError("--formulation must be stable or unstable");
  }
  if (eta_set) config.eta = glauert::Complex(eta, 0.0);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FEM-BEM solver for time-harmonic scattering in subsonic flow"};
  app.require_subcommand(1);

  std::string config_path, out_dir, formulation;
  int threads = 0;
  double eta = 1.0;
  bool eta_set = false;
  double fmin = 0.0, fmax = 0.0;
  int steps = 0;
  std::string eta_list;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "case file (TOML)")->required();
    cmd->add_option("--out-dir", out_dir, "output directory override");
    cmd->add_option("--threads", threads, "worker thread count");
    cmd->add_option("--formulation", formulation, "stable|unstable");
    cmd->add_option("--eta", eta, "coupling parameter (real part)")
        ->each([&](const std::string&) { eta_set = true; });
  };

  CLI::App* run = app.add_subcommand("run", "single solve");
  add_common(run);

  CLI::App* sweep = app.add_subcommand("sweep", "frequency sweep");
  add_common(sweep);
  sweep->add_option("--fmin", fmin, "sweep start (Hz)");
  sweep->add_option("--fmax", fmax, "sweep end (Hz)");
  sweep->add_option("--steps", steps, "number of frequencies");
  sweep->add_option("--eta-sweep", eta_list,
                    "comma-separated eta values (stable formulation only)");

  CLI::App* validate = app.add_subcommand("validate", "check a case file");
  validate->add_option("--config", config_path, "case file (TOML)")->required();

  CLI::App* mesh_info = app.add_subcommand("mesh-info", "mesh summary as JSON");
  add_common(mesh_info);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      glauert::CaseConfig::from_file(config_path);
      std::printf("ok\n");
      return 0;
    }
    if (mesh_info->parsed()) {
      const glauert::CaseConfig config =
          load_config(config_path, out_dir, threads, formulation, eta, eta_set);
      const glauert::CaseSetup setup = glauert::prepare_case(config);
      std::printf("%s\n", glauert::mesh_summary_json(*setup.mesh).c_str());
      return 0;
    }
    if (run->parsed()) {
      const glauert::CaseConfig config =
          load_config(config_path, out_dir, threads, formulation, eta, eta_set);
      const glauert::RunOutcome outcome = glauert::run_case(config);
      for (const auto& path : outcome.written) info("wrote " + path);
      if (outcome.exit_code == 2)
        std::fprintf(stderr,
                     "solver did not reach tolerance: final residual %.3e after "
                     "%d iterations\n",
                     outcome.report.final_residual, outcome.report.iterations);
      return outcome.exit_code;
    }
    if (sweep->parsed()) {
      glauert::CaseConfig config =
          load_config(config_path, out_dir, threads, formulation, eta, eta_set);
      const double lo = steps > 0 ? fmin : config.sweep_fmin;
      const double hi = steps > 0 ? fmax : config.sweep_fmax;
      const int n = steps > 0 ? steps : config.sweep_steps;
      if (!eta_list.empty()) {
        std::vector<double> etas;
        std::stringstream ss(eta_list);
        std::string item;
        while (std::getline(ss, item, ',')) etas.push_back(std::stod(item));
        glauert::run_eta_sweep(config, etas, lo, hi, n);
        info("wrote " + config.out_dir + "/eta_sweep.csv");
      } else {
        glauert::run_sweep(config, lo, hi, n);
        info("wrote " + config.out_dir + "/sweep.csv");
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
