#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "stap/cli/commands.hpp"
#include "stap/cli/presets.hpp"

namespace {

using namespace stap::cli;

struct CommonOptions {
  std::string config_path;
  std::string preset;
  std::string out;
  int steps = 0;
};

void add_common(CLI::App* cmd, CommonOptions& options) {
  cmd->add_option("--config", options.config_path, "JSON config file");
  cmd->add_option("--preset", options.preset, "named figure preset");
  cmd->add_option("--out", options.out, "output CSV path");
  cmd->add_option("--steps", options.steps, "RK4 step count override");
}

json resolve_config(const CommonOptions& options, PresetKind expected) {
  if (options.config_path.empty() == options.preset.empty())
    throw std::invalid_argument("exactly one of --config or --preset is required");
  if (!options.config_path.empty()) return load_json_file(options.config_path);
  const Preset& preset = find_preset(options.preset);
  if (preset.kind != expected && !(expected == PresetKind::PULSES && preset.kind == PresetKind::SIMULATE))
    throw std::invalid_argument("preset \"" + preset.name + "\" is not usable with this command");
  return preset.config;
}

int default_workers() {
  if (const char* env = std::getenv("STAP_SIM_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant-based shortcut simulator for coupled-cavity atom chains"};
  app.require_subcommand(1);

  CommonOptions sim_opts, sweep_opts, pulse_opts;
  int workers = default_workers();
  bool perturb_hcf = false;

  CLI::App* simulate = app.add_subcommand("simulate", "run one trajectory, write populations CSV");
  add_common(simulate, sim_opts);

  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid, write observables CSV");
  add_common(sweep, sweep_opts);
  sweep->add_option("--workers", workers, "worker thread count (default STAP_SIM_WORKERS or 1)");

  CLI::App* verify = app.add_subcommand("verify", "run the analytic self-check suite");
  verify
      ->add_flag("--perturb-hcf", perturb_hcf,
                 "flip one cavity-fiber coupling sign; block consistency must then fail")
      ->group("");

  CLI::App* pulses = app.add_subcommand("pulses", "write the drive pair (t, omega1, omega2) CSV");
  add_common(pulses, pulse_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      RunConfig config = parse_run_config(resolve_config(sim_opts, PresetKind::SIMULATE));
      if (!sim_opts.out.empty()) config.output = sim_opts.out;
      if (sim_opts.steps > 0) config.steps = sim_opts.steps;
      return cmd_simulate(config, std::cout);
    }
    if (sweep->parsed()) {
      SweepConfig config = parse_sweep_config(resolve_config(sweep_opts, PresetKind::SWEEP));
      if (!sweep_opts.out.empty()) config.output = sweep_opts.out;
      if (sweep_opts.steps > 0) config.steps = sweep_opts.steps;
      return cmd_sweep(config, workers, std::cout);
    }
    if (pulses->parsed()) {
      RunConfig config = parse_run_config(resolve_config(pulse_opts, PresetKind::PULSES));
      if (!pulse_opts.out.empty()) config.output = pulse_opts.out;
      return cmd_pulses(config, std::cout);
    }
    if (verify->parsed()) return cmd_verify(perturb_hcf, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
