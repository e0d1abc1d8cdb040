// qmhd: run, sweep and verify the regularized quantum MHD solver.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "qmhd/io/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral solver for compressible quantum MHD with density-dependent viscosity"};
  app.require_subcommand(1);

  std::string output_dir;
  long seed = -1;
  int cadence = 0;
  app.add_option("--output-dir", output_dir, "Output directory (overrides the config)");
  app.add_option("--seed", seed, "Initial-condition seed (overrides the config)")->check(CLI::NonNegativeNumber);
  app.add_option("--cadence", cadence, "Diagnostics cadence in steps (overrides the config)")
      ->check(CLI::PositiveNumber);

  std::string config_path, resume_path;
  CLI::App* run = app.add_subcommand("run", "Run one simulation from an INI config");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--resume", resume_path, "Checkpoint to resume from");

  std::string sweep_path;
  int jobs = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("--config", sweep_path, "Sweep config file")->required();
  sweep->add_option("--jobs", jobs, "Worker threads (0: from the config)")->check(CLI::NonNegativeNumber);

  bool fast = false;
  CLI::App* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_flag("--fast", fast, "Smaller grids and shorter horizons");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qmhd::kExitSuccess : qmhd::kExitConfigError;
  }

  if (*run) return qmhd::run_command(config_path, resume_path, output_dir, seed, cadence, std::cout, std::cerr);
  if (*sweep) return qmhd::sweep_command(sweep_path, jobs, output_dir, seed, cadence, std::cout, std::cerr);
  return qmhd::verify_command(fast, output_dir, seed, std::cout, std::cerr);
}
