// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: one experiment per invocation.
//   tdg <manufactured|laser|pulse2d|convergence> --config <path> --out <dir> [--paper-scale]

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tdg/commands.hpp"
#include "tdg/config.hpp"

namespace {

int run_subcommand(const std::string& experiment, const std::string& config_path,
                   const std::string& out_dir, bool paper_scale) {
  tdg::RunConfig cfg = tdg::RunConfig::parse_file(config_path, paper_scale);
  if (cfg.experiment != experiment)
    throw tdg::ConfigError("config file declares experiment '" + cfg.experiment +
                           "' but the '" + experiment + "' subcommand was invoked");
  return tdg::run_command(cfg, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time discontinuous Galerkin solver for coupled thermoelastic waves"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* cmd;
    std::string config;
    std::string out = "out";
    bool paper_scale = false;
  };
  Sub subs[4];
  const char* names[4] = {"manufactured", "laser", "pulse2d", "convergence"};
  const char* descr[4] = {"convergence study against the closed-form solution",
                          "pulsed heating of a clamped rod",
                          "initial temperature pulse in a square plate",
                          "spatial and temporal refinement ladders"};
  for (int i = 0; i < 4; ++i) {
    subs[i].cmd = app.add_subcommand(names[i], descr[i]);
    subs[i].cmd->add_option("--config", subs[i].config, "configuration file")->required();
    subs[i].cmd->add_option("--out", subs[i].out, "output directory");
    subs[i].cmd->add_flag("--paper-scale", subs[i].paper_scale,
                          "run the full-size meshes instead of the desk-scale defaults");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (int i = 0; i < 4; ++i)
      if (subs[i].cmd->parsed())
        return run_subcommand(names[i], subs[i].config, subs[i].out, subs[i].paper_scale);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
