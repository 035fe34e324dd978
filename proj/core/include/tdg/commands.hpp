// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "tdg/config.hpp"
#include "tdg/stepper.hpp"

namespace tdg {

/// Positions of the two outgoing thermal fronts over time, and their fitted
/// speeds: the slower front tracks the temperature maximum, the faster one
/// the rightmost point above `threshold` times the running maximum.
struct FrontSeries {
  std::vector<double> t, slow_pos, fast_pos;
  double slow_speed = 0.0;
  double fast_speed = 0.0;
};

FrontSeries extract_fronts(const Trajectory& traj, const Mesh& mesh, double threshold = 0.1,
                           double fit_start = 0.1, double fit_end_fast = 0.3,
                           double fit_end_slow = 0.8);

/// Largest relative nodal change of a scalar grid field under a quarter-turn
/// rotation of the square mesh.
double rotation_defect(const Mesh& mesh, const std::vector<double>& nodal);

int cmd_manufactured(const RunConfig& cfg, const std::string& out_dir);
int cmd_laser(const RunConfig& cfg, const std::string& out_dir);
int cmd_pulse2d(const RunConfig& cfg, const std::string& out_dir);
int cmd_convergence(const RunConfig& cfg, const std::string& out_dir);

/// Dispatch on cfg.experiment; returns a process exit status.
int run_command(const RunConfig& cfg, const std::string& out_dir);

}  // namespace tdg
