// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdg/experiments.hpp"
#include "tdg/linalg.hpp"
#include "tdg/stepper.hpp"

namespace tdg {

/// Run description parsed from a flat key = value file with sections.
/// Unknown sections or keys are rejected; everything is validated before any
/// computation starts. The exact key set is documented in the README.
struct RunConfig {
  std::string experiment;  ///< manufactured | laser | pulse2d | convergence
  Scheme scheme = Scheme::LieTrotter;
  SolverOptions solver;
  bool paper_scale = false;

  ManufacturedCase manufactured;
  std::vector<double> spatial_h = {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
  std::vector<double> temporal_dt = {0.25, 0.125, 0.0625, 0.03125};
  int temporal_elements = 256;

  LaserCase laser;
  Pulse2DCase pulse2d;

  std::vector<double> snapshot_times;  ///< pulse2d defaults to {0, 0.2, 0.3, 0.4}
  int field_stride = 4;
  bool energy_series = true;

  uint64_t hash = 0;  ///< stable digest of the configuration text

  static RunConfig parse_file(const std::string& path, bool paper_scale = false);
  static RunConfig parse_text(const std::string& text, bool paper_scale = false);
  void validate() const;
};

uint64_t fnv1a(const std::string& text);
std::string hash_hex(uint64_t h);

}  // namespace tdg
