// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdg/assembly.hpp"
#include "tdg/diagnostics.hpp"
#include "tdg/mesh.hpp"

namespace tdg {

/// 17-significant-digit decimal formatting (round-trip exact).
std::string format_g17(double v);

/// Rows of preformatted cells; written with a hash header line followed by
/// the column-name line.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
};

void write_table_csv(const std::string& path, const Table& table, uint64_t config_hash);

void write_energy_csv(const std::string& path, const std::vector<EnergyReport>& rows,
                      uint64_t config_hash);

/// Snapshot of all nodal fields at one instant.
void write_state_csv(const std::string& path, const StateVector& state, uint64_t config_hash);

/// Legacy-VTK ASCII structured grid with one scalar point field; the mesh
/// must carry structured metadata.
void write_vtk_structured_scalar(const std::string& path, const Mesh& mesh,
                                 const std::vector<double>& nodal, const std::string& field_name,
                                 uint64_t config_hash);

}  // namespace tdg
