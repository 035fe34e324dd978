// SPDX-License-Identifier: Apache-2.0
#include "tdg/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "tdg/config.hpp"

namespace tdg {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  return os;
}

void write_header(std::ofstream& os, const std::vector<std::string>& cols, uint64_t hash) {
  os << "# config_hash=" << hash_hex(hash) << "\n";
  for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
}

}  // namespace

void write_table_csv(const std::string& path, const Table& table, uint64_t config_hash) {
  std::ofstream os = open_out(path);
  write_header(os, table.columns, config_hash);
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

void write_energy_csv(const std::string& path, const std::vector<EnergyReport>& rows,
                      uint64_t config_hash) {
  Table t;
  t.columns = {"t", "h1_energy", "l2_norm", "mech_energy", "jump_dissipation"};
  for (const auto& r : rows)
    t.add_row({format_g17(r.t), format_g17(r.h1_energy), format_g17(r.l2_norm),
               format_g17(r.mech_energy), format_g17(r.jump_dissipation)});
  write_table_csv(path, t, config_hash);
}

void write_state_csv(const std::string& path, const StateVector& state, uint64_t config_hash) {
  const Mesh& mesh = *state.mesh;
  Table t;
  if (mesh.dim == 1) {
    t.columns = {"x", "u", "v", "alpha", "theta"};
    for (int n = 0; n < mesh.n_nodes(); ++n)
      t.add_row({format_g17(mesh.coord(n, 0)), format_g17(state.u[n]), format_g17(state.v[n]),
                 format_g17(state.alpha[n]), format_g17(state.theta[n])});
  } else {
    t.columns = {"x", "y", "u_x", "u_y", "v_x", "v_y", "alpha", "theta"};
    for (int n = 0; n < mesh.n_nodes(); ++n)
      t.add_row({format_g17(mesh.coord(n, 0)), format_g17(mesh.coord(n, 1)),
                 format_g17(state.u[2 * n]), format_g17(state.u[2 * n + 1]),
                 format_g17(state.v[2 * n]), format_g17(state.v[2 * n + 1]),
                 format_g17(state.alpha[n]), format_g17(state.theta[n])});
  }
  write_table_csv(path, t, config_hash);
}

void write_vtk_structured_scalar(const std::string& path, const Mesh& mesh,
                                 const std::vector<double>& nodal, const std::string& field_name,
                                 uint64_t config_hash) {
  if (mesh.dim != 2) throw std::invalid_argument("write_vtk_structured_scalar: 2D meshes only");
  if (static_cast<int>(nodal.size()) != mesh.n_nodes())
    throw std::invalid_argument("write_vtk_structured_scalar: field size mismatch");
  std::ofstream os = open_out(path);
  os << "# vtk DataFile Version 3.0\n";
  os << field_name << " config_hash=" << hash_hex(config_hash) << "\n";
  os << "ASCII\n";
  os << "DATASET STRUCTURED_GRID\n";
  os << "DIMENSIONS " << mesh.nx + 1 << " " << mesh.ny + 1 << " 1\n";
  os << "POINTS " << mesh.n_nodes() << " double\n";
  for (int n = 0; n < mesh.n_nodes(); ++n)
    os << format_g17(mesh.coord(n, 0)) << " " << format_g17(mesh.coord(n, 1)) << " 0\n";
  os << "POINT_DATA " << mesh.n_nodes() << "\n";
  os << "SCALARS " << field_name << " double 1\n";
  os << "LOOKUP_TABLE default\n";
  for (int n = 0; n < mesh.n_nodes(); ++n) os << format_g17(nodal[n]) << "\n";
}

}  // namespace tdg
