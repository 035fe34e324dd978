// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tdg/model.hpp"

namespace tdg {

/// Gauss quadrature on the reference element ([-1,1] or [-1,1]^2).
struct QuadratureRule {
  int dim = 1;
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;

  static QuadratureRule gauss_interval(int npts);
  static QuadratureRule gauss_quad(int npts_per_dir);
};

/// Two-point Gauss rule on the reference slab interval [0,1]; exact for
/// cubics, which covers every temporal integrand of the linear-in-time slabs.
struct TimeQuadrature {
  std::array<double, 2> tau;
  std::array<double, 2> w;
  TimeQuadrature();
};

/// Structured mesh of 2-node segments (1D) or 4-node bilinear quads (2D),
/// with per-node boundary partitions {gamma_u, gamma_t} and {gamma_theta, gamma_q}.
struct Mesh {
  int dim = 1;
  int nodes_per_elem = 2;
  std::vector<double> coords;  ///< node-major, dim-interleaved
  std::vector<int> conn;       ///< elem-major, nodes_per_elem entries per element
  std::vector<uint8_t> on_boundary;
  std::vector<uint8_t> gamma_u, gamma_t, gamma_theta, gamma_q;

  // Structured metadata (elements per direction); ny = 0 in 1D.
  int nx = 0, ny = 0;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

  int n_nodes() const { return static_cast<int>(coords.size()) / dim; }
  int n_elems() const { return static_cast<int>(conn.size()) / nodes_per_elem; }
  double coord(int node, int comp) const { return coords[static_cast<size_t>(node) * dim + comp]; }
  const int* elem(int e) const { return conn.data() + static_cast<size_t>(e) * nodes_per_elem; }

  /// Uniform 1D mesh of [0, length]; end nodes tagged boundary.
  static Mesh interval(double length, int n_elems);
  /// Tensor-product grid of nx*ny bilinear quads; outer nodes tagged boundary.
  static Mesh quad(double x0, double x1, double y0, double y1, int nx, int ny);

  /// Re-partitions the boundary: nodes where in_gamma_u(x,y) holds go to
  /// gamma_u (else gamma_t), and likewise for the thermal pair.
  void tag_boundary(const std::function<bool(double, double)>& in_gamma_u,
                    const std::function<bool(double, double)>& in_gamma_theta);

  /// Checks element orientation and the boundary partition invariants.
  void validate() const;

  /// Plain-text node/element listing for debugging.
  std::string to_text() const;
};

/// Shape function values and physical gradients at one reference point.
struct ShapeEval {
  int n = 2;
  std::array<double, 4> value{};
  std::array<std::array<double, 2>, 4> grad{};  ///< physical-coordinate gradients
  double jac_det = 0.0;
};

ShapeEval shape_eval(const Mesh& mesh, int elem, double r, double s = 0.0);

/// Fields carried by a slab system.
enum class Field : int { Displacement = 0, Velocity, ThermalDisplacement, Temperature };

/// Degree-of-freedom map for one space-time slab with two temporal nodes per
/// field (values at t_n^+ and t_{n+1}^-). Displacement and temperature carry
/// Dirichlet masks; velocity and thermal displacement never do.
struct SlabLayout {
  const Mesh* mesh = nullptr;
  double t_start = 0.0;
  double t_end = 1.0;

  struct Entry {
    Field field;
    int comps;
    int offset;  ///< within the per-node block
  };
  std::vector<Entry> fields;
  int per_node = 0;
  std::vector<uint8_t> dirichlet;  ///< per global dof

  double dt() const { return t_end - t_start; }
  int n_dofs() const { return mesh->n_nodes() * per_node; }
  int index(int field_pos, int comp, int node, int tnode) const {
    return node * per_node + fields[field_pos].offset + comp * 2 + tnode;
  }
  int n_fields() const { return static_cast<int>(fields.size()); }
  /// Position of a field in this layout, or -1.
  int find(Field f) const;

  static SlabLayout mechanical(const Mesh& mesh, double t0, double t1);
  static SlabLayout thermal(const Mesh& mesh, double t0, double t1);
  static SlabLayout monolithic(const Mesh& mesh, double t0, double t1);
};

}  // namespace tdg
