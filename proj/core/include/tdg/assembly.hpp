// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tdg/linalg.hpp"
#include "tdg/mesh.hpp"
#include "tdg/model.hpp"

namespace tdg {

/// Nodal trace of the four fields at one time instant (the left limit carried
/// between slabs). u and v are node-major component-interleaved.
struct StateVector {
  const Mesh* mesh = nullptr;
  double time = 0.0;
  std::vector<double> u, v, alpha, theta;

  static StateVector zeros(const Mesh& mesh, double time = 0.0);
  void require_finite() const;
};

/// Space-time slab solution, linear in time: traces at t_n^+ and t_{n+1}^-.
/// Fields a phase does not solve for carry their frozen in-slab values.
struct SlabSolution {
  double t_start = 0.0;
  double t_end = 1.0;
  StateVector start_plus;
  StateVector end_minus;

  StateVector eval(double t) const;
};

/// Prescribed sources and boundary data over a slab. Empty functions mean zero.
/// boundary_heat_influx is the flux-form datum paired with the temperature
/// test function on gamma_q (positive = heat flowing in).
struct LoadSpec {
  std::function<void(double x, double y, double t, double* out)> body_force;  ///< d components
  std::function<double(double x, double y, double t)> heat_source;
  std::function<void(double x, double y, double t, double* out)> traction;  ///< d components
  std::function<double(double x, double y, double t)> boundary_heat_influx;
  std::function<void(double x, double y, double t, double* out)> dirichlet_u;  ///< d components
  /// Time rate of dirichlet_u; constrains the velocity trace on gamma_u.
  std::function<void(double x, double y, double t, double* out)> dirichlet_u_rate;
  std::function<double(double x, double y, double t)> dirichlet_theta;
};

// Temporal matrices of the linear-in-time slab basis: trial index a, test
// index b. mass = integral psi_a psi_b, rate = integral d/dt(psi_a) psi_b,
// start_jump = trace pairing at t_n^+.
double temporal_mass(int a, int b, double dt);
double temporal_rate(int a, int b);
double temporal_start_jump(int a, int b);

/// Isentropic phase: unknowns (u, v), adiabatic stiffness, frozen thermal
/// source built from the incoming trace.
SparseMatrix assemble_mechanical_matrix(const SlabLayout& layout, const MaterialParams& p);
std::vector<double> assemble_mechanical_rhs(const SlabLayout& layout, const MaterialParams& p,
                                            const StateVector& prev, const LoadSpec& loads);
LinearSystem assemble_mechanical_slab(const SlabLayout& layout, const MaterialParams& p,
                                      const StateVector& prev, const LoadSpec& loads);

/// Conduction phase at frozen configuration u_frozen (node-major, d comps per
/// node): unknowns (alpha, theta), entropy-jump strain correction on the rhs.
SparseMatrix assemble_thermal_matrix(const SlabLayout& layout, const MaterialParams& p);
std::vector<double> assemble_thermal_rhs(const SlabLayout& layout, const MaterialParams& p,
                                         const StateVector& prev,
                                         std::span<const double> u_frozen, const LoadSpec& loads);
LinearSystem assemble_thermal_slab(const SlabLayout& layout, const MaterialParams& p,
                                   const StateVector& prev, std::span<const double> u_frozen,
                                   const LoadSpec& loads);

/// All four fields coupled in one system; physical stiffness and the entropy
/// form of the temperature equation so jump bookkeeping matches the split.
SparseMatrix assemble_monolithic_matrix(const SlabLayout& layout, const MaterialParams& p);
std::vector<double> assemble_monolithic_rhs(const SlabLayout& layout, const MaterialParams& p,
                                            const StateVector& prev, const LoadSpec& loads);
LinearSystem assemble_monolithic_slab(const SlabLayout& layout, const MaterialParams& p,
                                      const StateVector& prev, const LoadSpec& loads);

/// Values of every constrained dof (full-length vector), from the Dirichlet
/// callables evaluated at the two temporal nodes.
std::vector<double> dirichlet_values(const SlabLayout& layout, const LoadSpec& loads);

/// Overwrites the value of one constrained nodal dof pair (both temporal
/// nodes); throws std::invalid_argument when the node is not tagged.
void set_dirichlet_value(std::vector<double>& values, const SlabLayout& layout, Field f, int node,
                         int comp, double v_start, double v_end);

/// Row/column elimination with right-hand-side lift; the result records the
/// reduction so solutions can be expanded back to full coefficient vectors.
LinearSystem apply_dirichlet(const LinearSystem& sys, const SlabLayout& layout,
                             std::span<const double> full_values);
LinearSystem apply_dirichlet(const LinearSystem& sys, const SlabLayout& layout,
                             const LoadSpec& loads);

/// Full coefficient vector from a reduced solution (constrained dofs filled
/// with their boundary values).
std::vector<double> expand_solution(const LinearSystem& reduced, std::span<const double> x);

/// Splits a full slab coefficient vector into the two temporal traces. Fields
/// absent from the layout are copied from `fill`.
SlabSolution extract_slab_solution(const SlabLayout& layout, std::span<const double> coeffs,
                                   const StateVector& fill);

/// Debug dump: writes <prefix>.mtx (matrix-market coordinate format) and
/// <prefix>_rhs.mtx (dense column) for an assembled system.
void dump_system(const std::string& prefix, const LinearSystem& sys);

}  // namespace tdg
