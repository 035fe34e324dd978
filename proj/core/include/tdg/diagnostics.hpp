// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <utility>

#include "tdg/assembly.hpp"
#include "tdg/mesh.hpp"
#include "tdg/model.hpp"

namespace tdg {

/// Per-instant energy diagnostics; jump_dissipation refers to the slab that
/// ended at time t (zero on the initial row).
struct EnergyReport {
  double t = 0.0;
  double h1_energy = 0.0;
  double l2_norm = 0.0;
  double mech_energy = 0.0;
  double jump_dissipation = 0.0;
};

/// Quadratic-form pieces of a state, integrated with the assembly quadrature.
struct EnergyParts {
  double strain = 0.0;           ///< eps(u) : C eps(u)
  double strain_adiabatic = 0.0; ///< eps(u) : C_ad eps(u)
  double kinetic = 0.0;          ///< rho |v|^2
  double grad_alpha = 0.0;       ///< k2/theta0 |grad alpha|^2
  double theta = 0.0;            ///< rho c/theta0 theta^2
};

EnergyParts energy_parts(const StateVector& s, const MaterialParams& p);

/// State-space energy: strain (physical stiffness) + kinetic + weighted
/// thermal terms, without a 1/2 factor. In the scaled 1D variables this is
/// the integral of eps1 (du)^2 + v^2 + (1/eps2)(da)^2 + (1/eps2) theta^2.
double energy_norm(const StateVector& s, const MaterialParams& p);

/// Scaled-variable overload; eps2 = 0 leaves the thermal weights undefined.
double energy_norm(const StateVector& s, const DimensionlessParams& dp);

/// Unweighted squared L2 norm summed over all solution components.
double l2_norm(const StateVector& s);

/// Total mechanical energy: one half of adiabatic strain plus kinetic parts.
double mech_energy(const StateVector& s, const MaterialParams& p);

/// Energy of the temporal jump between a slab's start trace and the previous
/// trace, in the half-weighted metric with adiabatic stiffness on the
/// displacement jump.
double jump_dissipation(const SlabSolution& slab, const StateVector& prev,
                        const MaterialParams& p);

/// Exact solution sampled pointwise; gradients feed the energy-norm error.
struct ExactState {
  /// u (dim comps), v (dim comps), alpha, theta at (x, y).
  std::function<void(double x, double y, double* u, double* v, double& alpha, double& theta)>
      value;
  /// du[c*2+k] = d u_c / d x_k (k < dim), galpha[k] = d alpha / d x_k.
  std::function<void(double x, double y, double* du, double* galpha)> gradient;
};

/// (energy-norm error, L2 error) of a state against an exact solution; both
/// are square roots of the corresponding quadratic forms.
std::pair<double, double> error_vs_exact(const StateVector& s, const ExactState& exact,
                                         const MaterialParams& p);

/// Least-squares slope of log(error) against log(h).
double estimate_order(std::span<const double> errors, std::span<const double> hs);

}  // namespace tdg
