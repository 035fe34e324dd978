// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <utility>

#include "tdg/assembly.hpp"
#include "tdg/diagnostics.hpp"
#include "tdg/model.hpp"

namespace tdg {

/// Coupled 1D wave problem with prescribed sources making a closed-form state
/// the exact solution; used for the convergence studies.
struct ManufacturedCase {
  double eps1 = 4.0;
  double eps2 = 0.2;
  double k = 0.0;
  double length = 1.0;
  double t_end = 0.25;

  DimensionlessParams dimensionless() const { return {eps1, eps2, k}; }
  MaterialParams material() const { return dimensionless().to_material(); }
  LoadSpec loads() const;
  StateVector initial(const Mesh& mesh) const;
  /// Exact-solution sampler at fixed time for the error norms.
  ExactState exact_at(double tau) const;
};

/// (body force, heat source) of the manufactured problem.
std::pair<double, double> manufactured_sources(double xi, double tau, const ManufacturedCase& c);

/// Exact fields (u, v, alpha, theta) of the manufactured problem.
std::array<double, 4> manufactured_exact(double xi, double tau);

/// Spatial derivatives (du, dv, dalpha, dtheta) of the exact fields.
std::array<double, 4> manufactured_exact_dx(double xi, double tau);

/// Rod heated by a space-time localized pulse at the left end; clamped and
/// held at the reference temperature at both ends, homogeneous initial data.
struct LaserCase {
  double tau_p = 0.01;      ///< pulse duration constant
  double depth = 0.02;      ///< pulse depth constant
  double amplitude = 1.0;   ///< overall source scale
  double eps1 = 9.0;
  double eps2 = 0.5;
  double k = 0.0;
  double h = 0.005;         ///< mesh size, dt = h
  double length = 1.0;
  double t_end = 1.0;
  /// Sign of the spatial exponent. The localized form is -1; +1 reproduces
  /// the growing exponent variant on the bounded domain.
  int spatial_sign = -1;

  bool resolves_pulse() const { return h < depth; }
  DimensionlessParams dimensionless() const { return {eps1, eps2, k}; }
  MaterialParams material() const { return dimensionless().to_material(); }
  LoadSpec loads() const;
};

double laser_source(double xi, double tau, const LaserCase& c);

/// Square plate with an initial temperature pulse at the center; clamped and
/// held at the reference temperature on the whole boundary.
struct Pulse2DCase {
  double amplitude = 4.0;
  double width = 0.01;  ///< effective width constant of the initial pulse
  double dt = 0.01;
  double t_end = 0.4;
  int grid = 50;            ///< elements per direction (square)
  double v_first = 1.96;    ///< first-sound speed
  double v_second = 0.65;   ///< second-sound speed
  double conductivity_ratio = 100.0;  ///< k2/k3
  double coupling = 0.5;    ///< coupling scalar m
  double theta0 = 1.0;
  /// Sign of the exponent; the localized form is -1.
  int spatial_sign = -1;

  MaterialParams material() const;
  Mesh make_mesh() const;
  StateVector initial(const Mesh& mesh) const;
};

double initial_pulse_2d(double x, double y, const Pulse2DCase& c);

}  // namespace tdg
