// SPDX-License-Identifier: Apache-2.0
#include "tdg/experiments.hpp"

#include <cmath>

namespace tdg {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::pair<double, double> manufactured_sources(double xi, double tau, const ManufacturedCase& c) {
  const double q = kPi * kPi / 4.0;
  const double b = q * ((c.eps1 - 1.0) * std::sin(kPi * xi) * std::sin(kPi * tau) +
                        std::cos(kPi * xi) * std::cos(kPi * tau));
  const double s = q * (c.k * kPi * std::sin(kPi * xi) * std::cos(kPi * tau) +
                        c.eps2 * std::cos(kPi * xi) * std::cos(kPi * tau));
  return {b, s};
}

std::array<double, 4> manufactured_exact(double xi, double tau) {
  const double u = 0.25 * std::sin(kPi * xi) * std::sin(kPi * tau);
  const double v = 0.25 * kPi * std::sin(kPi * xi) * std::cos(kPi * tau);
  return {u, v, u, v};  // alpha = u and theta = v
}

std::array<double, 4> manufactured_exact_dx(double xi, double tau) {
  const double du = 0.25 * kPi * std::cos(kPi * xi) * std::sin(kPi * tau);
  const double dv = 0.25 * kPi * kPi * std::cos(kPi * xi) * std::cos(kPi * tau);
  return {du, dv, du, dv};
}

LoadSpec ManufacturedCase::loads() const {
  LoadSpec l;
  const ManufacturedCase c = *this;
  l.body_force = [c](double x, double, double t, double* out) {
    out[0] = manufactured_sources(x, t, c).first;
  };
  l.heat_source = [c](double x, double, double t) {
    return manufactured_sources(x, t, c).second;
  };
  return l;
}

StateVector ManufacturedCase::initial(const Mesh& mesh) const {
  StateVector s = StateVector::zeros(mesh);
  for (int n = 0; n < mesh.n_nodes(); ++n) {
    const std::array<double, 4> f = manufactured_exact(mesh.coord(n, 0), 0.0);
    s.u[n] = f[0];
    s.v[n] = f[1];
    s.alpha[n] = f[2];
    s.theta[n] = f[3];
  }
  return s;
}

ExactState ManufacturedCase::exact_at(double tau) const {
  ExactState ex;
  ex.value = [tau](double x, double, double* u, double* v, double& alpha, double& theta) {
    const std::array<double, 4> f = manufactured_exact(x, tau);
    u[0] = f[0];
    v[0] = f[1];
    alpha = f[2];
    theta = f[3];
  };
  ex.gradient = [tau](double x, double, double* du, double* galpha) {
    const std::array<double, 4> g = manufactured_exact_dx(x, tau);
    du[0] = g[0];
    galpha[0] = g[2];
  };
  return ex;
}

double laser_source(double xi, double tau, const LaserCase& c) {
  const double sx = xi / c.depth;
  const double st = tau / c.tau_p;
  return c.amplitude / (c.depth * c.tau_p) * std::exp(c.spatial_sign * sx * sx - st * st);
}

LoadSpec LaserCase::loads() const {
  LoadSpec l;
  const LaserCase c = *this;
  if (c.amplitude != 0.0)
    l.heat_source = [c](double x, double, double t) { return laser_source(x, t, c); };
  return l;
}

MaterialParams Pulse2DCase::material() const {
  MaterialParams p;
  p.dim = 2;
  p.rho = 1.0;
  p.c = 1.0;
  p.theta0 = theta0;
  p.gauge = AlphaGauge::RelativeTemperature;
  p.k2 = v_second * v_second * p.rho * p.c;
  p.k3 = p.k2 / conductivity_ratio;
  // equal Lame constants reproduce the first-sound speed via lambda + 2 mu
  p.mu = v_first * v_first * p.rho / 3.0;
  p.lambda = p.mu;
  p.omega = coupling == 0.0 ? 0.0 : coupling / (3.0 * p.bulk_modulus());
  return p;
}

Mesh Pulse2DCase::make_mesh() const { return Mesh::quad(-1.0, 1.0, -1.0, 1.0, grid, grid); }

double initial_pulse_2d(double x, double y, const Pulse2DCase& c) {
  const double r2 = x * x + y * y;
  return c.amplitude * std::exp(c.spatial_sign * r2 / c.width);
}

StateVector Pulse2DCase::initial(const Mesh& mesh) const {
  StateVector s = StateVector::zeros(mesh);
  for (int n = 0; n < mesh.n_nodes(); ++n) {
    // clamped reference temperature on the boundary
    if (mesh.gamma_theta[n]) continue;
    s.theta[n] = initial_pulse_2d(mesh.coord(n, 0), mesh.coord(n, 1), *this);
  }
  return s;
}

}  // namespace tdg
