// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "tdg/assembly.hpp"
#include "tdg/diagnostics.hpp"
#include "tdg/model.hpp"

namespace tdg::testing {

/// Small deterministic generator (xorshift) for reproducible fixtures.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    const double u = static_cast<double>(state_ >> 11) / 9007199254740992.0;
    return lo + (hi - lo) * u;
  }

 private:
  uint64_t state_;
};

inline StateVector random_state(const Mesh& mesh, Rng& rng, double scale = 1.0) {
  StateVector s = StateVector::zeros(mesh);
  for (double& x : s.u) x = scale * rng.uniform(-1.0, 1.0);
  for (double& x : s.v) x = scale * rng.uniform(-1.0, 1.0);
  for (double& x : s.alpha) x = scale * rng.uniform(-1.0, 1.0);
  for (double& x : s.theta) x = scale * rng.uniform(-1.0, 1.0);
  return s;
}

/// Zeros the constrained entries so a random trace is boundary-compatible.
inline void clamp_boundary(const Mesh& mesh, StateVector& s) {
  for (int n = 0; n < mesh.n_nodes(); ++n) {
    if (mesh.gamma_u[n])
      for (int c = 0; c < mesh.dim; ++c) {
        s.u[n * mesh.dim + c] = 0.0;
        s.v[n * mesh.dim + c] = 0.0;
      }
    if (mesh.gamma_theta[n]) s.theta[n] = 0.0;
  }
}

inline StateVector interpolate_1d(const Mesh& mesh,
                                  const std::function<std::array<double, 4>(double)>& fields,
                                  double time = 0.0) {
  StateVector s = StateVector::zeros(mesh, time);
  for (int n = 0; n < mesh.n_nodes(); ++n) {
    const std::array<double, 4> f = fields(mesh.coord(n, 0));
    s.u[n] = f[0];
    s.v[n] = f[1];
    s.alpha[n] = f[2];
    s.theta[n] = f[3];
  }
  return s;
}

inline double state_norm(const StateVector& a, const MaterialParams& p) {
  return std::sqrt(energy_norm(a, p));
}

inline StateVector state_diff(const StateVector& a, const StateVector& b) {
  StateVector d = a;
  for (size_t i = 0; i < d.u.size(); ++i) d.u[i] -= b.u[i];
  for (size_t i = 0; i < d.v.size(); ++i) d.v[i] -= b.v[i];
  for (size_t i = 0; i < d.alpha.size(); ++i) d.alpha[i] -= b.alpha[i];
  for (size_t i = 0; i < d.theta.size(); ++i) d.theta[i] -= b.theta[i];
  return d;
}

/// Generic dimensional parameter set exercising every coefficient.
inline MaterialParams generic_params(int dim) {
  MaterialParams p;
  p.dim = dim;
  p.rho = 1.3;
  p.c = 0.8;
  p.theta0 = 2.1;
  p.lambda = 1.7;
  p.mu = 0.9;
  p.omega = 0.25;
  p.k2 = 1.6;
  p.k3 = 0.35;
  p.s0 = 0.4;
  return p;
}

}  // namespace tdg::testing
