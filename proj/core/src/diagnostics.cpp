// SPDX-License-Identifier: Apache-2.0
#include "tdg/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace tdg {

namespace {

const QuadratureRule& volume_rule(const Mesh& mesh) {
  static const QuadratureRule line = QuadratureRule::gauss_interval(2);
  static const QuadratureRule quad = QuadratureRule::gauss_quad(2);
  return mesh.dim == 1 ? line : quad;
}

struct PointState {
  SymTensor strain;
  double v[2] = {0.0, 0.0};
  double grad_alpha[2] = {0.0, 0.0};
  double theta = 0.0;
};

PointState eval_point(const Mesh& mesh, const ShapeEval& s, const int* nodes,
                      const StateVector& st) {
  PointState ps;
  const int d = mesh.dim;
  ps.strain = SymTensor::zero(d);
  for (int a = 0; a < s.n; ++a) {
    const int n = nodes[a];
    ps.theta += s.value[a] * st.theta[n];
    for (int k = 0; k < d; ++k) ps.grad_alpha[k] += s.grad[a][k] * st.alpha[n];
    for (int c = 0; c < d; ++c) ps.v[c] += s.value[a] * st.v[n * d + c];
    if (d == 1) {
      ps.strain.xx += s.grad[a][0] * st.u[n];
    } else {
      ps.strain.xx += s.grad[a][0] * st.u[n * 2];
      ps.strain.yy += s.grad[a][1] * st.u[n * 2 + 1];
      ps.strain.xy += 0.5 * (s.grad[a][1] * st.u[n * 2] + s.grad[a][0] * st.u[n * 2 + 1]);
    }
  }
  return ps;
}

double strain_energy_density(const SymTensor& e, const VoigtMatrix& c) {
  if (c.n == 1) return c.at(0, 0) * e.xx * e.xx;
  const double v[3] = {e.xx, e.yy, 2.0 * e.xy};
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += v[i] * c.at(i, j) * v[j];
  return s;
}

}  // namespace

EnergyParts energy_parts(const StateVector& s, const MaterialParams& p) {
  const Mesh& mesh = *s.mesh;
  const QuadratureRule& q = volume_rule(mesh);
  const VoigtMatrix c = elasticity(p);
  const VoigtMatrix cad = adiabatic_stiffness(p);
  EnergyParts out;
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* nodes = mesh.elem(e);
    for (size_t g = 0; g < q.points.size(); ++g) {
      const ShapeEval sh = shape_eval(mesh, e, q.points[g][0], q.points[g][1]);
      const double w = q.weights[g] * sh.jac_det;
      const PointState ps = eval_point(mesh, sh, nodes, s);
      out.strain += w * strain_energy_density(ps.strain, c);
      out.strain_adiabatic += w * strain_energy_density(ps.strain, cad);
      out.kinetic += w * p.rho * (ps.v[0] * ps.v[0] + ps.v[1] * ps.v[1]);
      out.grad_alpha += w * p.k2_star() *
                        (ps.grad_alpha[0] * ps.grad_alpha[0] + ps.grad_alpha[1] * ps.grad_alpha[1]);
      out.theta += w * p.c_star() * ps.theta * ps.theta;
    }
  }
  return out;
}

double energy_norm(const StateVector& s, const MaterialParams& p) {
  const EnergyParts e = energy_parts(s, p);
  return e.strain + e.kinetic + e.grad_alpha + e.theta;
}

double energy_norm(const StateVector& s, const DimensionlessParams& dp) {
  if (dp.eps2 <= 0.0)
    throw ConfigError("energy_norm: thermal weights 1/eps2 undefined for eps2 = 0");
  return energy_norm(s, dp.to_material());
}

double l2_norm(const StateVector& s) {
  const Mesh& mesh = *s.mesh;
  const QuadratureRule& q = volume_rule(mesh);
  const int d = mesh.dim;
  double out = 0.0;
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* nodes = mesh.elem(e);
    for (size_t g = 0; g < q.points.size(); ++g) {
      const ShapeEval sh = shape_eval(mesh, e, q.points[g][0], q.points[g][1]);
      const double w = q.weights[g] * sh.jac_det;
      double uu = 0.0, vv = 0.0, aa = 0.0, tt = 0.0;
      for (int c = 0; c < d; ++c) {
        double uc = 0.0, vc = 0.0;
        for (int a = 0; a < sh.n; ++a) {
          uc += sh.value[a] * s.u[nodes[a] * d + c];
          vc += sh.value[a] * s.v[nodes[a] * d + c];
        }
        uu += uc * uc;
        vv += vc * vc;
      }
      double av = 0.0, tv = 0.0;
      for (int a = 0; a < sh.n; ++a) {
        av += sh.value[a] * s.alpha[nodes[a]];
        tv += sh.value[a] * s.theta[nodes[a]];
      }
      aa = av * av;
      tt = tv * tv;
      out += w * (uu + vv + aa + tt);
    }
  }
  return out;
}

double mech_energy(const StateVector& s, const MaterialParams& p) {
  const EnergyParts e = energy_parts(s, p);
  return 0.5 * (e.strain_adiabatic + e.kinetic);
}

double jump_dissipation(const SlabSolution& slab, const StateVector& prev,
                        const MaterialParams& p) {
  StateVector jump = slab.start_plus;
  for (size_t i = 0; i < jump.u.size(); ++i) jump.u[i] -= prev.u[i];
  for (size_t i = 0; i < jump.v.size(); ++i) jump.v[i] -= prev.v[i];
  for (size_t i = 0; i < jump.alpha.size(); ++i) jump.alpha[i] -= prev.alpha[i];
  for (size_t i = 0; i < jump.theta.size(); ++i) jump.theta[i] -= prev.theta[i];
  const EnergyParts e = energy_parts(jump, p);
  return 0.5 * (e.strain_adiabatic + e.kinetic + e.grad_alpha + e.theta);
}

std::pair<double, double> error_vs_exact(const StateVector& s, const ExactState& exact,
                                         const MaterialParams& p) {
  const Mesh& mesh = *s.mesh;
  const QuadratureRule& q = volume_rule(mesh);
  const VoigtMatrix c = elasticity(p);
  const int d = mesh.dim;
  double h1 = 0.0, l2 = 0.0;
  double ue[2], ve[2], due[4], gae[2];
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* nodes = mesh.elem(e);
    for (size_t g = 0; g < q.points.size(); ++g) {
      const ShapeEval sh = shape_eval(mesh, e, q.points[g][0], q.points[g][1]);
      const double w = q.weights[g] * sh.jac_det;
      double x = 0.0, y = 0.0;
      for (int a = 0; a < sh.n; ++a) {
        x += sh.value[a] * mesh.coord(nodes[a], 0);
        if (d == 2) y += sh.value[a] * mesh.coord(nodes[a], 1);
      }
      double ae = 0.0, te = 0.0;
      exact.value(x, y, ue, ve, ae, te);
      exact.gradient(x, y, due, gae);
      PointState ps = eval_point(mesh, sh, nodes, s);
      // subtract the exact fields
      SymTensor es = ps.strain;
      if (d == 1) {
        es.xx -= due[0];
      } else {
        es.xx -= due[0];
        es.yy -= due[3];
        es.xy -= 0.5 * (due[1] + due[2]);
      }
      double uherr = 0.0, verr = 0.0;
      for (int cc = 0; cc < d; ++cc) {
        double uv = 0.0;
        for (int a = 0; a < sh.n; ++a) uv += sh.value[a] * s.u[nodes[a] * d + cc];
        uherr += (uv - ue[cc]) * (uv - ue[cc]);
        verr += (ps.v[cc] - ve[cc]) * (ps.v[cc] - ve[cc]);
      }
      double ah = 0.0, th = ps.theta;
      for (int a = 0; a < sh.n; ++a) ah += sh.value[a] * s.alpha[nodes[a]];
      const double ga[2] = {ps.grad_alpha[0] - gae[0], ps.grad_alpha[1] - (d == 2 ? gae[1] : 0.0)};
      h1 += w * (strain_energy_density(es, c) + p.rho * verr +
                 p.k2_star() * (ga[0] * ga[0] + ga[1] * ga[1]) +
                 p.c_star() * (th - te) * (th - te));
      l2 += w * (uherr + verr + (ah - ae) * (ah - ae) + (th - te) * (th - te));
    }
  }
  return {std::sqrt(h1), std::sqrt(l2)};
}

double estimate_order(std::span<const double> errors, std::span<const double> hs) {
  if (errors.size() != hs.size() || errors.size() < 2)
    throw std::invalid_argument("estimate_order: need matching sequences of length >= 2");
  const int n = static_cast<int>(errors.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(hs[i]);
    const double y = std::log(std::max(errors[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("estimate_order: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace tdg
