// SPDX-License-Identifier: Apache-2.0
#include "tdg/assembly.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tdg {

namespace {

const QuadratureRule& volume_rule(const Mesh& mesh) {
  static const QuadratureRule line = QuadratureRule::gauss_interval(2);
  static const QuadratureRule quad = QuadratureRule::gauss_quad(2);
  return mesh.dim == 1 ? line : quad;
}

// Per-element spatial kernels evaluated with the assembly quadrature.
struct ElemKernels {
  int nen = 2;
  int dim = 1;
  double mass[4][4] = {};
  double stiff_k2[4][4] = {};
  double stiff_k3[4][4] = {};
  double stiff_el[8][8] = {};  // vector stiffness with a Voigt matrix
  double coupling[4][8] = {};  // m * N_s * dN_(v,c): scalar slot s, vector slot (v,c)
};

ElemKernels element_kernels(const Mesh& mesh, int e, const MaterialParams& p,
                            const VoigtMatrix& cmat) {
  ElemKernels k;
  k.nen = mesh.nodes_per_elem;
  k.dim = mesh.dim;
  const QuadratureRule& q = volume_rule(mesh);
  const double m = p.coupling_m();
  for (size_t g = 0; g < q.points.size(); ++g) {
    const ShapeEval s = shape_eval(mesh, e, q.points[g][0], q.points[g][1]);
    const double w = q.weights[g] * s.jac_det;
    for (int a = 0; a < k.nen; ++a)
      for (int b = 0; b < k.nen; ++b) {
        k.mass[a][b] += w * s.value[a] * s.value[b];
        double grad_dot = 0.0;
        for (int c = 0; c < k.dim; ++c) grad_dot += s.grad[a][c] * s.grad[b][c];
        k.stiff_k2[a][b] += w * p.k2 * grad_dot;
        k.stiff_k3[a][b] += w * p.k3 * grad_dot;
      }
    if (k.dim == 1) {
      for (int a = 0; a < k.nen; ++a)
        for (int b = 0; b < k.nen; ++b) {
          k.stiff_el[a][b] += w * cmat.at(0, 0) * s.grad[a][0] * s.grad[b][0];
          k.coupling[a][b] += w * m * s.value[a] * s.grad[b][0];
        }
    } else {
      // B-matrix rows (xx, yy, xy) per vector slot (node, comp)
      for (int a = 0; a < k.nen; ++a)
        for (int ca = 0; ca < 2; ++ca) {
          double Ba[3] = {0.0, 0.0, 0.0};
          Ba[ca] = s.grad[a][ca];
          Ba[2] = s.grad[a][1 - ca];
          for (int b = 0; b < k.nen; ++b)
            for (int cb = 0; cb < 2; ++cb) {
              double Bb[3] = {0.0, 0.0, 0.0};
              Bb[cb] = s.grad[b][cb];
              Bb[2] = s.grad[b][1 - cb];
              double val = 0.0;
              for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) val += Ba[i] * cmat.at(i, j) * Bb[j];
              k.stiff_el[a * 2 + ca][b * 2 + cb] += w * val;
            }
        }
      for (int a = 0; a < k.nen; ++a)
        for (int b = 0; b < k.nen; ++b)
          for (int cb = 0; cb < 2; ++cb)
            k.coupling[a][b * 2 + cb] += w * m * s.value[a] * s.grad[b][cb];
    }
  }
  return k;
}

double interp(const ShapeEval& s, int nen, const int* nodes, std::span<const double> nodal) {
  double v = 0.0;
  for (int a = 0; a < nen; ++a) v += s.value[a] * nodal[nodes[a]];
  return v;
}

double divergence(const ShapeEval& s, int nen, int dim, const int* nodes,
                  std::span<const double> vec_nodal) {
  double v = 0.0;
  for (int a = 0; a < nen; ++a)
    for (int c = 0; c < dim; ++c) v += s.grad[a][c] * vec_nodal[nodes[a] * dim + c];
  return v;
}

struct TemporalBlock {
  double rate_jump = 0.0;  // multiplies d/dt pairing plus the start-trace jump
  double mass = 0.0;       // multiplies the temporal mass
};

void scatter(std::vector<SparseMatrix::Triplet>& tris, const SlabLayout& layout, int f_row,
             int c_row, int n_row, int f_col, int c_col, int n_col, double kernel,
             const TemporalBlock& tb) {
  if (kernel == 0.0) return;
  const double dt = layout.dt();
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb) {
      const double t = tb.rate_jump * (temporal_rate(sa, sb) + temporal_start_jump(sa, sb)) +
                       tb.mass * temporal_mass(sa, sb, dt);
      if (t == 0.0) continue;
      tris.push_back({layout.index(f_row, c_row, n_row, sb), layout.index(f_col, c_col, n_col, sa),
                      t * kernel});
    }
}

// 1D boundary terms are point evaluations at tagged end nodes; 2D ones are
// edge integrals over element edges lying on the tagged part of the rectangle.
struct BoundaryPoint {
  int node;
  double x, y;
  double weight;  // spatial measure factor
  double shape;   // shape value of this node's function at the quadrature point
};

template <typename F>
void for_boundary_points(const Mesh& mesh, const std::vector<uint8_t>& tag, F&& fn) {
  if (mesh.dim == 1) {
    for (int n = 0; n < mesh.n_nodes(); ++n)
      if (tag[n]) fn(BoundaryPoint{n, mesh.coord(n, 0), 0.0, 1.0, 1.0});
    return;
  }
  const int nnx = mesh.nx + 1;
  auto ix = [&](int n) { return n % nnx; };
  auto iy = [&](int n) { return n / nnx; };
  static const int edges[4][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  const double g = 0.57735026918962576451;
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* nodes = mesh.elem(e);
    for (const auto& ed : edges) {
      const int na = nodes[ed[0]], nb = nodes[ed[1]];
      const bool on_rect = (ix(na) == 0 && ix(nb) == 0) || (ix(na) == mesh.nx && ix(nb) == mesh.nx) ||
                           (iy(na) == 0 && iy(nb) == 0) || (iy(na) == mesh.ny && iy(nb) == mesh.ny);
      if (!on_rect || !tag[na] || !tag[nb]) continue;
      const double ax = mesh.coord(na, 0), ay = mesh.coord(na, 1);
      const double bx = mesh.coord(nb, 0), by = mesh.coord(nb, 1);
      const double jac = 0.5 * std::hypot(bx - ax, by - ay);
      for (double s : {-g, g}) {
        const double wa = 0.5 * (1.0 - s), wb = 0.5 * (1.0 + s);
        const double x = wa * ax + wb * bx, y = wa * ay + wb * by;
        fn(BoundaryPoint{na, x, y, jac, wa});
        fn(BoundaryPoint{nb, x, y, jac, wb});
      }
    }
  }
}

// Accumulates a space-time load integral (callable of x,y,t) into rhs for one
// scalar- or vector-valued test field.
template <typename Eval>
void add_volume_load(std::vector<double>& rhs, const SlabLayout& layout, int f_pos, int comps,
                     Eval&& eval) {
  const Mesh& mesh = *layout.mesh;
  const QuadratureRule& q = volume_rule(mesh);
  const TimeQuadrature tq;
  const double dt = layout.dt();
  double out[2];
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* nodes = mesh.elem(e);
    for (size_t g = 0; g < q.points.size(); ++g) {
      const ShapeEval s = shape_eval(mesh, e, q.points[g][0], q.points[g][1]);
      const double wx = q.weights[g] * s.jac_det;
      const double x = [&] {
        double v = 0.0;
        for (int a = 0; a < s.n; ++a) v += s.value[a] * mesh.coord(nodes[a], 0);
        return v;
      }();
      const double y = mesh.dim == 2 ? [&] {
        double v = 0.0;
        for (int a = 0; a < s.n; ++a) v += s.value[a] * mesh.coord(nodes[a], 1);
        return v;
      }()
                                     : 0.0;
      for (int it = 0; it < 2; ++it) {
        const double t = layout.t_start + tq.tau[it] * dt;
        eval(x, y, t, out);
        const double wt = tq.w[it] * dt;
        const double psi[2] = {1.0 - tq.tau[it], tq.tau[it]};
        for (int a = 0; a < s.n; ++a)
          for (int c = 0; c < comps; ++c)
            for (int sb = 0; sb < 2; ++sb)
              rhs[layout.index(f_pos, c, nodes[a], sb)] += wx * wt * psi[sb] * s.value[a] * out[c];
      }
    }
  }
}

template <typename Eval>
void add_boundary_load(std::vector<double>& rhs, const SlabLayout& layout, int f_pos, int comps,
                       const std::vector<uint8_t>& tag, Eval&& eval) {
  const TimeQuadrature tq;
  const double dt = layout.dt();
  double out[2];
  for_boundary_points(*layout.mesh, tag, [&](const BoundaryPoint& bp) {
    for (int it = 0; it < 2; ++it) {
      const double t = layout.t_start + tq.tau[it] * dt;
      eval(bp.x, bp.y, t, out);
      const double wt = tq.w[it] * dt;
      const double psi[2] = {1.0 - tq.tau[it], tq.tau[it]};
      for (int c = 0; c < comps; ++c)
        for (int sb = 0; sb < 2; ++sb)
          rhs[layout.index(f_pos, c, bp.node, sb)] += bp.weight * wt * psi[sb] * bp.shape * out[c];
    }
  });
}

}  // namespace

double temporal_mass(int a, int b, double dt) { return dt / 6.0 * (a == b ? 2.0 : 1.0); }
double temporal_rate(int a, int b) {
  (void)b;
  return a == 0 ? -0.5 : 0.5;
}
double temporal_start_jump(int a, int b) { return (a == 0 && b == 0) ? 1.0 : 0.0; }

StateVector StateVector::zeros(const Mesh& mesh, double time) {
  StateVector s;
  s.mesh = &mesh;
  s.time = time;
  const int n = mesh.n_nodes();
  s.u.assign(static_cast<size_t>(n) * mesh.dim, 0.0);
  s.v.assign(static_cast<size_t>(n) * mesh.dim, 0.0);
  s.alpha.assign(n, 0.0);
  s.theta.assign(n, 0.0);
  return s;
}

void StateVector::require_finite() const {
  auto check = [](const std::vector<double>& v) {
    for (double x : v)
      if (!std::isfinite(x)) throw std::runtime_error("StateVector: non-finite value");
  };
  check(u);
  check(v);
  check(alpha);
  check(theta);
}

StateVector SlabSolution::eval(double t) const {
  const double w1 = (t - t_start) / (t_end - t_start);
  const double w0 = 1.0 - w1;
  StateVector out = start_plus;
  out.time = t;
  auto blend = [&](std::vector<double>& dst, const std::vector<double>& b) {
    for (size_t i = 0; i < dst.size(); ++i) dst[i] = w0 * dst[i] + w1 * b[i];
  };
  blend(out.u, end_minus.u);
  blend(out.v, end_minus.v);
  blend(out.alpha, end_minus.alpha);
  blend(out.theta, end_minus.theta);
  return out;
}

SparseMatrix assemble_mechanical_matrix(const SlabLayout& layout, const MaterialParams& p) {
  const Mesh& mesh = *layout.mesh;
  const int d = mesh.dim;
  const VoigtMatrix cad = adiabatic_stiffness(p);
  std::vector<SparseMatrix::Triplet> tris;
  tris.reserve(static_cast<size_t>(mesh.n_elems()) * 64 * d * d);
  const int fu = 0, fv = 1;
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const ElemKernels k = element_kernels(mesh, e, p, cad);
    const int* nodes = mesh.elem(e);
    for (int a = 0; a < k.nen; ++a)
      for (int b = 0; b < k.nen; ++b) {
        for (int c = 0; c < d; ++c) {
          // (du/dt, w) + start jump, and -(v, w)
          scatter(tris, layout, fu, c, nodes[b], fu, c, nodes[a], k.mass[a][b], {1.0, 0.0});
          scatter(tris, layout, fu, c, nodes[b], fv, c, nodes[a], k.mass[a][b], {0.0, -1.0});
          // rho ((dv/dt, phi) + start jump)
          scatter(tris, layout, fv, c, nodes[b], fv, c, nodes[a], p.rho * k.mass[a][b], {1.0, 0.0});
        }
        // (C_ad eps(u), eps(phi))
        for (int ca = 0; ca < d; ++ca)
          for (int cb = 0; cb < d; ++cb)
            scatter(tris, layout, fv, cb, nodes[b], fu, ca, nodes[a],
                    k.stiff_el[b * d + cb][a * d + ca], {0.0, 1.0});
      }
  }
  return SparseMatrix::from_triplets(layout.n_dofs(), layout.n_dofs(), tris);
}

std::vector<double> assemble_mechanical_rhs(const SlabLayout& layout, const MaterialParams& p,
                                            const StateVector& prev, const LoadSpec& loads) {
  const Mesh& mesh = *layout.mesh;
  const int d = mesh.dim;
  const int fu = 0, fv = 1;
  std::vector<double> rhs(layout.n_dofs(), 0.0);
  const QuadratureRule& q = volume_rule(mesh);
  const double m = p.coupling_m();
  const double dt = layout.dt();
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* nodes = mesh.elem(e);
    for (size_t g = 0; g < q.points.size(); ++g) {
      const ShapeEval s = shape_eval(mesh, e, q.points[g][0], q.points[g][1]);
      const double w = q.weights[g] * s.jac_det;
      // incoming-trace pairings at t_n^+
      for (int a = 0; a < s.n; ++a)
        for (int b = 0; b < s.n; ++b)
          for (int c = 0; c < d; ++c) {
            const double mab = w * s.value[a] * s.value[b];
            rhs[layout.index(fu, c, nodes[b], 0)] += mab * prev.u[nodes[a] * d + c];
            rhs[layout.index(fv, c, nodes[b], 0)] += p.rho * mab * prev.v[nodes[a] * d + c];
          }
      // frozen thermal stress from the incoming trace, constant over the slab
      if (m != 0.0) {
        const double theta_tilde = interp(s, s.n, nodes, prev.theta) +
                                   p.theta0 / p.c * m * divergence(s, s.n, d, nodes, prev.u);
        for (int b = 0; b < s.n; ++b)
          for (int c = 0; c < d; ++c)
            for (int sb = 0; sb < 2; ++sb)
              rhs[layout.index(fv, c, nodes[b], sb)] +=
                  w * m * theta_tilde * s.grad[b][c] * 0.5 * dt;
      }
    }
  }
  if (loads.body_force) {
    add_volume_load(rhs, layout, fv, d, [&](double x, double y, double t, double* out) {
      loads.body_force(x, y, t, out);
      for (int c = 0; c < d; ++c) out[c] *= p.rho;
    });
  }
  if (loads.traction)
    add_boundary_load(rhs, layout, fv, d, mesh.gamma_t, loads.traction);
  return rhs;
}

LinearSystem assemble_mechanical_slab(const SlabLayout& layout, const MaterialParams& p,
                                      const StateVector& prev, const LoadSpec& loads) {
  LinearSystem sys;
  sys.matrix = assemble_mechanical_matrix(layout, p);
  sys.rhs = assemble_mechanical_rhs(layout, p, prev, loads);
  return sys;
}

SparseMatrix assemble_thermal_matrix(const SlabLayout& layout, const MaterialParams& p) {
  const Mesh& mesh = *layout.mesh;
  std::vector<SparseMatrix::Triplet> tris;
  tris.reserve(static_cast<size_t>(mesh.n_elems()) * 64);
  const int fa = 0, ft = 1;
  const VoigtMatrix c0 = elasticity(p);  // unused values; kernels need a Voigt argument
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const ElemKernels k = element_kernels(mesh, e, p, c0);
    const int* nodes = mesh.elem(e);
    for (int a = 0; a < k.nen; ++a)
      for (int b = 0; b < k.nen; ++b) {
        scatter(tris, layout, fa, 0, nodes[b], fa, 0, nodes[a], k.mass[a][b], {1.0, 0.0});
        scatter(tris, layout, fa, 0, nodes[b], ft, 0, nodes[a], k.mass[a][b], {0.0, -1.0});
        scatter(tris, layout, ft, 0, nodes[b], ft, 0, nodes[a], p.rho * p.c * k.mass[a][b],
                {1.0, 0.0});
        scatter(tris, layout, ft, 0, nodes[b], ft, 0, nodes[a], k.stiff_k3[a][b], {0.0, 1.0});
        scatter(tris, layout, ft, 0, nodes[b], fa, 0, nodes[a], k.stiff_k2[a][b], {0.0, 1.0});
      }
  }
  return SparseMatrix::from_triplets(layout.n_dofs(), layout.n_dofs(), tris);
}

std::vector<double> assemble_thermal_rhs(const SlabLayout& layout, const MaterialParams& p,
                                         const StateVector& prev,
                                         std::span<const double> u_frozen, const LoadSpec& loads) {
  const Mesh& mesh = *layout.mesh;
  const int d = mesh.dim;
  const int fa = 0, ft = 1;
  std::vector<double> rhs(layout.n_dofs(), 0.0);
  const QuadratureRule& q = volume_rule(mesh);
  const double m = p.coupling_m();
  const double gauge = p.alpha_rate_offset();
  const double dt = layout.dt();
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* nodes = mesh.elem(e);
    for (size_t g = 0; g < q.points.size(); ++g) {
      const ShapeEval s = shape_eval(mesh, e, q.points[g][0], q.points[g][1]);
      const double w = q.weights[g] * s.jac_det;
      for (int a = 0; a < s.n; ++a)
        for (int b = 0; b < s.n; ++b) {
          const double mab = w * s.value[a] * s.value[b];
          rhs[layout.index(fa, 0, nodes[b], 0)] += mab * prev.alpha[nodes[a]];
          rhs[layout.index(ft, 0, nodes[b], 0)] += p.rho * p.c * mab * prev.theta[nodes[a]];
        }
      if (gauge != 0.0)
        for (int b = 0; b < s.n; ++b)
          for (int sb = 0; sb < 2; ++sb)
            rhs[layout.index(fa, 0, nodes[b], sb)] += w * gauge * s.value[b] * 0.5 * dt;
      // entropy-jump strain correction against the start trace of the slab
      if (m != 0.0) {
        const double dstrain =
            divergence(s, s.n, d, nodes, prev.u) - divergence(s, s.n, d, nodes, u_frozen);
        for (int b = 0; b < s.n; ++b)
          rhs[layout.index(ft, 0, nodes[b], 0)] += w * p.rho * p.theta0 * m * dstrain * s.value[b];
      }
    }
  }
  if (loads.heat_source) {
    add_volume_load(rhs, layout, ft, 1, [&](double x, double y, double t, double* out) {
      out[0] = p.rho * loads.heat_source(x, y, t);
    });
  }
  if (loads.boundary_heat_influx) {
    add_boundary_load(rhs, layout, ft, 1, mesh.gamma_q,
                      [&](double x, double y, double t, double* out) {
                        out[0] = loads.boundary_heat_influx(x, y, t);
                      });
  }
  return rhs;
}

LinearSystem assemble_thermal_slab(const SlabLayout& layout, const MaterialParams& p,
                                   const StateVector& prev, std::span<const double> u_frozen,
                                   const LoadSpec& loads) {
  LinearSystem sys;
  sys.matrix = assemble_thermal_matrix(layout, p);
  sys.rhs = assemble_thermal_rhs(layout, p, prev, u_frozen, loads);
  return sys;
}

SparseMatrix assemble_monolithic_matrix(const SlabLayout& layout, const MaterialParams& p) {
  const Mesh& mesh = *layout.mesh;
  const int d = mesh.dim;
  const VoigtMatrix c = elasticity(p);
  std::vector<SparseMatrix::Triplet> tris;
  tris.reserve(static_cast<size_t>(mesh.n_elems()) * 144 * d);
  const int fu = 0, fv = 1, fa = 2, ft = 3;
  const double m = p.coupling_m();
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const ElemKernels k = element_kernels(mesh, e, p, c);
    const int* nodes = mesh.elem(e);
    for (int a = 0; a < k.nen; ++a)
      for (int b = 0; b < k.nen; ++b) {
        for (int cc = 0; cc < d; ++cc) {
          scatter(tris, layout, fu, cc, nodes[b], fu, cc, nodes[a], k.mass[a][b], {1.0, 0.0});
          scatter(tris, layout, fu, cc, nodes[b], fv, cc, nodes[a], k.mass[a][b], {0.0, -1.0});
          scatter(tris, layout, fv, cc, nodes[b], fv, cc, nodes[a], p.rho * k.mass[a][b],
                  {1.0, 0.0});
        }
        for (int ca = 0; ca < d; ++ca)
          for (int cb = 0; cb < d; ++cb)
            scatter(tris, layout, fv, cb, nodes[b], fu, ca, nodes[a],
                    k.stiff_el[b * d + cb][a * d + ca], {0.0, 1.0});
        // -(m theta, eps(phi))
        if (m != 0.0)
          for (int cb = 0; cb < d; ++cb)
            scatter(tris, layout, fv, cb, nodes[b], ft, 0, nodes[a], -k.coupling[a][b * d + cb],
                    {0.0, 1.0});
        scatter(tris, layout, fa, 0, nodes[b], fa, 0, nodes[a], k.mass[a][b], {1.0, 0.0});
        scatter(tris, layout, fa, 0, nodes[b], ft, 0, nodes[a], k.mass[a][b], {0.0, -1.0});
        scatter(tris, layout, ft, 0, nodes[b], ft, 0, nodes[a], p.rho * p.c * k.mass[a][b],
                {1.0, 0.0});
        scatter(tris, layout, ft, 0, nodes[b], ft, 0, nodes[a], k.stiff_k3[a][b], {0.0, 1.0});
        scatter(tris, layout, ft, 0, nodes[b], fa, 0, nodes[a], k.stiff_k2[a][b], {0.0, 1.0});
        // entropy form: rho theta0 m : eps(u) inside the rate and the jump
        if (m != 0.0)
          for (int ca = 0; ca < d; ++ca)
            scatter(tris, layout, ft, 0, nodes[b], fu, ca, nodes[a],
                    p.rho * p.theta0 * k.coupling[b][a * d + ca], {1.0, 0.0});
      }
  }
  return SparseMatrix::from_triplets(layout.n_dofs(), layout.n_dofs(), tris);
}

std::vector<double> assemble_monolithic_rhs(const SlabLayout& layout, const MaterialParams& p,
                                            const StateVector& prev, const LoadSpec& loads) {
  const Mesh& mesh = *layout.mesh;
  const int d = mesh.dim;
  const int fu = 0, fv = 1, fa = 2, ft = 3;
  std::vector<double> rhs(layout.n_dofs(), 0.0);
  const QuadratureRule& q = volume_rule(mesh);
  const double m = p.coupling_m();
  const double gauge = p.alpha_rate_offset();
  const double dt = layout.dt();
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* nodes = mesh.elem(e);
    for (size_t g = 0; g < q.points.size(); ++g) {
      const ShapeEval s = shape_eval(mesh, e, q.points[g][0], q.points[g][1]);
      const double w = q.weights[g] * s.jac_det;
      for (int a = 0; a < s.n; ++a)
        for (int b = 0; b < s.n; ++b) {
          const double mab = w * s.value[a] * s.value[b];
          for (int c = 0; c < d; ++c) {
            rhs[layout.index(fu, c, nodes[b], 0)] += mab * prev.u[nodes[a] * d + c];
            rhs[layout.index(fv, c, nodes[b], 0)] += p.rho * mab * prev.v[nodes[a] * d + c];
          }
          rhs[layout.index(fa, 0, nodes[b], 0)] += mab * prev.alpha[nodes[a]];
          rhs[layout.index(ft, 0, nodes[b], 0)] += p.rho * p.c * mab * prev.theta[nodes[a]];
        }
      if (gauge != 0.0)
        for (int b = 0; b < s.n; ++b)
          for (int sb = 0; sb < 2; ++sb)
            rhs[layout.index(fa, 0, nodes[b], sb)] += w * gauge * s.value[b] * 0.5 * dt;
      if (m != 0.0) {
        const double div_prev = divergence(s, s.n, d, nodes, prev.u);
        for (int b = 0; b < s.n; ++b)
          rhs[layout.index(ft, 0, nodes[b], 0)] +=
              w * p.rho * p.theta0 * m * div_prev * s.value[b];
      }
    }
  }
  if (loads.body_force) {
    add_volume_load(rhs, layout, fv, d, [&](double x, double y, double t, double* out) {
      loads.body_force(x, y, t, out);
      for (int c = 0; c < d; ++c) out[c] *= p.rho;
    });
  }
  if (loads.traction)
    add_boundary_load(rhs, layout, fv, d, mesh.gamma_t, loads.traction);
  if (loads.heat_source) {
    add_volume_load(rhs, layout, ft, 1, [&](double x, double y, double t, double* out) {
      out[0] = p.rho * loads.heat_source(x, y, t);
    });
  }
  if (loads.boundary_heat_influx) {
    add_boundary_load(rhs, layout, ft, 1, mesh.gamma_q,
                      [&](double x, double y, double t, double* out) {
                        out[0] = loads.boundary_heat_influx(x, y, t);
                      });
  }
  return rhs;
}

LinearSystem assemble_monolithic_slab(const SlabLayout& layout, const MaterialParams& p,
                                      const StateVector& prev, const LoadSpec& loads) {
  LinearSystem sys;
  sys.matrix = assemble_monolithic_matrix(layout, p);
  sys.rhs = assemble_monolithic_rhs(layout, p, prev, loads);
  return sys;
}

std::vector<double> dirichlet_values(const SlabLayout& layout, const LoadSpec& loads) {
  const Mesh& mesh = *layout.mesh;
  std::vector<double> values(layout.n_dofs(), 0.0);
  const double times[2] = {layout.t_start, layout.t_end};
  double out[2];
  for (int fp = 0; fp < layout.n_fields(); ++fp) {
    const Field f = layout.fields[fp].field;
    for (int n = 0; n < mesh.n_nodes(); ++n) {
      if (!layout.dirichlet[layout.index(fp, 0, n, 0)]) continue;
      const double x = mesh.coord(n, 0);
      const double y = mesh.dim == 2 ? mesh.coord(n, 1) : 0.0;
      for (int s = 0; s < 2; ++s) {
        if (f == Field::Displacement && loads.dirichlet_u) {
          loads.dirichlet_u(x, y, times[s], out);
          for (int c = 0; c < layout.fields[fp].comps; ++c)
            values[layout.index(fp, c, n, s)] = out[c];
        } else if (f == Field::Velocity && loads.dirichlet_u_rate) {
          loads.dirichlet_u_rate(x, y, times[s], out);
          for (int c = 0; c < layout.fields[fp].comps; ++c)
            values[layout.index(fp, c, n, s)] = out[c];
        } else if (f == Field::Temperature && loads.dirichlet_theta) {
          values[layout.index(fp, 0, n, s)] = loads.dirichlet_theta(x, y, times[s]);
        }
      }
    }
  }
  return values;
}

void set_dirichlet_value(std::vector<double>& values, const SlabLayout& layout, Field f, int node,
                         int comp, double v_start, double v_end) {
  const int fp = layout.find(f);
  if (fp < 0) throw std::invalid_argument("set_dirichlet_value: field not in layout");
  const int i0 = layout.index(fp, comp, node, 0);
  if (!layout.dirichlet[i0])
    throw std::invalid_argument("set_dirichlet_value: node is not tagged for this field");
  values[i0] = v_start;
  values[layout.index(fp, comp, node, 1)] = v_end;
}

LinearSystem apply_dirichlet(const LinearSystem& sys, const SlabLayout& layout,
                             std::span<const double> full_values) {
  const int n = layout.n_dofs();
  if (sys.matrix.rows != n || static_cast<int>(full_values.size()) != n)
    throw std::invalid_argument("apply_dirichlet: size mismatch");
  LinearSystem out;
  out.full_size = n;
  out.boundary_values.assign(full_values.begin(), full_values.end());
  std::vector<int> full_to_red(n, -1);
  for (int i = 0; i < n; ++i)
    if (!layout.dirichlet[i]) {
      full_to_red[i] = static_cast<int>(out.reduced_to_full.size());
      out.reduced_to_full.push_back(i);
    }
  const int nr = static_cast<int>(out.reduced_to_full.size());
  std::vector<SparseMatrix::Triplet> tris;
  tris.reserve(sys.matrix.nnz());
  out.rhs.assign(nr, 0.0);
  for (int i = 0; i < n; ++i) {
    if (full_to_red[i] < 0) continue;
    const int ir = full_to_red[i];
    out.rhs[ir] = sys.rhs[i];
    for (int k = sys.matrix.row_ptr[i]; k < sys.matrix.row_ptr[i + 1]; ++k) {
      const int j = sys.matrix.col_idx[k];
      if (full_to_red[j] >= 0)
        tris.push_back({ir, full_to_red[j], sys.matrix.vals[k]});
      else if (full_values[j] != 0.0)
        out.rhs[ir] -= sys.matrix.vals[k] * full_values[j];
    }
  }
  out.matrix = SparseMatrix::from_triplets(nr, nr, tris);
  return out;
}

LinearSystem apply_dirichlet(const LinearSystem& sys, const SlabLayout& layout,
                             const LoadSpec& loads) {
  return apply_dirichlet(sys, layout, dirichlet_values(layout, loads));
}

std::vector<double> expand_solution(const LinearSystem& reduced, std::span<const double> x) {
  if (reduced.full_size == 0)
    return std::vector<double>(x.begin(), x.end());
  if (x.size() != reduced.reduced_to_full.size())
    throw std::invalid_argument("expand_solution: size mismatch");
  std::vector<double> full = reduced.boundary_values;
  for (size_t i = 0; i < x.size(); ++i) full[reduced.reduced_to_full[i]] = x[i];
  return full;
}

void dump_system(const std::string& prefix, const LinearSystem& sys) {
  write_matrix_market(prefix + ".mtx", sys.matrix);
  std::ofstream os(prefix + "_rhs.mtx");
  if (!os) throw std::runtime_error("dump_system: cannot open " + prefix + "_rhs.mtx");
  os << "%%MatrixMarket matrix array real general\n";
  os << sys.rhs.size() << " 1\n";
  char buf[40];
  for (double v : sys.rhs) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << "\n";
  }
}

SlabSolution extract_slab_solution(const SlabLayout& layout, std::span<const double> coeffs,
                                   const StateVector& fill) {
  const Mesh& mesh = *layout.mesh;
  SlabSolution sol;
  sol.t_start = layout.t_start;
  sol.t_end = layout.t_end;
  sol.start_plus = fill;
  sol.end_minus = fill;
  sol.start_plus.time = layout.t_start;
  sol.end_minus.time = layout.t_end;
  const int d = mesh.dim;
  for (int fp = 0; fp < layout.n_fields(); ++fp) {
    const auto& fe = layout.fields[fp];
    for (int n = 0; n < mesh.n_nodes(); ++n)
      for (int c = 0; c < fe.comps; ++c) {
        const double a0 = coeffs[layout.index(fp, c, n, 0)];
        const double a1 = coeffs[layout.index(fp, c, n, 1)];
        switch (fe.field) {
          case Field::Displacement:
            sol.start_plus.u[n * d + c] = a0;
            sol.end_minus.u[n * d + c] = a1;
            break;
          case Field::Velocity:
            sol.start_plus.v[n * d + c] = a0;
            sol.end_minus.v[n * d + c] = a1;
            break;
          case Field::ThermalDisplacement:
            sol.start_plus.alpha[n] = a0;
            sol.end_minus.alpha[n] = a1;
            break;
          case Field::Temperature:
            sol.start_plus.theta[n] = a0;
            sol.end_minus.theta[n] = a1;
            break;
        }
      }
  }
  return sol;
}

}  // namespace tdg
