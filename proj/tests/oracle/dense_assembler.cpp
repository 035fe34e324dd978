// SPDX-License-Identifier: Apache-2.0
#include "oracle/dense_assembler.hpp"

#include <cmath>
#include <stdexcept>

namespace tdg::oracle {

namespace {

struct GaussPoint {
  double pos;
  double weight;
};

// 3-point Gauss-Legendre on [-1, 1]
const GaussPoint kGauss3[3] = {{-0.77459666924148337704, 5.0 / 9.0},
                               {0.0, 8.0 / 9.0},
                               {0.77459666924148337704, 5.0 / 9.0}};

struct Shape {
  double value[4];
  double ddx[4];
  double ddy[4];
  double jac;
  double x;
  double y;
};

Shape eval_shape(const Mesh& mesh, int e, double r, double s) {
  Shape sh{};
  const int* nd = mesh.elem(e);
  if (mesh.dim == 1) {
    const double xa = mesh.coord(nd[0], 0), xb = mesh.coord(nd[1], 0);
    sh.value[0] = 0.5 * (1.0 - r);
    sh.value[1] = 0.5 * (1.0 + r);
    sh.jac = 0.5 * (xb - xa);
    sh.ddx[0] = -1.0 / (xb - xa);
    sh.ddx[1] = 1.0 / (xb - xa);
    sh.x = sh.value[0] * xa + sh.value[1] * xb;
    return sh;
  }
  const double rs[4] = {-1.0, 1.0, 1.0, -1.0};
  const double ss[4] = {-1.0, -1.0, 1.0, 1.0};
  double dr[4], ds[4];
  for (int a = 0; a < 4; ++a) {
    sh.value[a] = 0.25 * (1.0 + rs[a] * r) * (1.0 + ss[a] * s);
    dr[a] = 0.25 * rs[a] * (1.0 + ss[a] * s);
    ds[a] = 0.25 * ss[a] * (1.0 + rs[a] * r);
  }
  double xr = 0, xs = 0, yr = 0, ys = 0;
  for (int a = 0; a < 4; ++a) {
    const double xa = mesh.coord(nd[a], 0), ya = mesh.coord(nd[a], 1);
    xr += dr[a] * xa;
    xs += ds[a] * xa;
    yr += dr[a] * ya;
    ys += ds[a] * ya;
    sh.x += sh.value[a] * xa;
    sh.y += sh.value[a] * ya;
  }
  sh.jac = xr * ys - xs * yr;
  for (int a = 0; a < 4; ++a) {
    sh.ddx[a] = (dr[a] * ys - ds[a] * yr) / sh.jac;
    sh.ddy[a] = (ds[a] * xr - dr[a] * xs) / sh.jac;
  }
  return sh;
}

double coupling_scalar(const MaterialParams& p) {
  return 3.0 * p.omega * (p.lambda + 2.0 * p.mu / 3.0);
}

// stiffness entries, componentwise: sigma(strain basis of (node a, comp ca))
// contracted with strain basis of (node b, comb cb)
double stiffness_pair(const MaterialParams& p, const Shape& sh, int a, int ca, int b, int cb,
                      bool adiabatic) {
  const double madd = adiabatic
                          ? p.theta0 / p.c * coupling_scalar(p) * coupling_scalar(p)
                          : 0.0;
  if (p.dim == 1) return (p.lambda + 2.0 * p.mu + madd) * sh.ddx[a] * sh.ddx[b];
  const double ea[3] = {ca == 0 ? sh.ddx[a] : 0.0, ca == 1 ? sh.ddy[a] : 0.0,
                        ca == 0 ? sh.ddy[a] : sh.ddx[a]};
  const double eb[3] = {cb == 0 ? sh.ddx[b] : 0.0, cb == 1 ? sh.ddy[b] : 0.0,
                        cb == 0 ? sh.ddy[b] : sh.ddx[b]};
  double c[3][3] = {{p.lambda + 2.0 * p.mu + madd, p.lambda + madd, 0.0},
                    {p.lambda + madd, p.lambda + 2.0 * p.mu + madd, 0.0},
                    {0.0, 0.0, p.mu}};
  double acc = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += ea[i] * c[i][j] * eb[j];
  return acc;
}

double div_of(const Mesh& mesh, const Shape& sh, int e, const std::vector<double>& vec) {
  const int* nd = mesh.elem(e);
  double acc = 0.0;
  for (int a = 0; a < mesh.nodes_per_elem; ++a) {
    acc += sh.ddx[a] * vec[nd[a] * mesh.dim + 0];
    if (mesh.dim == 2) acc += sh.ddy[a] * vec[nd[a] * mesh.dim + 1];
  }
  return acc;
}

double value_of(const Mesh& mesh, const Shape& sh, int e, const std::vector<double>& scal) {
  const int* nd = mesh.elem(e);
  double acc = 0.0;
  for (int a = 0; a < mesh.nodes_per_elem; ++a) acc += sh.value[a] * scal[nd[a]];
  return acc;
}

// all space-time quadrature points of one element
template <typename F>
void quad_space(const Mesh& mesh, int e, F&& fn) {
  if (mesh.dim == 1) {
    for (const auto& g : kGauss3) {
      const Shape sh = eval_shape(mesh, e, g.pos, 0.0);
      fn(sh, g.weight * sh.jac);
    }
    return;
  }
  for (const auto& gr : kGauss3)
    for (const auto& gs : kGauss3) {
      const Shape sh = eval_shape(mesh, e, gr.pos, gs.pos);
      fn(sh, gr.weight * gs.weight * sh.jac);
    }
}

template <typename F>
void quad_time(double t0, double t1, F&& fn) {
  const double dt = t1 - t0;
  for (const auto& g : kGauss3) {
    const double tau = 0.5 * (g.pos + 1.0);
    const double t = t0 + tau * dt;
    const double psi[2] = {1.0 - tau, tau};
    const double dpsi[2] = {-1.0 / dt, 1.0 / dt};
    fn(t, psi, dpsi, 0.5 * g.weight * dt);
  }
}

// boundary quadrature over edges whose nodes all carry the tag (1D: points)
template <typename F>
void quad_boundary(const Mesh& mesh, const std::vector<uint8_t>& tag, F&& fn) {
  if (mesh.dim == 1) {
    for (int n : {0, mesh.n_nodes() - 1})
      if (tag[n]) {
        Shape sh{};
        sh.value[0] = 1.0;  // slot 1 stays zero
        sh.x = mesh.coord(n, 0);
        fn(std::array<int, 2>{n, n}, sh, 1.0);
      }
    return;
  }
  const int nnx = mesh.nx + 1;
  auto node_at = [&](int i, int j) { return j * nnx + i; };
  auto do_edge = [&](int na, int nb) {
    if (!tag[na] || !tag[nb]) return;
    const double ax = mesh.coord(na, 0), ay = mesh.coord(na, 1);
    const double bx = mesh.coord(nb, 0), by = mesh.coord(nb, 1);
    const double half_len = 0.5 * std::sqrt((bx - ax) * (bx - ax) + (by - ay) * (by - ay));
    for (const auto& g : kGauss3) {
      Shape sh{};
      sh.value[0] = 0.5 * (1.0 - g.pos);
      sh.value[1] = 0.5 * (1.0 + g.pos);
      sh.x = sh.value[0] * ax + sh.value[1] * bx;
      sh.y = sh.value[0] * ay + sh.value[1] * by;
      fn(std::array<int, 2>{na, nb}, sh, g.weight * half_len);
    }
  };
  for (int i = 0; i < mesh.nx; ++i) {
    do_edge(node_at(i, 0), node_at(i + 1, 0));
    do_edge(node_at(i, mesh.ny), node_at(i + 1, mesh.ny));
  }
  for (int j = 0; j < mesh.ny; ++j) {
    do_edge(node_at(0, j), node_at(0, j + 1));
    do_edge(node_at(mesh.nx, j), node_at(mesh.nx, j + 1));
  }
}

DenseSystem empty_system(const SlabLayout& layout) {
  DenseSystem sys;
  const int n = layout.n_dofs();
  sys.a.assign(n, std::vector<double>(n, 0.0));
  sys.rhs.assign(n, 0.0);
  return sys;
}

}  // namespace

DenseSystem mechanical(const SlabLayout& layout, const MaterialParams& p, const StateVector& prev,
                       const LoadSpec& loads) {
  const Mesh& mesh = *layout.mesh;
  const int d = mesh.dim;
  const int fu = 0, fv = 1;
  const double m = coupling_scalar(p);
  DenseSystem sys = empty_system(layout);
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* nd = mesh.elem(e);
    quad_space(mesh, e, [&](const Shape& sh, double wx) {
      quad_time(layout.t_start, layout.t_end, [&](double t, const double* psi, const double* dpsi,
                                                  double wt) {
        for (int a = 0; a < mesh.nodes_per_elem; ++a)
          for (int b = 0; b < mesh.nodes_per_elem; ++b)
            for (int sa = 0; sa < 2; ++sa)
              for (int sb = 0; sb < 2; ++sb) {
                const double w = wx * wt;
                for (int c = 0; c < d; ++c) {
                  const int row_w = layout.index(fu, c, nd[b], sb);
                  const int row_phi = layout.index(fv, c, nd[b], sb);
                  // (du/dt, w) - (v, w)
                  sys.a[row_w][layout.index(fu, c, nd[a], sa)] +=
                      w * dpsi[sa] * psi[sb] * sh.value[a] * sh.value[b];
                  sys.a[row_w][layout.index(fv, c, nd[a], sa)] -=
                      w * psi[sa] * psi[sb] * sh.value[a] * sh.value[b];
                  // (rho dv/dt, phi)
                  sys.a[row_phi][layout.index(fv, c, nd[a], sa)] +=
                      w * p.rho * dpsi[sa] * psi[sb] * sh.value[a] * sh.value[b];
                }
                // (C_ad eps(u), eps(phi))
                for (int ca = 0; ca < d; ++ca)
                  for (int cb = 0; cb < d; ++cb)
                    sys.a[layout.index(fv, cb, nd[b], sb)][layout.index(fu, ca, nd[a], sa)] +=
                        w * psi[sa] * psi[sb] * stiffness_pair(p, sh, a, ca, b, cb, true);
              }
        // sources: rho b and the frozen thermal stress against eps(phi)
        double bvec[2] = {0.0, 0.0};
        if (loads.body_force) loads.body_force(sh.x, sh.y, t, bvec);
        const double theta_tilde =
            value_of(mesh, sh, e, prev.theta) + p.theta0 / p.c * m * div_of(mesh, sh, e, prev.u);
        for (int b = 0; b < mesh.nodes_per_elem; ++b)
          for (int sb = 0; sb < 2; ++sb)
            for (int c = 0; c < d; ++c) {
              const double grad_bc = c == 0 ? sh.ddx[b] : sh.ddy[b];
              sys.rhs[layout.index(fv, c, nd[b], sb)] +=
                  wx * wt * psi[sb] * (p.rho * bvec[c] * sh.value[b] + m * theta_tilde * grad_bc);
            }
      });
      // trace pairings at the slab start
      for (int a = 0; a < mesh.nodes_per_elem; ++a)
        for (int b = 0; b < mesh.nodes_per_elem; ++b)
          for (int c = 0; c < d; ++c) {
            const double w = wx * sh.value[a] * sh.value[b];
            sys.a[layout.index(fu, c, nd[b], 0)][layout.index(fu, c, nd[a], 0)] += w;
            sys.a[layout.index(fv, c, nd[b], 0)][layout.index(fv, c, nd[a], 0)] += p.rho * w;
            sys.rhs[layout.index(fu, c, nd[b], 0)] += w * prev.u[nd[a] * d + c];
            sys.rhs[layout.index(fv, c, nd[b], 0)] += p.rho * w * prev.v[nd[a] * d + c];
          }
    });
  }
  if (loads.traction) {
    quad_boundary(mesh, mesh.gamma_t, [&](const std::array<int, 2>& nodes, const Shape& sh,
                                          double wx) {
      quad_time(layout.t_start, layout.t_end,
                [&](double t, const double* psi, const double*, double wt) {
                  double tr[2] = {0.0, 0.0};
                  loads.traction(sh.x, sh.y, t, tr);
                  for (int slot = 0; slot < 2; ++slot)
                    for (int c = 0; c < d; ++c)
                      for (int sb = 0; sb < 2; ++sb)
                        sys.rhs[layout.index(fv, c, nodes[slot], sb)] +=
                            wx * wt * psi[sb] * sh.value[slot] * tr[c];
                });
    });
  }
  return sys;
}

DenseSystem thermal(const SlabLayout& layout, const MaterialParams& p, const StateVector& prev,
                    const std::vector<double>& u_frozen, const LoadSpec& loads) {
  const Mesh& mesh = *layout.mesh;
  const int fa = 0, ft = 1;
  const double m = coupling_scalar(p);
  const double gauge = p.gauge == AlphaGauge::AbsoluteTemperature ? p.theta0 : 0.0;
  DenseSystem sys = empty_system(layout);
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* nd = mesh.elem(e);
    quad_space(mesh, e, [&](const Shape& sh, double wx) {
      quad_time(layout.t_start, layout.t_end, [&](double t, const double* psi, const double* dpsi,
                                                  double wt) {
        const double w = wx * wt;
        for (int a = 0; a < mesh.nodes_per_elem; ++a)
          for (int b = 0; b < mesh.nodes_per_elem; ++b)
            for (int sa = 0; sa < 2; ++sa)
              for (int sb = 0; sb < 2; ++sb) {
                const int row_beta = layout.index(fa, 0, nd[b], sb);
                const int row_sigma = layout.index(ft, 0, nd[b], sb);
                // (dalpha/dt, beta) - (theta, beta)
                sys.a[row_beta][layout.index(fa, 0, nd[a], sa)] +=
                    w * dpsi[sa] * psi[sb] * sh.value[a] * sh.value[b];
                sys.a[row_beta][layout.index(ft, 0, nd[a], sa)] -=
                    w * psi[sa] * psi[sb] * sh.value[a] * sh.value[b];
                // (rho c dtheta/dt, sigma)
                sys.a[row_sigma][layout.index(ft, 0, nd[a], sa)] +=
                    w * p.rho * p.c * dpsi[sa] * psi[sb] * sh.value[a] * sh.value[b];
                // conduction
                const double grad_pair = sh.ddx[a] * sh.ddx[b] + sh.ddy[a] * sh.ddy[b];
                sys.a[row_sigma][layout.index(fa, 0, nd[a], sa)] +=
                    w * psi[sa] * psi[sb] * p.k2 * grad_pair;
                sys.a[row_sigma][layout.index(ft, 0, nd[a], sa)] +=
                    w * psi[sa] * psi[sb] * p.k3 * grad_pair;
              }
        const double r = loads.heat_source ? loads.heat_source(sh.x, sh.y, t) : 0.0;
        for (int b = 0; b < mesh.nodes_per_elem; ++b)
          for (int sb = 0; sb < 2; ++sb) {
            sys.rhs[layout.index(ft, 0, nd[b], sb)] += w * psi[sb] * p.rho * r * sh.value[b];
            sys.rhs[layout.index(fa, 0, nd[b], sb)] += w * psi[sb] * gauge * sh.value[b];
          }
      });
      // trace pairings and the entropy-jump strain correction
      const double strain_corr =
          p.rho * p.theta0 * m * (div_of(mesh, sh, e, prev.u) - div_of(mesh, sh, e, u_frozen));
      for (int b = 0; b < mesh.nodes_per_elem; ++b)
        sys.rhs[layout.index(ft, 0, nd[b], 0)] += wx * strain_corr * sh.value[b];
      for (int a = 0; a < mesh.nodes_per_elem; ++a)
        for (int b = 0; b < mesh.nodes_per_elem; ++b) {
          const double w = wx * sh.value[a] * sh.value[b];
          sys.a[layout.index(fa, 0, nd[b], 0)][layout.index(fa, 0, nd[a], 0)] += w;
          sys.a[layout.index(ft, 0, nd[b], 0)][layout.index(ft, 0, nd[a], 0)] += p.rho * p.c * w;
          sys.rhs[layout.index(fa, 0, nd[b], 0)] += w * prev.alpha[nd[a]];
          sys.rhs[layout.index(ft, 0, nd[b], 0)] += p.rho * p.c * w * prev.theta[nd[a]];
        }
    });
  }
  if (loads.boundary_heat_influx) {
    quad_boundary(mesh, mesh.gamma_q, [&](const std::array<int, 2>& nodes, const Shape& sh,
                                          double wx) {
      quad_time(layout.t_start, layout.t_end,
                [&](double t, const double* psi, const double*, double wt) {
                  const double h = loads.boundary_heat_influx(sh.x, sh.y, t);
                  for (int slot = 0; slot < 2; ++slot)
                    for (int sb = 0; sb < 2; ++sb)
                      sys.rhs[layout.index(ft, 0, nodes[slot], sb)] +=
                          wx * wt * psi[sb] * sh.value[slot] * h;
                });
    });
  }
  return sys;
}

DenseSystem monolithic(const SlabLayout& layout, const MaterialParams& p, const StateVector& prev,
                       const LoadSpec& loads) {
  const Mesh& mesh = *layout.mesh;
  const int d = mesh.dim;
  const int fu = 0, fv = 1, fa = 2, ft = 3;
  const double m = coupling_scalar(p);
  const double gauge = p.gauge == AlphaGauge::AbsoluteTemperature ? p.theta0 : 0.0;
  DenseSystem sys = empty_system(layout);
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* nd = mesh.elem(e);
    quad_space(mesh, e, [&](const Shape& sh, double wx) {
      quad_time(layout.t_start, layout.t_end, [&](double t, const double* psi, const double* dpsi,
                                                  double wt) {
        const double w = wx * wt;
        for (int a = 0; a < mesh.nodes_per_elem; ++a)
          for (int b = 0; b < mesh.nodes_per_elem; ++b)
            for (int sa = 0; sa < 2; ++sa)
              for (int sb = 0; sb < 2; ++sb) {
                const double nn = sh.value[a] * sh.value[b];
                for (int c = 0; c < d; ++c) {
                  sys.a[layout.index(fu, c, nd[b], sb)][layout.index(fu, c, nd[a], sa)] +=
                      w * dpsi[sa] * psi[sb] * nn;
                  sys.a[layout.index(fu, c, nd[b], sb)][layout.index(fv, c, nd[a], sa)] -=
                      w * psi[sa] * psi[sb] * nn;
                  sys.a[layout.index(fv, c, nd[b], sb)][layout.index(fv, c, nd[a], sa)] +=
                      w * p.rho * dpsi[sa] * psi[sb] * nn;
                }
                for (int ca = 0; ca < d; ++ca)
                  for (int cb = 0; cb < d; ++cb)
                    sys.a[layout.index(fv, cb, nd[b], sb)][layout.index(fu, ca, nd[a], sa)] +=
                        w * psi[sa] * psi[sb] * stiffness_pair(p, sh, a, ca, b, cb, false);
                // -(m theta, eps(phi)) with isotropic coupling: m * div(phi)
                for (int cb = 0; cb < d; ++cb) {
                  const double grad_bc = cb == 0 ? sh.ddx[b] : sh.ddy[b];
                  sys.a[layout.index(fv, cb, nd[b], sb)][layout.index(ft, 0, nd[a], sa)] -=
                      w * psi[sa] * psi[sb] * m * sh.value[a] * grad_bc;
                }
                const double row_sigma_nn = p.rho * p.c * dpsi[sa] * psi[sb] * nn;
                sys.a[layout.index(fa, 0, nd[b], sb)][layout.index(fa, 0, nd[a], sa)] +=
                    w * dpsi[sa] * psi[sb] * nn;
                sys.a[layout.index(fa, 0, nd[b], sb)][layout.index(ft, 0, nd[a], sa)] -=
                    w * psi[sa] * psi[sb] * nn;
                sys.a[layout.index(ft, 0, nd[b], sb)][layout.index(ft, 0, nd[a], sa)] +=
                    w * row_sigma_nn;
                const double grad_pair = sh.ddx[a] * sh.ddx[b] + sh.ddy[a] * sh.ddy[b];
                sys.a[layout.index(ft, 0, nd[b], sb)][layout.index(fa, 0, nd[a], sa)] +=
                    w * psi[sa] * psi[sb] * p.k2 * grad_pair;
                sys.a[layout.index(ft, 0, nd[b], sb)][layout.index(ft, 0, nd[a], sa)] +=
                    w * psi[sa] * psi[sb] * p.k3 * grad_pair;
                // entropy form: rho theta0 m div(du/dt) against sigma
                for (int ca = 0; ca < d; ++ca) {
                  const double grad_ac = ca == 0 ? sh.ddx[a] : sh.ddy[a];
                  sys.a[layout.index(ft, 0, nd[b], sb)][layout.index(fu, ca, nd[a], sa)] +=
                      w * p.rho * p.theta0 * m * dpsi[sa] * psi[sb] * grad_ac * sh.value[b];
                }
              }
        double bvec[2] = {0.0, 0.0};
        if (loads.body_force) loads.body_force(sh.x, sh.y, t, bvec);
        const double r = loads.heat_source ? loads.heat_source(sh.x, sh.y, t) : 0.0;
        for (int b = 0; b < mesh.nodes_per_elem; ++b)
          for (int sb = 0; sb < 2; ++sb) {
            for (int c = 0; c < d; ++c)
              sys.rhs[layout.index(fv, c, nd[b], sb)] +=
                  w * psi[sb] * p.rho * bvec[c] * sh.value[b];
            sys.rhs[layout.index(ft, 0, nd[b], sb)] += w * psi[sb] * p.rho * r * sh.value[b];
            sys.rhs[layout.index(fa, 0, nd[b], sb)] += w * psi[sb] * gauge * sh.value[b];
          }
      });
      // trace pairings at the slab start, including the entropy strain term
      const double div_prev = div_of(mesh, sh, e, prev.u);
      for (int a = 0; a < mesh.nodes_per_elem; ++a)
        for (int b = 0; b < mesh.nodes_per_elem; ++b) {
          const double nn = wx * sh.value[a] * sh.value[b];
          for (int c = 0; c < d; ++c) {
            sys.a[layout.index(fu, c, nd[b], 0)][layout.index(fu, c, nd[a], 0)] += nn;
            sys.a[layout.index(fv, c, nd[b], 0)][layout.index(fv, c, nd[a], 0)] += p.rho * nn;
            sys.rhs[layout.index(fu, c, nd[b], 0)] += nn * prev.u[nd[a] * d + c];
            sys.rhs[layout.index(fv, c, nd[b], 0)] += p.rho * nn * prev.v[nd[a] * d + c];
          }
          sys.a[layout.index(fa, 0, nd[b], 0)][layout.index(fa, 0, nd[a], 0)] += nn;
          sys.a[layout.index(ft, 0, nd[b], 0)][layout.index(ft, 0, nd[a], 0)] += p.rho * p.c * nn;
          sys.rhs[layout.index(fa, 0, nd[b], 0)] += nn * prev.alpha[nd[a]];
          sys.rhs[layout.index(ft, 0, nd[b], 0)] += p.rho * p.c * nn * prev.theta[nd[a]];
          for (int ca = 0; ca < d; ++ca) {
            const double grad_ac = ca == 0 ? sh.ddx[a] : sh.ddy[a];
            sys.a[layout.index(ft, 0, nd[b], 0)][layout.index(fu, ca, nd[a], 0)] +=
                wx * p.rho * p.theta0 * m * grad_ac * sh.value[b];
          }
        }
      for (int b = 0; b < mesh.nodes_per_elem; ++b)
        sys.rhs[layout.index(ft, 0, nd[b], 0)] +=
            wx * p.rho * p.theta0 * m * div_prev * sh.value[b];
    });
  }
  if (loads.traction) {
    quad_boundary(mesh, mesh.gamma_t,
                  [&](const std::array<int, 2>& nodes, const Shape& sh, double wx) {
                    quad_time(layout.t_start, layout.t_end,
                              [&](double t, const double* psi, const double*, double wt) {
                                double tr[2] = {0.0, 0.0};
                                loads.traction(sh.x, sh.y, t, tr);
                                for (int slot = 0; slot < 2; ++slot)
                                  for (int c = 0; c < d; ++c)
                                    for (int sb = 0; sb < 2; ++sb)
                                      sys.rhs[layout.index(fv, c, nodes[slot], sb)] +=
                                          wx * wt * psi[sb] * sh.value[slot] * tr[c];
                              });
                  });
  }
  if (loads.boundary_heat_influx) {
    quad_boundary(mesh, mesh.gamma_q,
                  [&](const std::array<int, 2>& nodes, const Shape& sh, double wx) {
                    quad_time(layout.t_start, layout.t_end,
                              [&](double t, const double* psi, const double*, double wt) {
                                const double h = loads.boundary_heat_influx(sh.x, sh.y, t);
                                for (int slot = 0; slot < 2; ++slot)
                                  for (int sb = 0; sb < 2; ++sb)
                                    sys.rhs[layout.index(ft, 0, nodes[slot], sb)] +=
                                        wx * wt * psi[sb] * sh.value[slot] * h;
                              });
                  });
  }
  return sys;
}

std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) throw std::runtime_error("dense_solve: singular");
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (int i = k + 1; i < n; ++i) {
      const double l = a[i][k] / a[k][k];
      if (l == 0.0) continue;
      for (int j = k; j < n; ++j) a[i][j] -= l * a[k][j];
      b[i] -= l * b[k];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace tdg::oracle
