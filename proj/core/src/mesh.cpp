// SPDX-License-Identifier: Apache-2.0
#include "tdg/mesh.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tdg {

namespace {
constexpr double kGauss2 = 0.57735026918962576451;  // 1/sqrt(3)
}

QuadratureRule QuadratureRule::gauss_interval(int npts) {
  QuadratureRule q;
  q.dim = 1;
  switch (npts) {
    case 1:
      q.points = {{0.0, 0.0}};
      q.weights = {2.0};
      break;
    case 2:
      q.points = {{-kGauss2, 0.0}, {kGauss2, 0.0}};
      q.weights = {1.0, 1.0};
      break;
    case 3: {
      const double r = std::sqrt(3.0 / 5.0);
      q.points = {{-r, 0.0}, {0.0, 0.0}, {r, 0.0}};
      q.weights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      break;
    }
    default:
      throw std::invalid_argument("gauss_interval: unsupported point count");
  }
  return q;
}

QuadratureRule QuadratureRule::gauss_quad(int npts_per_dir) {
  QuadratureRule line = gauss_interval(npts_per_dir);
  QuadratureRule q;
  q.dim = 2;
  for (size_t j = 0; j < line.points.size(); ++j)
    for (size_t i = 0; i < line.points.size(); ++i) {
      q.points.push_back({line.points[i][0], line.points[j][0]});
      q.weights.push_back(line.weights[i] * line.weights[j]);
    }
  return q;
}

TimeQuadrature::TimeQuadrature() {
  tau = {0.5 * (1.0 - kGauss2), 0.5 * (1.0 + kGauss2)};
  w = {0.5, 0.5};
}

Mesh Mesh::interval(double length, int n_elems) {
  if (n_elems < 1) throw std::invalid_argument("Mesh::interval: need at least one element");
  if (!(length > 0.0)) throw std::invalid_argument("Mesh::interval: length must be > 0");
  Mesh m;
  m.dim = 1;
  m.nodes_per_elem = 2;
  m.nx = n_elems;
  m.x0 = 0.0;
  m.x1 = length;
  const int n = n_elems + 1;
  m.coords.resize(n);
  for (int i = 0; i < n; ++i) m.coords[i] = length * i / n_elems;
  m.conn.resize(static_cast<size_t>(n_elems) * 2);
  for (int e = 0; e < n_elems; ++e) {
    m.conn[2 * e] = e;
    m.conn[2 * e + 1] = e + 1;
  }
  m.on_boundary.assign(n, 0);
  m.on_boundary.front() = 1;
  m.on_boundary.back() = 1;
  m.gamma_u = m.on_boundary;
  m.gamma_theta = m.on_boundary;
  m.gamma_t.assign(n, 0);
  m.gamma_q.assign(n, 0);
  return m;
}

Mesh Mesh::quad(double x0, double x1, double y0, double y1, int nx, int ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("Mesh::quad: need at least one element per direction");
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("Mesh::quad: degenerate range");
  Mesh m;
  m.dim = 2;
  m.nodes_per_elem = 4;
  m.nx = nx;
  m.ny = ny;
  m.x0 = x0;
  m.x1 = x1;
  m.y0 = y0;
  m.y1 = y1;
  const int nnx = nx + 1, nny = ny + 1;
  m.coords.resize(static_cast<size_t>(nnx) * nny * 2);
  for (int j = 0; j < nny; ++j)
    for (int i = 0; i < nnx; ++i) {
      const int n = j * nnx + i;
      m.coords[2 * n] = x0 + (x1 - x0) * i / nx;
      m.coords[2 * n + 1] = y0 + (y1 - y0) * j / ny;
    }
  m.conn.resize(static_cast<size_t>(nx) * ny * 4);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int e = j * nx + i;
      const int n0 = j * nnx + i;
      // counter-clockwise
      m.conn[4 * e] = n0;
      m.conn[4 * e + 1] = n0 + 1;
      m.conn[4 * e + 2] = n0 + 1 + nnx;
      m.conn[4 * e + 3] = n0 + nnx;
    }
  const int n = nnx * nny;
  m.on_boundary.assign(n, 0);
  for (int j = 0; j < nny; ++j)
    for (int i = 0; i < nnx; ++i)
      if (i == 0 || i == nx || j == 0 || j == ny) m.on_boundary[j * nnx + i] = 1;
  m.gamma_u = m.on_boundary;
  m.gamma_theta = m.on_boundary;
  m.gamma_t.assign(n, 0);
  m.gamma_q.assign(n, 0);
  return m;
}

void Mesh::tag_boundary(const std::function<bool(double, double)>& in_gamma_u,
                        const std::function<bool(double, double)>& in_gamma_theta) {
  const int n = n_nodes();
  gamma_u.assign(n, 0);
  gamma_t.assign(n, 0);
  gamma_theta.assign(n, 0);
  gamma_q.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!on_boundary[i]) continue;
    const double x = coord(i, 0);
    const double y = dim == 2 ? coord(i, 1) : 0.0;
    if (in_gamma_u(x, y))
      gamma_u[i] = 1;
    else
      gamma_t[i] = 1;
    if (in_gamma_theta(x, y))
      gamma_theta[i] = 1;
    else
      gamma_q[i] = 1;
  }
}

void Mesh::validate() const {
  const QuadratureRule q =
      dim == 1 ? QuadratureRule::gauss_interval(2) : QuadratureRule::gauss_quad(2);
  for (int e = 0; e < n_elems(); ++e)
    for (size_t g = 0; g < q.points.size(); ++g) {
      const ShapeEval s = shape_eval(*this, e, q.points[g][0], q.points[g][1]);
      if (!(s.jac_det > 0.0)) throw std::runtime_error("Mesh: non-positive Jacobian");
    }
  for (int i = 0; i < n_nodes(); ++i) {
    const bool u_part = (gamma_u[i] || gamma_t[i]) && !(gamma_u[i] && gamma_t[i]);
    const bool th_part = (gamma_theta[i] || gamma_q[i]) && !(gamma_theta[i] && gamma_q[i]);
    if (on_boundary[i] && (!u_part || !th_part))
      throw std::runtime_error("Mesh: boundary partition invariant violated");
    if (!on_boundary[i] && (gamma_u[i] || gamma_t[i] || gamma_theta[i] || gamma_q[i]))
      throw std::runtime_error("Mesh: interior node carries a boundary tag");
  }
}

std::string Mesh::to_text() const {
  std::ostringstream os;
  os << "nodes " << n_nodes() << "\n";
  for (int i = 0; i < n_nodes(); ++i) {
    os << i;
    for (int c = 0; c < dim; ++c) os << " " << coord(i, c);
    os << "\n";
  }
  os << "elements " << n_elems() << "\n";
  for (int e = 0; e < n_elems(); ++e) {
    os << e;
    for (int a = 0; a < nodes_per_elem; ++a) os << " " << elem(e)[a];
    os << "\n";
  }
  return os.str();
}

ShapeEval shape_eval(const Mesh& mesh, int elem, double r, double s) {
  ShapeEval out;
  const int* nodes = mesh.elem(elem);
  if (mesh.dim == 1) {
    out.n = 2;
    const double xa = mesh.coord(nodes[0], 0);
    const double xb = mesh.coord(nodes[1], 0);
    const double jac = 0.5 * (xb - xa);
    if (jac <= 0.0) throw std::runtime_error("shape_eval: singular Jacobian");
    out.value = {0.5 * (1.0 - r), 0.5 * (1.0 + r), 0.0, 0.0};
    out.grad[0][0] = -0.5 / jac;
    out.grad[1][0] = 0.5 / jac;
    out.jac_det = jac;
    return out;
  }
  out.n = 4;
  const std::array<double, 4> rn = {-1.0, 1.0, 1.0, -1.0};
  const std::array<double, 4> sn = {-1.0, -1.0, 1.0, 1.0};
  std::array<double, 4> dNdr, dNds;
  for (int a = 0; a < 4; ++a) {
    out.value[a] = 0.25 * (1.0 + rn[a] * r) * (1.0 + sn[a] * s);
    dNdr[a] = 0.25 * rn[a] * (1.0 + sn[a] * s);
    dNds[a] = 0.25 * sn[a] * (1.0 + rn[a] * r);
  }
  double j00 = 0, j01 = 0, j10 = 0, j11 = 0;  // dx/dr dx/ds; dy/dr dy/ds
  for (int a = 0; a < 4; ++a) {
    const double x = mesh.coord(nodes[a], 0);
    const double y = mesh.coord(nodes[a], 1);
    j00 += dNdr[a] * x;
    j10 += dNds[a] * x;
    j01 += dNdr[a] * y;
    j11 += dNds[a] * y;
  }
  const double det = j00 * j11 - j01 * j10;
  if (det <= 0.0) throw std::runtime_error("shape_eval: singular Jacobian");
  // inverse Jacobian maps reference gradients to physical ones
  const double i00 = j11 / det, i01 = -j01 / det, i10 = -j10 / det, i11 = j00 / det;
  for (int a = 0; a < 4; ++a) {
    out.grad[a][0] = i00 * dNdr[a] + i01 * dNds[a];
    out.grad[a][1] = i10 * dNdr[a] + i11 * dNds[a];
  }
  out.jac_det = det;
  return out;
}

int SlabLayout::find(Field f) const {
  for (size_t i = 0; i < fields.size(); ++i)
    if (fields[i].field == f) return static_cast<int>(i);
  return -1;
}

namespace {

SlabLayout make_layout(const Mesh& mesh, double t0, double t1,
                       const std::vector<std::pair<Field, int>>& parts) {
  if (!(t1 > t0)) throw std::invalid_argument("SlabLayout: t_end must exceed t_start");
  SlabLayout l;
  l.mesh = &mesh;
  l.t_start = t0;
  l.t_end = t1;
  int off = 0;
  for (const auto& [f, comps] : parts) {
    l.fields.push_back({f, comps, off});
    off += comps * 2;
  }
  l.per_node = off;
  l.dirichlet.assign(static_cast<size_t>(mesh.n_nodes()) * l.per_node, 0);
  for (int fp = 0; fp < l.n_fields(); ++fp) {
    const Field f = l.fields[fp].field;
    const std::vector<uint8_t>* mask = nullptr;
    // The velocity trace is pinned to the rate of the displacement datum on
    // gamma_u: with a free velocity space the slab jump pairings lose the
    // exact energy balance and the scheme is observably energy-growing.
    if (f == Field::Displacement || f == Field::Velocity) mask = &mesh.gamma_u;
    if (f == Field::Temperature) mask = &mesh.gamma_theta;
    if (!mask) continue;
    for (int n = 0; n < mesh.n_nodes(); ++n) {
      if (!(*mask)[n]) continue;
      for (int c = 0; c < l.fields[fp].comps; ++c)
        for (int s = 0; s < 2; ++s) l.dirichlet[l.index(fp, c, n, s)] = 1;
    }
  }
  return l;
}

}  // namespace

SlabLayout SlabLayout::mechanical(const Mesh& mesh, double t0, double t1) {
  return make_layout(mesh, t0, t1,
                     {{Field::Displacement, mesh.dim}, {Field::Velocity, mesh.dim}});
}

SlabLayout SlabLayout::thermal(const Mesh& mesh, double t0, double t1) {
  return make_layout(mesh, t0, t1,
                     {{Field::ThermalDisplacement, 1}, {Field::Temperature, 1}});
}

SlabLayout SlabLayout::monolithic(const Mesh& mesh, double t0, double t1) {
  return make_layout(mesh, t0, t1,
                     {{Field::Displacement, mesh.dim},
                      {Field::Velocity, mesh.dim},
                      {Field::ThermalDisplacement, 1},
                      {Field::Temperature, 1}});
}

}  // namespace tdg
