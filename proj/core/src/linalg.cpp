// SPDX-License-Identifier: Apache-2.0
#include "tdg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tdg {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, const std::vector<Triplet>& ts) {
  SparseMatrix a;
  a.rows = rows;
  a.cols = cols;
  std::vector<int> count(rows, 0);
  for (const auto& t : ts) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("from_triplets: index out of range");
    ++count[t.row];
  }
  std::vector<int> start(rows + 1, 0);
  for (int i = 0; i < rows; ++i) start[i + 1] = start[i] + count[i];
  std::vector<int> cidx(ts.size());
  std::vector<double> cval(ts.size());
  std::vector<int> fill(start.begin(), start.end() - 1);
  for (const auto& t : ts) {
    const int p = fill[t.row]++;
    cidx[p] = t.col;
    cval[p] = t.value;
  }
  a.row_ptr.assign(rows + 1, 0);
  for (int i = 0; i < rows; ++i) {
    const int lo = start[i], hi = start[i + 1];
    std::vector<int> order(hi - lo);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return cidx[lo + x] < cidx[lo + y]; });
    int prev = -1;
    for (int k : order) {
      const int col = cidx[lo + k];
      const double v = cval[lo + k];
      if (col == prev) {
        a.vals.back() += v;
      } else {
        a.col_idx.push_back(col);
        a.vals.push_back(v);
        prev = col;
      }
    }
    a.row_ptr[i + 1] = static_cast<int>(a.col_idx.size());
  }
  return a;
}

double SparseMatrix::at(int i, int j) const {
  for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
    if (col_idx[k] == j) return vals[k];
  return 0.0;
}

void SparseMatrix::validate() const {
  if (static_cast<int>(row_ptr.size()) != rows + 1)
    throw std::runtime_error("SparseMatrix: bad row_ptr length");
  for (int i = 0; i < rows; ++i) {
    if (row_ptr[i] > row_ptr[i + 1]) throw std::runtime_error("SparseMatrix: offsets not monotone");
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (k > row_ptr[i] && col_idx[k - 1] >= col_idx[k])
        throw std::runtime_error("SparseMatrix: columns not sorted/unique");
      if (col_idx[k] < 0 || col_idx[k] >= cols)
        throw std::runtime_error("SparseMatrix: column out of range");
    }
  }
}

std::vector<double> spmv(const SparseMatrix& a, std::span<const double> x) {
  if (static_cast<int>(x.size()) != a.cols) throw std::invalid_argument("spmv: shape mismatch");
  std::vector<double> y(a.rows, 0.0);
  for (int i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) s += a.vals[k] * x[a.col_idx[k]];
    y[i] = s;
  }
  return y;
}

BandedLU::BandedLU(const SparseMatrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("BandedLU: matrix must be square");
  n_ = a.rows;
  kl_ = 0;
  ku_ = 0;
  for (int i = 0; i < n_; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const int j = a.col_idx[k];
      kl_ = std::max(kl_, i - j);
      ku_ = std::max(ku_, j - i);
    }
  width_ = 2 * kl_ + ku_ + 1;
  ab_.assign(static_cast<size_t>(n_) * width_, 0.0);
  ipiv_.assign(n_, 0);
  for (int i = 0; i < n_; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) at(i, a.col_idx[k]) = a.vals[k];

  for (int k = 0; k < n_; ++k) {
    const int last_row = std::min(n_ - 1, k + kl_);
    int p = k;
    double pmax = std::abs(at(k, k));
    for (int i = k + 1; i <= last_row; ++i)
      if (std::abs(at(i, k)) > pmax) {
        pmax = std::abs(at(i, k));
        p = i;
      }
    ipiv_[k] = p;
    if (pmax == 0.0) throw SolverError("BandedLU: singular matrix", 0.0);
    const int last_col = std::min(n_ - 1, k + ku_ + kl_);
    if (p != k)
      for (int j = k; j <= last_col; ++j) std::swap(at(k, j), at(p, j));
    const double piv = at(k, k);
    for (int i = k + 1; i <= last_row; ++i) {
      const double l = at(i, k) / piv;
      at(i, k) = l;
      if (l == 0.0) continue;
      for (int j = k + 1; j <= last_col; ++j) at(i, j) -= l * at(k, j);
    }
  }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
  if (static_cast<int>(rhs.size()) != n_) throw std::invalid_argument("BandedLU: rhs size");
  std::vector<double> x(rhs.begin(), rhs.end());
  for (int k = 0; k < n_; ++k) {
    if (ipiv_[k] != k) std::swap(x[k], x[ipiv_[k]]);
    const int last_row = std::min(n_ - 1, k + kl_);
    for (int i = k + 1; i <= last_row; ++i) x[i] -= at(i, k) * x[k];
  }
  for (int i = n_ - 1; i >= 0; --i) {
    const int last_col = std::min(n_ - 1, i + ku_ + kl_);
    double s = x[i];
    for (int j = i + 1; j <= last_col; ++j) s -= at(i, j) * x[j];
    x[i] = s / at(i, i);
  }
  return x;
}

Ilu0::Ilu0(const SparseMatrix& a) : a_(&a), luv_(a.vals), diag_(a.rows, -1) {
  const int n = a.rows;
  for (int i = 0; i < n; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      if (a.col_idx[k] == i) diag_[i] = k;
  for (int i = 0; i < n; ++i)
    if (diag_[i] < 0) throw std::invalid_argument("Ilu0: missing diagonal entry");
  // IKJ variant restricted to the sparsity pattern
  for (int i = 1; i < n; ++i) {
    for (int kk = a.row_ptr[i]; kk < a.row_ptr[i + 1] && a.col_idx[kk] < i; ++kk) {
      const int k = a.col_idx[kk];
      const double piv = luv_[diag_[k]];
      if (piv == 0.0) throw SolverError("Ilu0: zero pivot", 0.0);
      const double l = luv_[kk] / piv;
      luv_[kk] = l;
      // subtract l * row(k) on the pattern of row(i) right of column k
      int pk = diag_[k] + 1;
      int pi = kk + 1;
      while (pk < a.row_ptr[k + 1] && pi < a.row_ptr[i + 1]) {
        if (a.col_idx[pk] == a.col_idx[pi]) {
          luv_[pi] -= l * luv_[pk];
          ++pk;
          ++pi;
        } else if (a.col_idx[pk] < a.col_idx[pi]) {
          ++pk;
        } else {
          ++pi;
        }
      }
    }
  }
}

void Ilu0::apply(std::span<const double> r, std::span<double> z) const {
  const SparseMatrix& a = *a_;
  const int n = a.rows;
  // forward: L z = r (unit lower)
  for (int i = 0; i < n; ++i) {
    double s = r[i];
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1] && a.col_idx[k] < i; ++k)
      s -= luv_[k] * z[a.col_idx[k]];
    z[i] = s;
  }
  // backward: U z = z
  for (int i = n - 1; i >= 0; --i) {
    double s = z[i];
    for (int k = diag_[i] + 1; k < a.row_ptr[i + 1]; ++k) s -= luv_[k] * z[a.col_idx[k]];
    z[i] = s / luv_[diag_[i]];
  }
}

std::vector<double> gmres_ilu0(const SparseMatrix& a, std::span<const double> b,
                               const SolverOptions& opts) {
  const Ilu0 prec(a);
  return gmres_with(a, prec, b, opts);
}

std::vector<double> gmres_with(const SparseMatrix& a, const Ilu0& prec, std::span<const double> b,
                               const SolverOptions& opts) {
  const int n = a.rows;
  std::vector<double> x(n, 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) return x;
  const int m = std::max(2, opts.restart);
  const long cap = static_cast<long>(opts.max_iter_factor) * n;

  std::vector<std::vector<double>> v;
  std::vector<double> h((m + 1) * m, 0.0);
  std::vector<double> cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);
  std::vector<double> z(n, 0.0), w(n, 0.0);

  long iters = 0;
  while (true) {
    std::vector<double> r = spmv(a, x);
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    if (norm2(r) <= opts.tol * bnorm) return x;
    prec.apply(r, z);
    double beta = norm2(z);
    if (beta == 0.0) return x;
    v.assign(1, z);
    for (double& t : v[0]) t /= beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    int k = 0;
    for (; k < m && iters < cap; ++k, ++iters) {
      w = spmv(a, v[k]);
      prec.apply(w, z);
      // modified Gram-Schmidt
      for (int i = 0; i <= k; ++i) {
        double hik = 0.0;
        for (int q = 0; q < n; ++q) hik += z[q] * v[i][q];
        h[i * m + k] = hik;
        for (int q = 0; q < n; ++q) z[q] -= hik * v[i][q];
      }
      const double hkk = norm2(z);
      h[(k + 1) * m + k] = hkk;
      if (hkk != 0.0) {
        v.push_back(z);
        for (double& t : v.back()) t /= hkk;
      }
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * h[i * m + k] + sn[i] * h[(i + 1) * m + k];
        h[(i + 1) * m + k] = -sn[i] * h[i * m + k] + cs[i] * h[(i + 1) * m + k];
        h[i * m + k] = t;
      }
      const double denom = std::hypot(h[k * m + k], h[(k + 1) * m + k]);
      if (denom == 0.0) {
        ++k;
        break;
      }
      cs[k] = h[k * m + k] / denom;
      sn[k] = h[(k + 1) * m + k] / denom;
      h[k * m + k] = denom;
      h[(k + 1) * m + k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (std::abs(g[k + 1]) <= 0.1 * opts.tol * bnorm) {
        ++k;
        break;
      }
      if (hkk == 0.0) {
        ++k;
        break;
      }
    }
    // back substitution on the k x k triangular system
    std::vector<double> y(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= h[i * m + j] * y[j];
      y[i] = s / h[i * m + i];
    }
    for (int i = 0; i < k; ++i)
      for (int q = 0; q < n; ++q) x[q] += y[i] * v[i][q];
    if (iters >= cap) {
      std::vector<double> rr = spmv(a, x);
      for (int i = 0; i < n; ++i) rr[i] = b[i] - rr[i];
      const double res = norm2(rr) / bnorm;
      if (res <= opts.tol) return x;
      throw SolverError("gmres_ilu0: iteration cap reached", res);
    }
  }
}

std::vector<double> solve(const LinearSystem& sys, const SolverOptions& opts) {
  const SparseMatrix& a = sys.matrix;
  if (a.rows != a.cols) throw std::invalid_argument("solve: system must be square");
  if (a.rows == 0) return {};
  if (static_cast<int>(sys.rhs.size()) != a.rows)
    throw std::invalid_argument("solve: rhs size mismatch");
  std::vector<double> x;
  if (opts.method == SolverOptions::Method::DirectLU) {
    const BandedLU lu(a);
    x = lu.solve(sys.rhs);
  } else {
    x = gmres_ilu0(a, sys.rhs, opts);
  }
  const double bnorm = norm2(sys.rhs);
  std::vector<double> r = spmv(a, x);
  for (int i = 0; i < a.rows; ++i) r[i] = sys.rhs[i] - r[i];
  const double res = norm2(r);
  if (res > opts.tol * std::max(bnorm, 1e-300) && bnorm > 0.0)
    throw SolverError("solve: residual above tolerance", res / bnorm);
  return x;
}

void write_matrix_market(const std::string& path, const SparseMatrix& a) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_matrix_market: cannot open " + path);
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << a.rows << " " << a.cols << " " << a.nnz() << "\n";
  char buf[64];
  for (int i = 0; i < a.rows; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", a.vals[k]);
      os << (i + 1) << " " << (a.col_idx[k] + 1) << " " << buf << "\n";
    }
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_matrix_market: cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw std::runtime_error("read_matrix_market: bad header");
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '%') break;
  std::istringstream dims(line);
  int rows = 0, cols = 0, nnz = 0;
  dims >> rows >> cols >> nnz;
  std::vector<SparseMatrix::Triplet> ts;
  ts.reserve(nnz);
  for (int k = 0; k < nnz; ++k) {
    int i = 0, j = 0;
    double v = 0.0;
    is >> i >> j >> v;
    if (!is) throw std::runtime_error("read_matrix_market: truncated file");
    ts.push_back({i - 1, j - 1, v});
  }
  return SparseMatrix::from_triplets(rows, cols, ts);
}

}  // namespace tdg
