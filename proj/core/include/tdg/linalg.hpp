// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdg {

/// Row-compressed sparse matrix; column indices sorted and unique per row.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> vals;

  struct Triplet {
    int row;
    int col;
    double value;
  };

  /// Builds CSR from triplets; duplicate entries are summed in input order.
  static SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& ts);

  int nnz() const { return static_cast<int>(vals.size()); }
  /// Entry lookup; zero when the position is not stored.
  double at(int i, int j) const;
  void validate() const;
};

std::vector<double> spmv(const SparseMatrix& a, std::span<const double> x);

/// Linear slab system together with the Dirichlet lift record that maps a
/// reduced solution back to the full coefficient vector.
struct LinearSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
  int full_size = 0;                    ///< 0 when the system was never reduced
  std::vector<int> reduced_to_full;     ///< empty when unreduced
  std::vector<double> boundary_values;  ///< full-length; set on constrained dofs
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

struct SolverOptions {
  enum class Method { DirectLU, Gmres };
  Method method = Method::DirectLU;
  double tol = 1e-10;          ///< relative residual target
  int max_iter_factor = 10;    ///< iteration cap = factor * n
  int restart = 50;
};

/// Band LU factorization with partial pivoting. Slab matrices from the
/// structured meshes are banded, so this is the direct path.
class BandedLU {
 public:
  explicit BandedLU(const SparseMatrix& a);
  std::vector<double> solve(std::span<const double> rhs) const;
  int bandwidth_lower() const { return kl_; }
  int bandwidth_upper() const { return ku_; }

 private:
  int n_ = 0, kl_ = 0, ku_ = 0, width_ = 0;
  std::vector<double> ab_;  ///< column-major band storage with pivot fill
  std::vector<int> ipiv_;
  double& at(int i, int j) { return ab_[static_cast<size_t>(j) * width_ + (ku_ + kl_) + i - j]; }
  double at(int i, int j) const {
    return ab_[static_cast<size_t>(j) * width_ + (ku_ + kl_) + i - j];
  }
};

/// Zero-fill incomplete LU preconditioner on the matrix pattern.
class Ilu0 {
 public:
  explicit Ilu0(const SparseMatrix& a);
  void apply(std::span<const double> r, std::span<double> z) const;

 private:
  const SparseMatrix* a_;
  std::vector<double> luv_;
  std::vector<int> diag_;
};

/// Restarted GMRES preconditioned by a prebuilt ILU(0) factorization.
std::vector<double> gmres_with(const SparseMatrix& a, const Ilu0& prec, std::span<const double> b,
                               const SolverOptions& opts);

/// Restarted GMRES with ILU(0); returns the iterate and its true residual.
std::vector<double> gmres_ilu0(const SparseMatrix& a, std::span<const double> b,
                               const SolverOptions& opts);

/// Solves the (possibly reduced) system to opts.tol relative residual.
/// Throws SolverError if the verified residual exceeds the target.
std::vector<double> solve(const LinearSystem& sys, const SolverOptions& opts = {});

void write_matrix_market(const std::string& path, const SparseMatrix& a);
SparseMatrix read_matrix_market(const std::string& path);

}  // namespace tdg
