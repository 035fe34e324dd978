// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tdg/assembly.hpp"
#include "tdg/diagnostics.hpp"
#include "tdg/linalg.hpp"

namespace tdg {

enum class Scheme { Monolithic, LieTrotter, Strang, DoublePass };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

/// Conduction class implied by the parameters: no thermal-displacement term
/// (classical Fourier), no Fourier term (non-dissipative waves), or both.
enum class ConductionModel { TypeI, TypeII, TypeIII };

ConductionModel classify_model(const MaterialParams& p);

struct TimeGrid {
  std::vector<double> times;

  static TimeGrid uniform(double t0, double t_end, int n_slabs);
  int n_slabs() const { return static_cast<int>(times.size()) - 1; }
  double dt(int n) const { return times[n + 1] - times[n]; }
  void validate() const;
};

/// Per-slab dissipation bookkeeping in the energy_norm scale: for the
/// monolithic and predictor-corrector schemes the state-space energy drops by
/// exactly jump_dissipation + conduction_dissipation per slab under
/// homogeneous data.
struct SlabDiagnostics {
  double t = 0.0;
  double jump_dissipation = 0.0;
  double conduction_dissipation = 0.0;
};

/// Drives one slab of any scheme; slab system matrices and factorizations are
/// cached per (phase, dt) and only right-hand sides are rebuilt per slab.
class SlabStepper {
 public:
  SlabStepper(const Mesh& mesh, const MaterialParams& p, Scheme scheme, LoadSpec loads,
              SolverOptions solver = {});

  const MaterialParams& material() const { return p_; }
  Scheme scheme() const { return scheme_; }

  StateVector step(const StateVector& prev, double t0, double t1,
                   SlabDiagnostics* diag = nullptr);

  StateVector step_monolithic(const StateVector& prev, double t0, double t1,
                              SlabDiagnostics* diag = nullptr);
  StateVector step_lie_trotter(const StateVector& prev, double t0, double t1,
                               SlabDiagnostics* diag = nullptr);
  StateVector step_strang(const StateVector& prev, double t0, double t1,
                          SlabDiagnostics* diag = nullptr);
  StateVector step_double_pass(const StateVector& prev, double t0, double t1,
                               SlabDiagnostics* diag = nullptr);

  /// Isentropic phase over [t0, t1]: updates u, v, copies alpha, theta.
  StateVector mechanical_phase(const StateVector& prev, double t0, double t1,
                               SlabSolution* sol = nullptr);
  /// Conduction phase at frozen configuration u_frozen. incoming.u is the
  /// configuration the incoming temperature trace is entropy-consistent with.
  StateVector thermal_phase(const StateVector& incoming, std::span<const double> u_frozen,
                            double t0, double t1, SlabSolution* sol = nullptr);

  /// Temperature consistent with a frozen-entropy transition from (theta_in
  /// paired with u_from) to configuration u_to, L2-projected onto the mesh.
  std::vector<double> project_intermediate_temperature(const StateVector& reference,
                                                       std::span<const double> u_to);

 private:
  enum class PhaseKind { Mechanical, Thermal, Monolithic };
  struct PhaseOp {
    PhaseKind kind;
    double dt;
    SlabLayout layout;
    SparseMatrix full;
    LinearSystem reduced;  // matrix plus reduction record (rhs unused)
    std::optional<BandedLU> lu;
    std::unique_ptr<SparseMatrix> gmres_matrix;
    std::unique_ptr<Ilu0> ilu;
  };

  PhaseOp& phase_op(PhaseKind kind, double t0, double t1);
  std::vector<double> solve_phase(PhaseOp& op, const SlabLayout& layout,
                                  std::vector<double> full_rhs, const char* phase_name, double t0);

  const Mesh* mesh_;
  MaterialParams p_;
  Scheme scheme_;
  LoadSpec loads_;
  SolverOptions solver_;
  std::vector<std::unique_ptr<PhaseOp>> ops_;
  std::optional<BandedLU> mass_lu_;  // nodal mass factorization for projections
};

struct Trajectory {
  std::vector<StateVector> traces;       ///< left limits at every grid time
  std::vector<EnergyReport> energy;      ///< one row per trace
  std::vector<SlabDiagnostics> slabs;    ///< one row per completed slab
  bool failed = false;
  std::string error;

  const StateVector& final_state() const { return traces.back(); }
};

/// Runs a whole time grid; on solver failure the partial trajectory is
/// retained with `failed` set.
Trajectory run(const Mesh& mesh, const MaterialParams& p, Scheme scheme, const TimeGrid& grid,
               const StateVector& init, const LoadSpec& loads, const SolverOptions& solver = {},
               bool record_energy = true);

}  // namespace tdg
