// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

namespace tdg {

/// Error for invalid run/material configuration (as opposed to bad call arguments).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spatial vector for d in {1,2}; the y component is ignored in 1D.
struct VecD {
  int dim = 1;
  double x = 0.0;
  double y = 0.0;
};

/// Symmetric second-order tensor for d in {1,2} (xy unused in 1D).
struct SymTensor {
  int dim = 1;
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;

  static SymTensor zero(int d) { return {d, 0.0, 0.0, 0.0}; }
  static SymTensor identity(int d) { return {d, 1.0, d > 1 ? 1.0 : 0.0, 0.0}; }

  double trace() const { return dim == 1 ? xx : xx + yy; }
};

/// Fourth-order tensor in reduced (Voigt) storage: n = 1 in 1D, n = 3 in 2D
/// plane strain with component order (xx, yy, xy) and engineering shear.
struct VoigtMatrix {
  int n = 1;
  std::array<double, 9> a{};

  double& at(int i, int j) { return a[static_cast<size_t>(i) * 3 + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * 3 + j]; }
};

/// Reference for the thermal-displacement rate equation: the absolute
/// temperature (rate = theta + theta0) or the relative one (rate = theta).
/// The non-dimensional experiment definitions use the relative convention.
enum class AlphaGauge { AbsoluteTemperature, RelativeTemperature };

/// Physical coefficients of the type III theory (isotropic).
struct MaterialParams {
  double rho = 1.0;     ///< mass density
  double c = 1.0;       ///< heat capacity
  double theta0 = 1.0;  ///< reference absolute temperature
  double lambda = 0.0;  ///< first Lame constant
  double mu = 0.5;      ///< shear modulus
  double omega = 0.0;   ///< thermal expansion coefficient
  double k2 = 1.0;      ///< conductivity of the thermal-displacement term
  double k3 = 0.0;      ///< conductivity of the classical (Fourier) term
  double s0 = 0.0;      ///< absolute entropy density offset
  int dim = 1;
  AlphaGauge gauge = AlphaGauge::AbsoluteTemperature;

  double bulk_modulus() const { return lambda + 2.0 * mu / 3.0; }
  /// Thermo-mechanical coupling scalar m, with coupling tensor m*identity.
  double coupling_m() const { return 3.0 * omega * bulk_modulus(); }
  double youngs_modulus() const { return mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu); }
  double p_wave_modulus() const { return lambda + 2.0 * mu; }
  double first_sound_speed() const { return std::sqrt(youngs_modulus() / rho); }
  double second_sound_speed() const { return std::sqrt(k2 / (rho * c)); }

  /// Constant source in the thermal-displacement rate equation.
  double alpha_rate_offset() const {
    return gauge == AlphaGauge::AbsoluteTemperature ? theta0 : 0.0;
  }

  /// Weights of the state-space energy: k2star * |grad alpha|^2 and cstar * theta^2.
  double k2_star() const { return k2 / theta0; }
  double c_star() const { return rho * c / theta0; }

  /// Throws std::invalid_argument if any positivity constraint is violated.
  void validate() const;
};

/// Characteristic quantities used to scale a dimensional problem.
struct CharacteristicScales {
  double x_c = 1.0;
  double t_c = 1.0;
  double u_c = 1.0;
  double alpha_c = 1.0;

  /// Checks positivity and the relations x_c/t_c = v_s, u_c/alpha_c = m v_f / rho
  /// to relative tolerance 1e-12. Throws ConfigError on violation.
  void validate(const MaterialParams& p) const;

  /// Builds scales satisfying the consistency relations for given x_c, alpha_c.
  static CharacteristicScales consistent(const MaterialParams& p, double x_c, double alpha_c);
};

/// Coefficients of the scaled 1D system: eps1 (squared speed ratio),
/// eps2 (coupling strength) and k (classical conductivity).
struct DimensionlessParams {
  double eps1 = 1.0;
  double eps2 = 0.0;
  double k = 0.0;

  void validate() const;

  /// Internal 1D parameterisation realising the scaled system: rho = c = k2 = 1,
  /// k3 = k, p-wave modulus eps1, and (m = 1, theta0 = eps2) when eps2 > 0,
  /// else the uncoupled pair (m = 0, theta0 = 1).
  MaterialParams to_material() const;
};

SymTensor stress(const SymTensor& strain, double theta, const MaterialParams& p);

/// Entropy per unit volume, rho*eta.
double entropy_density(const SymTensor& strain, double theta, const MaterialParams& p);

/// Helmholtz free energy per unit volume, rho*psi.
double free_energy(const SymTensor& strain, double theta, const MaterialParams& p);

VecD heat_flux(const VecD& grad_alpha, const VecD& grad_theta_abs, const MaterialParams& p);

VoigtMatrix elasticity(const MaterialParams& p);

/// C + (theta0/c) m (x) m; symmetric positive-definite.
VoigtMatrix adiabatic_stiffness(const MaterialParams& p);

/// Temperature inside the isentropic phase, from the frozen-entropy constraint.
double intermediate_temperature(double theta_minus, const SymTensor& strain_now,
                                const SymTensor& strain_minus, const MaterialParams& p);

/// Batch form of intermediate_temperature over matching spans.
void intermediate_temperature(std::span<const double> theta_minus,
                              std::span<const SymTensor> strain_now,
                              std::span<const SymTensor> strain_minus,
                              const MaterialParams& p, std::span<double> out);

DimensionlessParams nondimensionalize(const MaterialParams& p, const CharacteristicScales& s);

}  // namespace tdg
