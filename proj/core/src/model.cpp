// SPDX-License-Identifier: Apache-2.0
#include "tdg/model.hpp"

#include <cmath>
#include <string>

namespace tdg {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_dim(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

void MaterialParams::validate() const {
  require(rho > 0.0, "MaterialParams: rho must be > 0");
  require(c > 0.0, "MaterialParams: c must be > 0");
  require(theta0 > 0.0, "MaterialParams: theta0 must be > 0");
  require(k2 > 0.0, "MaterialParams: k2 must be > 0");
  require(k3 >= 0.0, "MaterialParams: k3 must be >= 0");
  require(mu > 0.0, "MaterialParams: mu must be > 0");
  require(bulk_modulus() > 0.0, "MaterialParams: lambda + 2 mu / 3 must be > 0");
  require(dim == 1 || dim == 2, "MaterialParams: dim must be 1 or 2");
}

void CharacteristicScales::validate(const MaterialParams& p) const {
  if (!(x_c > 0.0 && t_c > 0.0 && u_c > 0.0 && alpha_c > 0.0))
    throw ConfigError("CharacteristicScales: all scales must be > 0");
  const double rel = 1e-12;
  const double vs = p.second_sound_speed();
  if (std::abs(x_c / t_c - vs) > rel * std::max(1.0, vs))
    throw ConfigError("CharacteristicScales: x_c/t_c does not match the second-sound speed");
  const double ua = p.coupling_m() * p.first_sound_speed() / p.rho;
  // the displacement scale decouples from the thermal one when m = 0
  if (ua > 0.0 && std::abs(u_c / alpha_c - ua) > rel * std::max(1.0, std::abs(ua)))
    throw ConfigError("CharacteristicScales: u_c/alpha_c does not match m v_f / rho");
}

CharacteristicScales CharacteristicScales::consistent(const MaterialParams& p, double x_c,
                                                      double alpha_c) {
  CharacteristicScales s;
  s.x_c = x_c;
  s.t_c = x_c / p.second_sound_speed();
  s.alpha_c = alpha_c;
  const double ua = p.coupling_m() * p.first_sound_speed() / p.rho;
  s.u_c = ua > 0.0 ? alpha_c * ua : alpha_c;
  return s;
}

void DimensionlessParams::validate() const {
  require(eps1 > 0.0, "DimensionlessParams: eps1 must be > 0");
  require(eps2 >= 0.0, "DimensionlessParams: eps2 must be >= 0");
  require(k >= 0.0, "DimensionlessParams: k must be >= 0");
}

MaterialParams DimensionlessParams::to_material() const {
  validate();
  MaterialParams p;
  p.dim = 1;
  p.rho = 1.0;
  p.c = 1.0;
  p.k2 = 1.0;
  p.k3 = k;
  p.gauge = AlphaGauge::RelativeTemperature;
  // p-wave modulus lambda + 2 mu = eps1 with the split below; omega tuned so
  // that the coupling scalar m is exactly 1 in the coupled case.
  p.lambda = eps1 / 4.0;
  p.mu = 3.0 * eps1 / 8.0;
  if (eps2 > 0.0) {
    p.theta0 = eps2;
    p.omega = 1.0 / (3.0 * p.bulk_modulus());
  } else {
    p.theta0 = 1.0;
    p.omega = 0.0;
  }
  return p;
}

SymTensor stress(const SymTensor& strain, double theta, const MaterialParams& p) {
  check_dim(strain.dim, p.dim, "stress");
  const double m = p.coupling_m();
  SymTensor s = SymTensor::zero(p.dim);
  if (p.dim == 1) {
    s.xx = p.p_wave_modulus() * strain.xx - m * theta;
  } else {
    const double tr = strain.trace();
    s.xx = p.lambda * tr + 2.0 * p.mu * strain.xx - m * theta;
    s.yy = p.lambda * tr + 2.0 * p.mu * strain.yy - m * theta;
    s.xy = 2.0 * p.mu * strain.xy;
  }
  return s;
}

double entropy_density(const SymTensor& strain, double theta, const MaterialParams& p) {
  check_dim(strain.dim, p.dim, "entropy_density");
  return p.c * p.rho / p.theta0 * theta + p.coupling_m() * strain.trace() + p.s0;
}

double free_energy(const SymTensor& strain, double theta, const MaterialParams& p) {
  check_dim(strain.dim, p.dim, "free_energy");
  double e_elastic;
  if (p.dim == 1) {
    e_elastic = 0.5 * p.p_wave_modulus() * strain.xx * strain.xx;
  } else {
    const double tr = strain.trace();
    const double dev2 = strain.xx * strain.xx + strain.yy * strain.yy + 2.0 * strain.xy * strain.xy;
    e_elastic = 0.5 * p.lambda * tr * tr + p.mu * dev2;
  }
  return e_elastic - theta * p.coupling_m() * strain.trace() -
         0.5 * p.rho * p.c / p.theta0 * theta * theta - theta * p.s0;
}

VecD heat_flux(const VecD& grad_alpha, const VecD& grad_theta_abs, const MaterialParams& p) {
  check_dim(grad_alpha.dim, p.dim, "heat_flux");
  check_dim(grad_theta_abs.dim, p.dim, "heat_flux");
  VecD q{p.dim, 0.0, 0.0};
  q.x = -(p.k2 * grad_alpha.x + p.k3 * grad_theta_abs.x);
  if (p.dim == 2) q.y = -(p.k2 * grad_alpha.y + p.k3 * grad_theta_abs.y);
  return q;
}

VoigtMatrix elasticity(const MaterialParams& p) {
  VoigtMatrix v;
  if (p.dim == 1) {
    v.n = 1;
    v.at(0, 0) = p.p_wave_modulus();
  } else {
    v.n = 3;
    v.at(0, 0) = v.at(1, 1) = p.lambda + 2.0 * p.mu;
    v.at(0, 1) = v.at(1, 0) = p.lambda;
    v.at(2, 2) = p.mu;
  }
  return v;
}

VoigtMatrix adiabatic_stiffness(const MaterialParams& p) {
  VoigtMatrix v = elasticity(p);
  const double m = p.coupling_m();
  const double w = p.theta0 / p.c * m * m;
  // m (x) m in Voigt layout; the shear slot carries no coupling.
  const int nd = p.dim == 1 ? 1 : 2;
  for (int i = 0; i < nd; ++i)
    for (int j = 0; j < nd; ++j) v.at(i, j) += w;
  return v;
}

double intermediate_temperature(double theta_minus, const SymTensor& strain_now,
                                const SymTensor& strain_minus, const MaterialParams& p) {
  check_dim(strain_now.dim, p.dim, "intermediate_temperature");
  check_dim(strain_minus.dim, p.dim, "intermediate_temperature");
  const double m = p.coupling_m();
  return theta_minus - p.theta0 / p.c * m * (strain_now.trace() - strain_minus.trace());
}

void intermediate_temperature(std::span<const double> theta_minus,
                              std::span<const SymTensor> strain_now,
                              std::span<const SymTensor> strain_minus,
                              const MaterialParams& p, std::span<double> out) {
  if (theta_minus.size() != strain_now.size() || strain_now.size() != strain_minus.size() ||
      out.size() != theta_minus.size())
    throw std::invalid_argument("intermediate_temperature: layout mismatch");
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = intermediate_temperature(theta_minus[i], strain_now[i], strain_minus[i], p);
}

DimensionlessParams nondimensionalize(const MaterialParams& p, const CharacteristicScales& s) {
  p.validate();
  s.validate(p);
  DimensionlessParams d;
  const double vf = p.first_sound_speed();
  const double vs = p.second_sound_speed();
  d.eps1 = (vf / vs) * (vf / vs);
  const double m = p.coupling_m();
  d.eps2 = p.theta0 * m * m * p.youngs_modulus() / (p.rho * p.c);
  d.k = p.k3 / std::sqrt(p.rho * p.c);
  return d;
}

}  // namespace tdg
