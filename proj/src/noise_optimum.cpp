// Copyright 2026 The geophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geophase/noise_optimum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geophase/units.hpp"

namespace geophase {

NoiseSpec NoiseSpec::from_boundary(double s_eps_ev2, double beta, double eta, int m) {
  NoiseSpec n{units::charge_noise_to_internal(s_eps_ev2, beta), beta, eta, m};
  n.validate();
  return n;
}

void NoiseSpec::validate() const {
  if (!(s_eps > 0.0)) throw std::invalid_argument("noise: S_eps must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("noise: beta must be positive");
  if (!(eta > 0.0)) throw std::invalid_argument("noise: eta must be positive");
  if (m < 1) throw std::invalid_argument("noise: pulse count m must be >= 1");
}

double NoiseSpec::effective_power() const {
  return eta * s_eps * std::pow(static_cast<double>(m), -beta * (1.0 + beta));
}

ExchangeWindow ExchangeWindow::defaults() {
  return {units::ghz_to_internal(0.05), units::ghz_to_internal(30.0)};
}

double hahn_eta(double beta) {
  if (!(beta > 0.0 && beta < 2.0) || beta == 1.0)
    throw std::domain_error("hahn_eta: beta must lie in (0, 2) excluding the Gamma pole at 1");
  const double value = (std::pow(2.0, 1.0 - beta) - 1.0) * std::tgamma(-1.0 - beta) *
                       std::sin(units::kPi * beta / 2.0) / (2.0 * units::kPi);
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::domain_error("hahn_eta: non-positive value");
  return value;
}

DephasingModel dephasing_rate(double j, double eps_d, const NoiseSpec& noise, double eps_a) {
  noise.validate();
  if (!(j > 0.0)) throw std::domain_error("dephasing_rate: J must be positive");
  const double exponent = 1.0 / (noise.beta + 1.0);
  const double ratio = j / eps_a;
  DephasingModel out;
  out.gamma_phi_0 = std::pow(noise.effective_power() * ratio * ratio, exponent);
  const double drive = 1.0 + eps_d * eps_d / (4.0 * eps_a * eps_a);
  out.gamma_phi = out.gamma_phi_0 * std::pow(drive, 2.0 * exponent);
  return out;
}

double optimal_exchange(const NoiseSpec& noise, double kappa, int n, double eps_a) {
  noise.validate();
  if (noise.beta >= 1.0)
    throw std::domain_error("optimal_exchange: J_opt undefined for beta >= 1");
  if (n < 1) throw std::domain_error("optimal_exchange: n must be >= 1");
  const double b = noise.beta;
  const double gamma0 = b * kappa / (2.0 * n * (1.0 - b));
  return std::pow(gamma0, (1.0 + b) / 2.0) * eps_a / std::sqrt(noise.effective_power());
}

double optimal_drive_amplitude(double kappa, int n, double eps_a, double gamma_phi_0) {
  if (!(gamma_phi_0 > 0.0)) throw std::domain_error("optimal drive: gamma_phi_0 must be positive");
  return 2.0 * eps_a * std::sqrt(1.0 + kappa / (2.0 * n * gamma_phi_0));
}

OptimalDrive optimal_drive(const NoiseSpec& noise, double kappa, int n, double eps_a,
                           double gamma_phi_0_at_j, const ExchangeWindow& window) {
  OptimalDrive out;
  out.eps_d_opt = optimal_drive_amplitude(kappa, n, eps_a, gamma_phi_0_at_j);
  out.j_opt_unclamped = optimal_exchange(noise, kappa, n, eps_a);
  out.j_opt = std::clamp(out.j_opt_unclamped, window.j_min, window.j_max);
  out.clamped = out.j_opt != out.j_opt_unclamped;
  return out;
}

double infidelity_first_order(double gamma_phi, double kappa, double t_g, int n) {
  return 0.8 * (gamma_phi * t_g + kappa * t_g / (2.0 * n));
}

double infidelity_power_law(const NoiseSpec& noise, const ResonatorSpec& res, double c_r, int n) {
  noise.validate();
  res.validate();
  if (n < 2)
    throw std::domain_error(
        "infidelity_power_law: does not apply for n = 1 (low-frequency noise dominates)");
  if (!(noise.beta < 1.0)) throw std::domain_error("infidelity_power_law: requires beta < 1");
  const double b = noise.beta;
  const double v0 = units::volts_to_internal(photon_voltage(res));
  const double numerator = 0.8 * units::kPi * std::pow(8.0 * n / b, b / 2.0) *
                           std::pow(1.0 - b, (1.0 - b) / 2.0) *
                           std::sqrt(noise.effective_power());
  const double denominator =
      c_r * v0 * std::pow(res.q, (1.0 - b) / 2.0) * std::pow(res.omega_r, (b - 1.0) / 2.0);
  return numerator / denominator;
}

}  // namespace geophase
