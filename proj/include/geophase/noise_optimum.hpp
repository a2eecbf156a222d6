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

#pragma once

#include "geophase/device_model.hpp"

// Charge-noise dephasing model, closed-form drive optimum and analytic
// infidelity estimates. Internal units throughout; NoiseSpec::from_boundary
// converts S_eps from eV^2/Hz^(1-beta).

namespace geophase {

struct NoiseSpec {
  double s_eps = 0.0;  // ns^-(1+beta)
  double beta = 0.0;
  double eta = 0.0;
  int m = 1;  // decoupling pulses

  static NoiseSpec from_boundary(double s_eps_ev2, double beta, double eta, int m = 1);
  void validate() const;

  /// eta S_eps with the pulse-count scaling T2 ~ m^beta folded in.
  double effective_power() const;
};

struct DephasingModel {
  double gamma_phi_0 = 0.0;
  double gamma_phi = 0.0;
};

struct ExchangeWindow {
  double j_min = 0.0;
  double j_max = 0.0;

  /// h * 50 MHz to h * 30 GHz.
  static ExchangeWindow defaults();
};

struct OptimalDrive {
  double eps_d_opt = 0.0;
  double j_opt = 0.0;            // clamped into the window
  double j_opt_unclamped = 0.0;
  bool clamped = false;
};

/// Hahn-echo constant eta(beta) = (2^(1-beta) - 1) Gamma(-1-beta) sin(pi beta / 2) / (2 pi).
/// Defined for 0 < beta < 2 except beta = 1 where Gamma(-1-beta) has a pole.
double hahn_eta(double beta);

/// gamma_phi_0 = (eta S J^2 / eps_a^2)^(1/(1+beta)) / m^beta and the drive
/// enhanced rate gamma_phi = gamma_phi_0 (1 + eps_d^2 / 4 eps_a^2)^(2/(1+beta)).
DephasingModel dephasing_rate(double j, double eps_d, const NoiseSpec& noise, double eps_a);

/// Exchange that balances qubit dephasing against photon loss. Throws
/// std::domain_error for beta >= 1.
double optimal_exchange(const NoiseSpec& noise, double kappa, int n, double eps_a);

/// eps_d,opt = 2 eps_a sqrt(1 + kappa / (2 n gamma_phi_0)).
double optimal_drive_amplitude(double kappa, int n, double eps_a, double gamma_phi_0);

OptimalDrive optimal_drive(const NoiseSpec& noise, double kappa, int n, double eps_a,
                           double gamma_phi_0_at_j,
                           const ExchangeWindow& window = ExchangeWindow::defaults());

/// 1 - F ~ (4/5)(gamma_phi t_g + kappa t_g / (2n)); valid while both products are small.
double infidelity_first_order(double gamma_phi, double kappa, double t_g, int n);

/// Closed-form optimum infidelity as a power law in Z_r, Q and omega_r.
/// Rejects n = 1, where the low-frequency noise makes the estimate invalid.
double infidelity_power_law(const NoiseSpec& noise, const ResonatorSpec& res, double c_r, int n);

}  // namespace geophase
