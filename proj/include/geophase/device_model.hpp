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

#include <optional>

// Device model: resonator and exchange-tuning parameters to effective gate
// parameters. All energies and angular frequencies are internal units
// (rad/ns, hbar = 1); see units.hpp.

namespace geophase {

struct ResonatorSpec {
  double omega_r = 0.0;  // rad/ns
  double z_r = 0.0;      // ohm
  double q = 0.0;

  static ResonatorSpec from_ghz(double f_ghz, double z_ohm, double quality);
  void validate() const;
};

/// Exchange model J(eps) = J0 exp(eps / eps_a) around the DC point eps_0.
struct QubitTuning {
  double j0 = 0.0;
  double eps_a = 0.0;
  double eps_0 = 0.0;
  double c_r = 0.0;
  double eps_d = 0.0;
  // Allowed |eps - eps_0| in units of eps_a.
  double eps_window = 6.0;

  double exchange_at_operating_point() const;
  void validate() const;
};

struct ExchangeDerivatives {
  double j = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

struct CouplingStrengths {
  double g = 0.0;
  double chi = 0.0;
  // chi / g = 2 c_r V0 / eps_d; absent when the drive is off.
  std::optional<double> chi_over_g;
};

struct GateSchedule {
  double delta = 0.0;
  double t_g = 0.0;
  int n = 1;
};

struct DerivedGateParams {
  double v0 = 0.0;  // volts
  double kappa = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double chi = 0.0;
  double delta = 0.0;
  double t_g = 0.0;
  int n = 1;
  double j_tilde = 0.0;

  /// Geometric mean coupling used wherever a single g is needed.
  double g() const;
};

/// Dot/gate/resonator capacitances in farad. Gate indices L, R; "res" is the
/// resonator.
struct CapacitanceMatrix {
  double total_left = 0.0;
  double total_right = 0.0;
  double left_gate_l = 0.0;
  double left_gate_r = 0.0;
  double left_res = 0.0;
  double right_gate_l = 0.0;
  double right_gate_r = 0.0;
  double right_res = 0.0;

  void validate() const;
};

struct LeverArms {
  double deps_dv = 0.0;  // in units of the electron charge
  double c_r = 0.0;
};

/// Single-photon antinode voltage V0 = sqrt(hbar Z_r) omega_r, in volts.
/// This follows the resonator literature convention without the usual
/// sqrt(1/2) zero-point factor.
double photon_voltage(const ResonatorSpec& res);

/// Amplitude decay rate kappa = omega_r / (2Q).
double cavity_decay(const ResonatorSpec& res);

/// J and its first three derivatives at eps. Throws std::domain_error when eps
/// leaves the validity window around eps_0.
ExchangeDerivatives exchange_and_derivatives(const QubitTuning& tuning, double eps);

CouplingStrengths coupling_strengths(const QubitTuning& tuning, const ResonatorSpec& res);

/// Detuning and gate time closing n loops with a pi/4 conditional phase:
/// Delta = 2 sqrt(n g1 g2), t_g = pi sqrt(n / (g1 g2)). `delta_sign` selects
/// driving below (+1) or above (-1) the resonator.
GateSchedule gate_schedule(double g1, double g2, int n, int delta_sign = 1);

LeverArms lever_arm_from_capacitances(const CapacitanceMatrix& c);

/// Full derivation for identical qubits (g1 = g2) at the tuning's operating point.
DerivedGateParams derive_gate_params(const QubitTuning& tuning, const ResonatorSpec& res, int n,
                                     int delta_sign = 1);

/// Gate parameters with an explicit coupling and decay, used by the simulator
/// and tests that work directly in coupling space.
DerivedGateParams gate_params_from_coupling(double g1, double g2, double kappa, int n,
                                            int delta_sign = 1);

}  // namespace geophase
