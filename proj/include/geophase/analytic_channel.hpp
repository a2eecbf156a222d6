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

#include "geophase/channel.hpp"
#include "geophase/device_model.hpp"

// Exact two-qubit channel of the resonator-mediated phase gate: ideal
// unitary, lossy displacement trajectory, the b-factor, the correlated and
// intrinsic dephasing channels and the closed-form average gate fidelity.

namespace geophase {

/// U_g = exp(i phi Z(x)Z) = diag(e^{i phi}, e^{-i phi}, e^{-i phi}, e^{i phi}).
Mat4 ideal_gate_unitary(double phi_12);

/// Textbook CPHASE diag(1, 1, 1, -1).
Mat4 cphase_unitary();

/// Oscillator amplitude per unit sigma_z in the frame rotating at omega_r:
/// alpha(t) = -(g/2) (e^{-kappa t} - e^{i Delta t}) / (i Delta + kappa).
cplx alpha_closed_form(double g, double delta, double kappa, double t);

/// The same trajectory expressed in the drive frame used by the simulator
/// (H = Delta a^dag a + (g/2)(a + a^dag) sum sigma_z): -i e^{-i Delta t} alpha(t).
cplx alpha_drive_frame(double g, double delta, double kappa, double t);

/// Closed-form integral of |alpha|^2 over [0, t].
double alpha_norm_integral(double g, double delta, double kappa, double t);

struct BFactor {
  double b = 1.0;
  double b_loss = 1.0;          // exp(-4 kappa int |alpha|^2)
  double b_entanglement = 1.0;  // exp(-2 |alpha(t_g)|^2)
};

BFactor b_factor(double g, double delta, double kappa, double t_g);

/// The three-term exponent form of b(t_g) obtained by substituting alpha.
double b_factor_explicit(double g, double delta, double kappa, double t_g);

/// Small-loss limit exp(-pi kappa / (2 g sqrt(n))) at the schedule point.
double b_factor_simplified(double g, double kappa, int n);

/// Kraus set for zero, odd and even numbers of lost photons. Requires 0 <= b <= 1.
TwoQubitChannel correlated_dephasing_channel(double b);

/// Independent single-qubit dephasing with p_j = (1 - e^{-gamma_j t}) / 2.
TwoQubitChannel intrinsic_dephasing_channel(double gamma_1, double gamma_2, double t);

/// Intrinsic dephasing, then correlated dephasing with b(t_g), then U_g at the
/// gate phase sign(Delta) pi/4. Uses the geometric mean of g1, g2.
TwoQubitChannel analytic_gate_channel(const DerivedGateParams& params, double gamma_1, double gamma_2);

/// Target unitary matching analytic_gate_channel for the given detuning sign.
Mat4 gate_target(const DerivedGateParams& params);

/// F = (4 + 4 b e^{-gamma t_g} + (b^4 + 1) e^{-2 gamma t_g}) / 10.
double analytic_avg_fidelity(double b, double gamma_phi, double t_g);

}  // namespace geophase
