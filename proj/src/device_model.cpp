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

#include "geophase/device_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "geophase/units.hpp"

namespace geophase {

ResonatorSpec ResonatorSpec::from_ghz(double f_ghz, double z_ohm, double quality) {
  ResonatorSpec res{units::ghz_to_internal(f_ghz), z_ohm, quality};
  res.validate();
  return res;
}

void ResonatorSpec::validate() const {
  if (!(omega_r > 0.0)) throw std::invalid_argument("resonator: omega_r must be positive");
  if (!(z_r >= 0.0)) throw std::invalid_argument("resonator: Z_r must be non-negative");
  if (!(q > 0.0)) throw std::invalid_argument("resonator: Q must be positive");
}

double QubitTuning::exchange_at_operating_point() const { return j0 * std::exp(eps_0 / eps_a); }

void QubitTuning::validate() const {
  if (!(eps_a > 0.0)) throw std::invalid_argument("tuning: eps_a must be positive");
  if (!(c_r >= 0.0 && c_r <= 1.0)) throw std::invalid_argument("tuning: c_r must lie in [0, 1]");
  if (!(eps_d >= 0.0)) throw std::invalid_argument("tuning: eps_d must be non-negative");
  if (!(eps_window > 0.0)) throw std::invalid_argument("tuning: eps_window must be positive");
  if (!(exchange_at_operating_point() > 0.0))
    throw std::invalid_argument("tuning: J(eps_0) must be positive");
}

double DerivedGateParams::g() const { return std::sqrt(g1 * g2); }

void CapacitanceMatrix::validate() const {
  for (double c : {total_left, total_right, left_gate_l, left_gate_r, left_res, right_gate_l,
                   right_gate_r, right_res}) {
    if (!(c >= 0.0)) throw std::invalid_argument("capacitance: entries must be non-negative");
  }
  // Relative slack for rounding in extracted capacitance tables.
  constexpr double kSlack = 1e-12;
  if (total_left + kSlack * total_left < left_gate_l + left_gate_r + left_res)
    throw std::invalid_argument("capacitance: C_L is smaller than the sum of its couplings");
  if (total_right + kSlack * total_right < right_gate_l + right_gate_r + right_res)
    throw std::invalid_argument("capacitance: C_R is smaller than the sum of its couplings");
}

double photon_voltage(const ResonatorSpec& res) {
  res.validate();
  const double omega_si = units::internal_to_per_s(res.omega_r);
  return std::sqrt(units::kHbar * res.z_r) * omega_si;
}

double cavity_decay(const ResonatorSpec& res) {
  res.validate();
  return res.omega_r / (2.0 * res.q);
}

ExchangeDerivatives exchange_and_derivatives(const QubitTuning& tuning, double eps) {
  tuning.validate();
  const double half_width = tuning.eps_window * tuning.eps_a;
  if (std::abs(eps - tuning.eps_0) > half_width) {
    throw std::domain_error("exchange: eps outside validity window |eps - eps_0| <= " +
                            std::to_string(tuning.eps_window) + " eps_a");
  }
  const double j = tuning.j0 * std::exp(eps / tuning.eps_a);
  const double a = tuning.eps_a;
  return {j, j / a, j / (a * a), j / (a * a * a)};
}

CouplingStrengths coupling_strengths(const QubitTuning& tuning, const ResonatorSpec& res) {
  const double d2 = exchange_and_derivatives(tuning, tuning.eps_0).d2;
  const double v0 = units::volts_to_internal(photon_voltage(res));
  CouplingStrengths out;
  out.g = 0.5 * d2 * tuning.c_r * v0 * tuning.eps_d;
  out.chi = d2 * tuning.c_r * tuning.c_r * v0 * v0;
  if (tuning.eps_d > 0.0) out.chi_over_g = 2.0 * tuning.c_r * v0 / tuning.eps_d;
  return out;
}

GateSchedule gate_schedule(double g1, double g2, int n, int delta_sign) {
  if (!(g1 > 0.0) || !(g2 > 0.0)) throw std::domain_error("gate_schedule: couplings must be positive");
  if (n < 1) throw std::domain_error("gate_schedule: n must be a positive integer");
  if (delta_sign != 1 && delta_sign != -1)
    throw std::domain_error("gate_schedule: delta_sign must be +1 or -1");
  const double product = g1 * g2;
  GateSchedule s;
  s.n = n;
  s.t_g = units::kPi * std::sqrt(static_cast<double>(n) / product);
  // Delta is defined from t_g so that |Delta| t_g = 2 pi n holds exactly.
  s.delta = delta_sign * 2.0 * units::kPi * n / s.t_g;
  return s;
}

LeverArms lever_arm_from_capacitances(const CapacitanceMatrix& c) {
  c.validate();
  if (c.total_left == 0.0 || c.total_right == 0.0)
    throw std::domain_error("lever arm: total dot capacitance is zero");
  LeverArms out;
  out.deps_dv = (c.left_gate_l - c.left_gate_r) / c.total_left -
                (c.right_gate_l - c.right_gate_r) / c.total_right;
  out.c_r = c.right_res / c.total_right - c.left_res / c.total_left;
  return out;
}

DerivedGateParams derive_gate_params(const QubitTuning& tuning, const ResonatorSpec& res, int n,
                                     int delta_sign) {
  const auto coupling = coupling_strengths(tuning, res);
  DerivedGateParams p = gate_params_from_coupling(coupling.g, coupling.g, cavity_decay(res), n,
                                                  delta_sign);
  const auto d = exchange_and_derivatives(tuning, tuning.eps_0);
  const double v0 = units::volts_to_internal(photon_voltage(res));
  p.v0 = photon_voltage(res);
  p.chi = coupling.chi;
  p.j_tilde = d.j + 0.5 * d.d2 * (tuning.c_r * tuning.c_r * v0 * v0 + 0.5 * tuning.eps_d * tuning.eps_d);
  return p;
}

DerivedGateParams gate_params_from_coupling(double g1, double g2, double kappa, int n,
                                            int delta_sign) {
  if (!(kappa >= 0.0)) throw std::domain_error("gate params: kappa must be non-negative");
  const auto s = gate_schedule(g1, g2, n, delta_sign);
  DerivedGateParams p;
  p.kappa = kappa;
  p.g1 = g1;
  p.g2 = g2;
  p.delta = s.delta;
  p.t_g = s.t_g;
  p.n = n;
  return p;
}

}  // namespace geophase
