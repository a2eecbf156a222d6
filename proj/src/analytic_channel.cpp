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

#include "geophase/analytic_channel.hpp"

#include <cmath>
#include <stdexcept>

#include "geophase/linalg.hpp"
#include "geophase/units.hpp"

namespace geophase {

Mat4 ideal_gate_unitary(double phi_12) {
  Mat4 u = Mat4::Zero();
  for (int q = 0; q < 4; ++q) u(q, q) = std::polar(1.0, phi_12 * kZ1Sign[q] * kZ2Sign[q]);
  return u;
}

Mat4 cphase_unitary() {
  Mat4 u = Mat4::Identity();
  u(3, 3) = -1.0;
  return u;
}

cplx alpha_closed_form(double g, double delta, double kappa, double t) {
  if (delta == 0.0 && kappa == 0.0)
    throw std::domain_error("alpha_closed_form: Delta and kappa cannot both vanish");
  const cplx denom(kappa, delta);
  return -(g / 2.0) * (std::exp(-kappa * t) - std::exp(kI * (delta * t))) / denom;
}

cplx alpha_drive_frame(double g, double delta, double kappa, double t) {
  return -kI * std::exp(-kI * (delta * t)) * alpha_closed_form(g, delta, kappa, t);
}

double alpha_norm_integral(double g, double delta, double kappa, double t) {
  if (delta == 0.0 && kappa == 0.0)
    throw std::domain_error("alpha_norm_integral: Delta and kappa cannot both vanish");
  // |alpha|^2 = g^2/(4(D^2+k^2)) (1 + e^{-2kt} - 2 e^{-kt} cos Dt)
  const double norm2 = delta * delta + kappa * kappa;
  const double decay_term = kappa > 0.0 ? -std::expm1(-2.0 * kappa * t) / (2.0 * kappa) : t;
  const double cross = (std::exp(-kappa * t) * (delta * std::sin(delta * t) - kappa * std::cos(delta * t)) + kappa) / norm2;
  return g * g / (4.0 * norm2) * (t + decay_term - 2.0 * cross);
}

BFactor b_factor(double g, double delta, double kappa, double t_g) {
  BFactor out;
  out.b_loss = std::exp(-4.0 * kappa * alpha_norm_integral(g, delta, kappa, t_g));
  out.b_entanglement = std::exp(-2.0 * std::norm(alpha_closed_form(g, delta, kappa, t_g)));
  out.b = out.b_loss * out.b_entanglement;
  return out;
}

double b_factor_explicit(double g, double delta, double kappa, double t_g) {
  const double d2 = delta * delta;
  const double k2 = kappa * kappa;
  const double norm2 = d2 + k2;
  const double g2 = g * g;
  const double decay = std::exp(-kappa * t_g);
  const double exponent = -kappa * t_g * g2 / norm2 +
                          g2 * (d2 - k2) / (norm2 * norm2) * (std::cos(delta * t_g) * decay - 1.0) +
                          2.0 * g2 * decay * kappa * delta / (norm2 * norm2) * std::sin(delta * t_g);
  return std::exp(exponent);
}

double b_factor_simplified(double g, double kappa, int n) {
  return std::exp(-units::kPi * kappa / (2.0 * g * std::sqrt(static_cast<double>(n))));
}

TwoQubitChannel correlated_dephasing_channel(double b) {
  if (!(b >= 0.0 && b <= 1.0)) throw std::domain_error("correlated_dephasing_channel: b must lie in [0, 1]");
  const Mat4 id = Mat4::Identity();
  const Mat4 zz_op = zz();
  std::vector<Mat4> kraus;
  kraus.push_back(((1.0 + b) * id - (1.0 - b) * zz_op) / 2.0);
  kraus.push_back(std::sqrt((1.0 - std::pow(b, 4)) / 2.0) * (z1() + z2()) / 2.0);
  kraus.push_back((1.0 - b * b) / std::sqrt(2.0) * (id + zz_op) / 2.0);
  return TwoQubitChannel::from_kraus(std::move(kraus));
}

TwoQubitChannel intrinsic_dephasing_channel(double gamma_1, double gamma_2, double t) {
  if (!(gamma_1 >= 0.0) || !(gamma_2 >= 0.0) || !(t >= 0.0))
    throw std::domain_error("intrinsic_dephasing_channel: rates and time must be non-negative");
  const double p1 = -0.5 * std::expm1(-gamma_1 * t);
  const double p2 = -0.5 * std::expm1(-gamma_2 * t);
  std::vector<Mat4> kraus;
  kraus.push_back(std::sqrt((1.0 - p1) * (1.0 - p2)) * Mat4::Identity());
  kraus.push_back(std::sqrt(p1 * (1.0 - p2)) * z1());
  kraus.push_back(std::sqrt(p2 * (1.0 - p1)) * z2());
  kraus.push_back(std::sqrt(p1 * p2) * zz());
  return TwoQubitChannel::from_kraus(std::move(kraus));
}

Mat4 gate_target(const DerivedGateParams& params) {
  const double sign = params.delta < 0.0 ? -1.0 : 1.0;
  return ideal_gate_unitary(sign * units::kPi / 4.0);
}

TwoQubitChannel analytic_gate_channel(const DerivedGateParams& params, double gamma_1, double gamma_2) {
  const double g = params.g();
  const double b = b_factor(g, std::abs(params.delta), params.kappa, params.t_g).b;
  return intrinsic_dephasing_channel(gamma_1, gamma_2, params.t_g)
      .then(correlated_dephasing_channel(b))
      .then(TwoQubitChannel::unitary(gate_target(params)));
}

double analytic_avg_fidelity(double b, double gamma_phi, double t_g) {
  if (!(b >= 0.0 && b <= 1.0)) throw std::domain_error("analytic_avg_fidelity: b must lie in [0, 1]");
  const double decay = std::exp(-gamma_phi * t_g);
  return (4.0 + 4.0 * b * decay + (std::pow(b, 4) + 1.0) * decay * decay) / 10.0;
}

}  // namespace geophase
