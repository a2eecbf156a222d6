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

#include "geophase/fidelity.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "geophase/analytic_channel.hpp"
#include "geophase/linalg.hpp"
#include "geophase/optimize.hpp"
#include "geophase/units.hpp"

namespace geophase {

namespace {

constexpr double kImagTolerance = 1e-10;

std::array<Eigen::Vector2cd, 4> single_qubit_inputs() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0), Eigen::Vector2cd(r, r),
          Eigen::Vector2cd(r, kI * r)};
}

void require_cptp(const TwoQubitChannel& channel, double tolerance) {
  if (!std::isfinite(tolerance)) return;
  const CptpReport report = cptp_report(channel);
  if (!report.ok(tolerance)) {
    std::ostringstream msg;
    msg << "channel is not CPTP within " << tolerance << ": min Choi eigenvalue "
        << report.min_eigenvalue << ", trace error " << report.trace_error << ", eigenvalues ["
        << report.choi_eigenvalues.transpose() << "]";
    throw NonCptpError(msg.str(), report);
  }
}

// Terms Tr[dual_k^dag N'(basis_k)] for the chosen basis.
std::vector<cplx> overlap_terms(const TwoQubitChannel& channel, const Mat4& target, FidelityBasis basis) {
  const auto& states = basis == FidelityBasis::pauli ? pauli_basis() : product_input_states();
  std::array<Mat4, 16> duals;
  if (basis == FidelityBasis::pauli) {
    duals = states;
  } else {
    Eigen::Matrix<double, 16, 16> gram;
    for (int k = 0; k < 16; ++k)
      for (int l = 0; l < 16; ++l) gram(k, l) = (states[k].adjoint() * states[l]).trace().real();
    const Eigen::Matrix<double, 16, 16> inv = gram.inverse();
    for (int k = 0; k < 16; ++k) {
      duals[k] = Mat4::Zero();
      for (int m = 0; m < 16; ++m) duals[k] += inv(m, k) * states[m];
    }
  }
  std::vector<cplx> terms(16);
  for (int k = 0; k < 16; ++k) {
    const Mat4 noise_only = target.adjoint() * channel.apply(states[k]) * target;
    terms[k] = (duals[k].adjoint() * noise_only).trace();
  }
  return terms;
}

}  // namespace

const std::array<Mat4, 16>& product_input_states() {
  static const std::array<Mat4, 16> states = [] {
    std::array<Mat4, 16> out;
    const auto single = single_qubit_inputs();
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const Eigen::Vector4cd psi = kron(single[a], single[b]);
        out[a * 4 + b] = psi * psi.adjoint();
      }
    }
    return out;
  }();
  return states;
}

const std::array<Mat4, 16>& pauli_basis() {
  static const std::array<Mat4, 16> basis = [] {
    std::array<Mat4, 16> out;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) out[a * 4 + b] = two_qubit(pauli::by_index(a), pauli::by_index(b)) / 2.0;
    return out;
  }();
  return basis;
}

double entanglement_fidelity(const TwoQubitChannel& channel, const Mat4& target, const FidelityOptions& opts) {
  return average_gate_fidelity(channel, target, opts).f_e;
}

FidelityReport average_gate_fidelity(const TwoQubitChannel& channel, const Mat4& target,
                                     const FidelityOptions& opts) {
  require_cptp(channel, opts.cptp_tolerance);
  const auto terms = overlap_terms(channel, target, opts.basis);
  cplx sum = 0.0;
  FidelityReport report;
  report.basis_residuals.reserve(terms.size());
  for (const auto& t : terms) {
    sum += t;
    report.basis_residuals.push_back(1.0 - t.real());
  }
  sum /= 16.0;
  if (std::abs(sum.imag()) > kImagTolerance)
    throw std::logic_error("entanglement fidelity has an imaginary part " + std::to_string(sum.imag()));
  report.f_e = sum.real();
  report.f_avg = avg_from_entanglement(report.f_e);
  return report;
}

LocalZCompensation compensate_local_z(const TwoQubitChannel& channel, const Mat4& target, double tolerance,
                                      const FidelityOptions& opts) {
  require_cptp(channel, opts.cptp_tolerance);
  // Rz corrections are unitary, so only the overlap needs recomputing.
  FidelityOptions inner = opts;
  inner.cptp_tolerance = std::numeric_limits<double>::infinity();
  auto infidelity = [&](double t1, double t2) {
    const auto corrected = channel.then(TwoQubitChannel::unitary(local_z_rotation(t1, t2)));
    return 1.0 - average_gate_fidelity(corrected, target, inner).f_avg;
  };

  constexpr int kScan = 48;
  const double step = 2.0 * units::kPi / kScan;
  double best = infidelity(0.0, 0.0);
  double t1 = 0.0;
  double t2 = 0.0;
  for (int i = 0; i < kScan; ++i) {
    for (int k = 0; k < kScan; ++k) {
      const double a = -units::kPi + i * step;
      const double b = -units::kPi + k * step;
      const double v = infidelity(a, b);
      if (v < best) {
        best = v;
        t1 = a;
        t2 = b;
      }
    }
  }
  for (int sweep = 0; sweep < 60; ++sweep) {
    const double old1 = t1;
    const double old2 = t2;
    t1 = golden_section_minimize([&](double v) { return infidelity(v, t2); }, t1 - step, t1 + step, tolerance);
    t2 = golden_section_minimize([&](double v) { return infidelity(t1, v); }, t2 - step, t2 + step, tolerance);
    if (std::abs(t1 - old1) < tolerance && std::abs(t2 - old2) < tolerance) break;
  }

  LocalZCompensation out;
  out.theta1 = t1;
  out.theta2 = t2;
  out.corrected = channel.then(TwoQubitChannel::unitary(local_z_rotation(t1, t2)));
  out.report = average_gate_fidelity(out.corrected, target, inner);
  return out;
}

std::pair<TwoQubitChannel, Mat4> as_textbook_cphase(const TwoQubitChannel& channel, int delta_sign) {
  const double theta = delta_sign < 0 ? -units::kPi / 2.0 : units::kPi / 2.0;
  return {channel.then(TwoQubitChannel::unitary(local_z_rotation(theta, theta))), cphase_unitary()};
}

void to_json(nlohmann::json& j, const FidelityReport& report) {
  j = nlohmann::json{{"f_e", report.f_e}, {"f_avg", report.f_avg}, {"basis_residuals", report.basis_residuals}};
}

void from_json(const nlohmann::json& j, FidelityReport& report) {
  report.f_e = j.at("f_e").get<double>();
  report.f_avg = j.at("f_avg").get<double>();
  report.basis_residuals = j.at("basis_residuals").get<std::vector<double>>();
}

}  // namespace geophase
