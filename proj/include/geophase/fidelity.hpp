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

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "geophase/channel.hpp"

namespace geophase {

enum class FidelityBasis { pauli, product_states };

struct FidelityReport {
  double f_e = 0.0;
  double f_avg = 0.0;
  // 1 - Re Tr[dual_mu N'(rho_mu)] for each basis element.
  std::vector<double> basis_residuals;
};

struct FidelityOptions {
  FidelityBasis basis = FidelityBasis::pauli;
  // Choi positivity / trace-preservation tolerance for the precondition.
  double cptp_tolerance = 1e-6;
};

class NonCptpError : public std::runtime_error {
 public:
  NonCptpError(const std::string& what, CptpReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const CptpReport& report() const { return report_; }

 private:
  CptpReport report_;
};

/// Products of |0>, |1>, (|0>+|1>)/sqrt2, (|0>+i|1>)/sqrt2 on both qubits,
/// qubit 1 index major.
const std::array<Mat4, 16>& product_input_states();

/// Trace-orthonormal two-qubit Pauli basis P_mu / 2.
const std::array<Mat4, 16>& pauli_basis();

double entanglement_fidelity(const TwoQubitChannel& channel, const Mat4& target,
                             const FidelityOptions& opts = {});

FidelityReport average_gate_fidelity(const TwoQubitChannel& channel, const Mat4& target,
                                     const FidelityOptions& opts = {});

inline double avg_from_entanglement(double f_e) { return (4.0 * f_e + 1.0) / 5.0; }

struct LocalZCompensation {
  double theta1 = 0.0;
  double theta2 = 0.0;
  FidelityReport report;
  TwoQubitChannel corrected;  // channel followed by Rz(theta1) (x) Rz(theta2)
};

/// Finds the single-qubit Z corrections maximising F_avg against `target`
/// (coarse scan, then alternating golden-section searches to `tolerance` rad).
LocalZCompensation compensate_local_z(const TwoQubitChannel& channel, const Mat4& target,
                                      double tolerance = 1e-6, const FidelityOptions& opts = {});

/// Appends the local Z rotations that turn exp(+-i pi/4 ZZ) into diag(1,1,1,-1)
/// and returns the pair (corrected channel, textbook CPHASE).
std::pair<TwoQubitChannel, Mat4> as_textbook_cphase(const TwoQubitChannel& channel, int delta_sign = 1);

void to_json(nlohmann::json& j, const FidelityReport& report);
void from_json(const nlohmann::json& j, FidelityReport& report);

}  // namespace geophase
