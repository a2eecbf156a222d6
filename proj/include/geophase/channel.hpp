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
#include <vector>

#include <json.hpp>

#include "geophase/types.hpp"

namespace geophase {

/// A linear map on two-qubit density matrices, held as a 16x16 Liouville
/// superoperator (column-stacking vec). Channels built from Kraus operators
/// keep them alongside.
class TwoQubitChannel {
 public:
  TwoQubitChannel() : superop_(Mat16::Identity()) {}

  static TwoQubitChannel identity() { return {}; }
  static TwoQubitChannel unitary(const Mat4& u);
  static TwoQubitChannel from_kraus(std::vector<Mat4> kraus);
  static TwoQubitChannel from_superoperator(const Mat16& superop);

  Mat4 apply(const Mat4& rho) const;

  const Mat16& superoperator() const { return superop_; }
  const std::optional<std::vector<Mat4>>& kraus() const { return kraus_; }

  /// Normalised Choi matrix (1/4) sum_ij |i><j| (x) E(|i><j|), trace one.
  Mat16 choi() const;

  /// `next` applied after this channel.
  TwoQubitChannel then(const TwoQubitChannel& next) const;

  /// max |sum K^dag K - I| for Kraus channels, otherwise the trace-preservation
  /// error of the superoperator.
  double completeness_error() const;

 private:
  Mat16 superop_;
  std::optional<std::vector<Mat4>> kraus_;
};

struct CptpReport {
  Eigen::Matrix<double, 16, 1> choi_eigenvalues;
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;
  double hermiticity_error = 0.0;

  bool ok(double tolerance) const {
    return min_eigenvalue >= -tolerance && trace_error <= tolerance && hermiticity_error <= tolerance;
  }
};

CptpReport cptp_report(const TwoQubitChannel& channel);

/// Frobenius distance between normalised Choi matrices.
double choi_distance(const TwoQubitChannel& a, const TwoQubitChannel& b);

/// Rz(theta1) (x) Rz(theta2) with Rz(theta) = diag(exp(-i theta/2), exp(i theta/2)).
Mat4 local_z_rotation(double theta1, double theta2);

void to_json(nlohmann::json& j, const TwoQubitChannel& channel);
void from_json(const nlohmann::json& j, TwoQubitChannel& channel);

nlohmann::json matrix_to_json(const MatX& m);
MatX matrix_from_json(const nlohmann::json& j);

}  // namespace geophase
