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

#include "geophase/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "geophase/linalg.hpp"

namespace geophase {

namespace {

Mat16 superop_from_kraus(const std::vector<Mat4>& kraus) {
  Mat16 s = Mat16::Zero();
  for (const auto& k : kraus) s += kron(k.conjugate(), k);
  return s;
}

}  // namespace

TwoQubitChannel TwoQubitChannel::unitary(const Mat4& u) { return from_kraus({u}); }

TwoQubitChannel TwoQubitChannel::from_kraus(std::vector<Mat4> kraus) {
  if (kraus.empty()) throw std::invalid_argument("channel: empty Kraus set");
  TwoQubitChannel ch;
  ch.superop_ = superop_from_kraus(kraus);
  ch.kraus_ = std::move(kraus);
  return ch;
}

TwoQubitChannel TwoQubitChannel::from_superoperator(const Mat16& superop) {
  TwoQubitChannel ch;
  ch.superop_ = superop;
  return ch;
}

Mat4 TwoQubitChannel::apply(const Mat4& rho) const {
  const Vec16 out = superop_ * vec(rho);
  return unvec4(out);
}

Mat16 TwoQubitChannel::choi() const {
  Mat16 j;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      // E(|i><k|) has vec index k*4 + i.
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          j(i * 4 + a, k * 4 + b) = superop_(b * 4 + a, k * 4 + i) / 4.0;
        }
      }
    }
  }
  return j;
}

TwoQubitChannel TwoQubitChannel::then(const TwoQubitChannel& next) const {
  TwoQubitChannel out;
  out.superop_ = next.superop_ * superop_;
  if (kraus_ && next.kraus_) {
    std::vector<Mat4> composed;
    composed.reserve(kraus_->size() * next.kraus_->size());
    for (const auto& outer : *next.kraus_) {
      for (const auto& inner : *kraus_) composed.push_back(outer * inner);
    }
    out.kraus_ = std::move(composed);
  }
  return out;
}

double TwoQubitChannel::completeness_error() const {
  if (kraus_) {
    Mat4 sum = Mat4::Zero();
    for (const auto& k : *kraus_) sum += k.adjoint() * k;
    return (sum - Mat4::Identity()).cwiseAbs().maxCoeff();
  }
  return cptp_report(*this).trace_error;
}

CptpReport cptp_report(const TwoQubitChannel& channel) {
  CptpReport r;
  const Mat16 j = channel.choi();
  r.hermiticity_error = hermiticity_error(j);
  const Mat16 herm = 0.5 * (j + j.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat16> solver(herm, Eigen::EigenvaluesOnly);
  r.choi_eigenvalues = solver.eigenvalues();
  r.min_eigenvalue = r.choi_eigenvalues.minCoeff();
  // Tracing out the output leaves I/4 for a trace-preserving map.
  Mat4 reduced = Mat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int a = 0; a < 4; ++a) reduced(i, k) += j(i * 4 + a, k * 4 + a);
  r.trace_error = (reduced - Mat4::Identity() / 4.0).cwiseAbs().maxCoeff() * 4.0;
  return r;
}

double choi_distance(const TwoQubitChannel& a, const TwoQubitChannel& b) {
  return (a.choi() - b.choi()).norm();
}

Mat4 local_z_rotation(double theta1, double theta2) {
  Mat4 u = Mat4::Zero();
  for (int q = 0; q < 4; ++q) {
    const double phase = -0.5 * (theta1 * kZ1Sign[q] + theta2 * kZ2Sign[q]);
    u(q, q) = std::polar(1.0, phase);
  }
  return u;
}

nlohmann::json matrix_to_json(const MatX& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

MatX matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix json: expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  MatX m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument("matrix json: ragged rows");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& entry = row.at(static_cast<size_t>(k));
      m(i, k) = cplx(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

void to_json(nlohmann::json& j, const TwoQubitChannel& channel) {
  j = nlohmann::json::object();
  j["superoperator"] = matrix_to_json(channel.superoperator());
  if (channel.kraus()) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& k : *channel.kraus()) list.push_back(matrix_to_json(k));
    j["kraus"] = std::move(list);
  }
}

void from_json(const nlohmann::json& j, TwoQubitChannel& channel) {
  if (j.contains("kraus")) {
    std::vector<Mat4> kraus;
    for (const auto& item : j.at("kraus")) {
      const MatX m = matrix_from_json(item);
      if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("channel json: Kraus operator must be 4x4");
      kraus.emplace_back(m);
    }
    channel = TwoQubitChannel::from_kraus(std::move(kraus));
    return;
  }
  const MatX s = matrix_from_json(j.at("superoperator"));
  if (s.rows() != 16 || s.cols() != 16) throw std::invalid_argument("channel json: superoperator must be 16x16");
  channel = TwoQubitChannel::from_superoperator(Mat16(s));
}

}  // namespace geophase
