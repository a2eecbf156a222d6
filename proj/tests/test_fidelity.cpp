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

#include <catch_amalgamated.hpp>

#include <random>

#include "geophase/analytic_channel.hpp"
#include "geophase/fidelity.hpp"
#include "geophase/linalg.hpp"
#include "geophase/units.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using namespace geophase;

namespace {

const Mat4 kUg = ideal_gate_unitary(units::kPi / 4.0);

TwoQubitChannel depolarizing() {
  std::vector<Mat4> kraus;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) kraus.push_back(two_qubit(pauli::by_index(a), pauli::by_index(b)) / 4.0);
  return TwoQubitChannel::from_kraus(std::move(kraus));
}

FidelityOptions product_basis() {
  FidelityOptions o;
  o.basis = FidelityBasis::product_states;
  return o;
}

// Textbook formula F_avg = (|Tr U^dag V|^2 + d) / (d (d + 1)) for unitary channels.
double unitary_avg_fidelity(const Mat4& u, const Mat4& v) {
  return (std::norm((u.adjoint() * v).trace()) + 4.0) / 20.0;
}

}  // namespace

TEST_CASE("bases are trace-orthonormal or complete") {
  const auto& p = pauli_basis();
  for (int k = 0; k < 16; ++k)
    for (int l = 0; l < 16; ++l)
      CHECK(std::abs((p[k].adjoint() * p[l]).trace() - (k == l ? 1.0 : 0.0)) < 1e-15);
  Mat16 span;
  for (int k = 0; k < 16; ++k) span.col(k) = vec(product_input_states()[k]);
  CHECK(span.fullPivLu().rank() == 16);
  for (const auto& rho : product_input_states()) CHECK(std::abs(rho.trace() - 1.0) < 1e-15);
}

TEST_CASE("trivial fidelities") {
  CHECK(average_gate_fidelity(TwoQubitChannel::identity(), Mat4::Identity()).f_avg == 1.0);
  CHECK_THAT(average_gate_fidelity(TwoQubitChannel::unitary(kUg), kUg).f_avg, WithinAbs(1.0, 1e-15));
  const auto dep = average_gate_fidelity(depolarizing(), kUg);
  CHECK_THAT(dep.f_e, WithinAbs(1.0 / 16.0, 1e-15));
  CHECK_THAT(dep.f_avg, WithinAbs(0.25, 1e-15));
  CHECK_THAT(avg_from_entanglement(1.0 / 16.0), WithinAbs(0.25, 1e-16));
}

TEST_CASE("Pauli and product-state bases agree") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const auto ch = oracle::random_channel(1 + k % 5, rng);
    const Mat4 target = oracle::random_unitary(4, rng);
    const double a = average_gate_fidelity(ch, target).f_avg;
    const double b = average_gate_fidelity(ch, target, product_basis()).f_avg;
    CHECK_THAT(a, WithinAbs(b, 1e-12));
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
  }
  // Z flip on qubit 1 against the ideal gate.
  const auto flip = TwoQubitChannel::unitary(z1()).then(TwoQubitChannel::unitary(kUg));
  const double a = average_gate_fidelity(flip, kUg).f_avg;
  CHECK_THAT(a, WithinAbs(average_gate_fidelity(flip, kUg, product_basis()).f_avg, 1e-12));
  CHECK_THAT(a, WithinAbs(0.2, 1e-14));
}

TEST_CASE("unitary channels match the trace formula") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 20; ++k) {
    const Mat4 u = oracle::random_unitary(4, rng);
    const Mat4 v = oracle::random_unitary(4, rng);
    CHECK_THAT(average_gate_fidelity(TwoQubitChannel::unitary(v), u).f_avg,
               WithinAbs(unitary_avg_fidelity(u, v), 1e-12));
    // F = 1 only for the target itself.
    CHECK(average_gate_fidelity(TwoQubitChannel::unitary(v), u).f_avg < 1.0 - 1e-6);
    CHECK_THAT(average_gate_fidelity(TwoQubitChannel::unitary(u), u).f_avg, WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("local unitary invariance") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    const auto ch = oracle::random_channel(3, rng);
    const Mat4 target = oracle::random_unitary(4, rng);
    const Mat4 local = kron(Eigen::Matrix2cd(oracle::random_unitary(2, rng)), Eigen::Matrix2cd(oracle::random_unitary(2, rng)));
    const auto conj = TwoQubitChannel::unitary(local.adjoint()).then(ch).then(TwoQubitChannel::unitary(local));
    CHECK_THAT(average_gate_fidelity(conj, local * target * local.adjoint()).f_avg,
               WithinAbs(average_gate_fidelity(ch, target).f_avg, 1e-12));
  }
}

TEST_CASE("non-CPTP input raises with the eigenvalue report") {
  Mat16 t = Mat16::Zero();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) t(i * 4 + k, k * 4 + i) = 1.0;
  try {
    average_gate_fidelity(TwoQubitChannel::from_superoperator(t), kUg);
    FAIL("expected NonCptpError");
  } catch (const NonCptpError& e) {
    CHECK(e.report().min_eigenvalue < -0.2);
    CHECK(std::string(e.what()).find("min Choi eigenvalue") != std::string::npos);
  }
}

TEST_CASE("local-Z compensation recovers known rotations") {
  const auto noisy = analytic_gate_channel(gate_params_from_coupling(0.7, 0.7, 1e-3, 2), 1e-3, 1e-3);
  const double reference = average_gate_fidelity(noisy, kUg).f_avg;
  const auto skewed = noisy.then(TwoQubitChannel::unitary(local_z_rotation(0.37, -1.21)));
  CHECK(average_gate_fidelity(skewed, kUg).f_avg < reference - 0.05);
  const auto comp = compensate_local_z(skewed, kUg);
  CHECK_THAT(comp.report.f_avg, WithinAbs(reference, 1e-11));
  CHECK_THAT(std::remainder(comp.theta1 + 0.37, 2.0 * units::kPi), WithinAbs(0.0, 1e-5));
  CHECK_THAT(std::remainder(comp.theta2 - 1.21, 2.0 * units::kPi), WithinAbs(0.0, 1e-5));
}

TEST_CASE("textbook CPHASE comparison") {
  const auto [ch, cz] = as_textbook_cphase(TwoQubitChannel::unitary(kUg));
  CHECK_THAT(average_gate_fidelity(ch, cz).f_avg, WithinAbs(1.0, 1e-14));
  const auto [below, cz2] = as_textbook_cphase(TwoQubitChannel::unitary(ideal_gate_unitary(-units::kPi / 4.0)), -1);
  CHECK_THAT(average_gate_fidelity(below, cz2).f_avg, WithinAbs(1.0, 1e-14));
  // A noisy channel scores the same against either target.
  const auto noisy = analytic_gate_channel(gate_params_from_coupling(0.7, 0.7, 1e-3, 2), 2e-3, 1e-3);
  const auto [noisy_cz, target] = as_textbook_cphase(noisy);
  CHECK_THAT(average_gate_fidelity(noisy_cz, target).f_avg, WithinAbs(average_gate_fidelity(noisy, kUg).f_avg, 1e-14));
}

TEST_CASE("fidelity report JSON round trip") {
  const auto report = average_gate_fidelity(depolarizing(), kUg);
  const nlohmann::json j = report;
  const auto back = j.get<FidelityReport>();
  CHECK(back.f_e == report.f_e);
  CHECK(back.f_avg == report.f_avg);
  CHECK(back.basis_residuals == report.basis_residuals);
  CHECK(report.basis_residuals.size() == 16);
}
