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

#include "geophase/analytic_channel.hpp"
#include "geophase/noise_optimum.hpp"
#include "geophase/optimize.hpp"
#include "geophase/units.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace geophase;
namespace frozen = oracle::frozen;

namespace {

NoiseSpec paper_noise() { return NoiseSpec::from_boundary(1.4e-16, 0.67, 0.086); }
ResonatorSpec paper_resonator(double z = 5000.0, double q = 20000.0) { return ResonatorSpec::from_ghz(6.5, z, q); }
const double kEpsA = units::uev_to_internal(100.0);
constexpr double kCr = 0.18;

struct Gate {
  double gamma_phi;
  double t_g;
  double g;
};

Gate gate_at(double j, double eps_d, const NoiseSpec& noise, const ResonatorSpec& res, int n) {
  const double v0 = units::volts_to_internal(photon_voltage(res));
  const double g = 0.5 * (j / (kEpsA * kEpsA)) * kCr * v0 * eps_d;
  const auto s = gate_schedule(g, g, n);
  return {dephasing_rate(j, eps_d, noise, kEpsA).gamma_phi, s.t_g, g};
}

}  // namespace

TEST_CASE("Hahn echo constant") {
  CHECK_THAT(hahn_eta(0.67), WithinRel(frozen::kEta067, 1e-13));
  CHECK_THAT(hahn_eta(0.5), WithinRel(frozen::kEta05, 1e-13));
  // The configured default 0.086 is the rounded Hahn value.
  CHECK_THAT(hahn_eta(0.67), WithinAbs(0.086, 5e-4));
  CHECK_THROWS_AS(hahn_eta(1.0), std::domain_error);
  CHECK_THROWS_AS(hahn_eta(0.0), std::domain_error);
  CHECK_THROWS_AS(hahn_eta(2.0), std::domain_error);
}

TEST_CASE("dephasing rate scaling") {
  const auto noise = paper_noise();
  const double j = units::ghz_to_internal(1.0);
  const auto base = dephasing_rate(j, 0.0, noise, kEpsA);
  CHECK(base.gamma_phi == base.gamma_phi_0);
  // gamma ~ J^(2/(1+beta))
  const auto doubled = dephasing_rate(2.0 * j, 0.0, noise, kEpsA);
  CHECK_THAT(doubled.gamma_phi_0 / base.gamma_phi_0, WithinRel(std::pow(2.0, 2.0 / 1.67), 1e-13));
  // drive enhancement (1 + u^2)^(2/(1+beta)) with u = eps_d / 2 eps_a
  const auto driven = dephasing_rate(j, 2.0 * kEpsA, noise, kEpsA);
  CHECK_THAT(driven.gamma_phi / driven.gamma_phi_0, WithinRel(std::pow(2.0, 2.0 / 1.67), 1e-13));
  // decoupling: gamma_phi_0 / m^beta
  auto cpmg = noise;
  cpmg.m = 4;
  CHECK_THAT(dephasing_rate(j, 0.0, cpmg, kEpsA).gamma_phi_0 / base.gamma_phi_0,
             WithinRel(std::pow(4.0, -0.67), 1e-13));
  CHECK_THROWS_AS(dephasing_rate(0.0, 0.0, noise, kEpsA), std::domain_error);
}

TEST_CASE("closed-form optimum at the paper point") {
  const auto noise = paper_noise();
  const auto res = paper_resonator();
  const double kappa = cavity_decay(res);
  const double j = optimal_exchange(noise, kappa, 2, kEpsA);
  CHECK_THAT(j / kEpsA, WithinRel(frozen::kJOverEpsA, 1e-9));
  CHECK_THAT(units::internal_to_ghz(j), WithinRel(frozen::kJOptGhz, 1e-9));
  const double g0 = dephasing_rate(j, 0.0, noise, kEpsA).gamma_phi_0;
  CHECK_THAT(units::internal_to_per_s(g0), WithinRel(frozen::kGamma0PerS, 1e-9));

  const auto drive = optimal_drive(noise, kappa, 2, kEpsA, g0);
  CHECK_FALSE(drive.clamped);
  CHECK_THAT(drive.eps_d_opt / kEpsA, WithinRel(2.0 / std::sqrt(0.67), 1e-12));
  const auto gate = gate_at(drive.j_opt, drive.eps_d_opt, noise, res, 2);
  CHECK_THAT(gate.g, WithinRel(frozen::kGRadPerNs, 1e-9));
  CHECK_THAT(units::internal_to_mhz(gate.g), WithinRel(frozen::kGMhz, 1e-9));
  CHECK_THAT(gate.t_g, WithinRel(frozen::kTgNs, 1e-9));
  CHECK_THAT(units::internal_to_per_s(gate.gamma_phi), WithinRel(frozen::kGammaPhiPerS, 1e-9));
  CHECK_THAT(infidelity_first_order(gate.gamma_phi, kappa, gate.t_g, 2), WithinRel(frozen::kFirstOrder, 1e-9));
  const double b = b_factor(gate.g, 2.0 * std::sqrt(2.0) * gate.g, kappa, gate.t_g).b;
  CHECK_THAT(b, WithinRel(frozen::kBPaper, 1e-9));
  CHECK_THAT(analytic_avg_fidelity(b, gate.gamma_phi, gate.t_g), WithinRel(frozen::kFClosedForm, 1e-9));
}

// The closed form is the stationary point of the first-order infidelity when
// the drive enhances dephasing by (1 + u^2), u = eps_d / 2 eps_a.
TEST_CASE("closed form minimises the first-order infidelity") {
  const auto noise = paper_noise();
  for (double q : {1e3, 2e4, 2e5}) {
    const auto res = paper_resonator(500.0, q);
    const double kappa = cavity_decay(res);
    auto cost = [&](double log_j, double log_e) {
      const double j = std::exp(log_j);
      const double eps_d = std::exp(log_e);
      const auto g = gate_at(j, eps_d, noise, res, 2);
      const double u = eps_d / (2.0 * kEpsA);
      const double gamma = dephasing_rate(j, 0.0, noise, kEpsA).gamma_phi_0 * (1.0 + u * u);
      return infidelity_first_order(gamma, kappa, g.t_g, 2);
    };
    // Brute-force minimisation with alternating golden sections.
    double lj = std::log(units::ghz_to_internal(1.0));
    double le = std::log(kEpsA);
    for (int k = 0; k < 200; ++k) {
      lj = golden_section_minimize([&](double v) { return cost(v, le); }, lj - 3.0, lj + 3.0, 1e-12);
      le = golden_section_minimize([&](double v) { return cost(lj, v); }, le - 3.0, le + 3.0, 1e-12);
    }
    const double j = optimal_exchange(noise, kappa, 2, kEpsA);
    const double g0 = dephasing_rate(j, 0.0, noise, kEpsA).gamma_phi_0;
    CHECK_THAT(std::exp(lj), WithinRel(j, 1e-5));
    CHECK_THAT(std::exp(le), WithinRel(optimal_drive_amplitude(kappa, 2, kEpsA, g0), 1e-5));
  }
}

TEST_CASE("optimal drive limits") {
  // kappa -> 0 at fixed gamma_phi_0 drives eps_d to 2 eps_a.
  CHECK_THAT(optimal_drive_amplitude(1e-12, 2, kEpsA, 1e-3) / kEpsA, WithinRel(2.0, 1e-8));
  CHECK_THROWS_AS(optimal_drive_amplitude(1e-3, 2, kEpsA, 0.0), std::domain_error);

  auto noise = paper_noise();
  const double kappa = cavity_decay(paper_resonator());
  const ExchangeWindow tight{units::ghz_to_internal(2.0), units::ghz_to_internal(30.0)};
  const auto clamped = optimal_drive(noise, kappa, 2, kEpsA, 1e-3, tight);
  CHECK(clamped.clamped);
  CHECK(clamped.j_opt == tight.j_min);
  CHECK(clamped.j_opt_unclamped < tight.j_min);

  noise.beta = 1.2;
  CHECK_THROWS_AS(optimal_exchange(noise, kappa, 2, kEpsA), std::domain_error);
}

TEST_CASE("power-law estimate") {
  const auto noise = paper_noise();
  const auto res = paper_resonator();
  CHECK_THAT(infidelity_power_law(noise, res, kCr, 2), WithinRel(frozen::kPowerLaw, 1e-9));
  CHECK_THROWS_AS(infidelity_power_law(noise, res, kCr, 1), std::domain_error);
  auto flat = noise;
  flat.beta = 1.0;
  CHECK_THROWS_AS(infidelity_power_law(flat, res, kCr, 2), std::domain_error);

  // Scaling: Z^-1/2, Q^-(1-beta)/2, c_r^-1.
  const double base = infidelity_power_law(noise, res, kCr, 2);
  CHECK_THAT(infidelity_power_law(noise, paper_resonator(20000.0), kCr, 2) / base,
             WithinRel(0.5, 1e-12));
  CHECK_THAT(infidelity_power_law(noise, paper_resonator(5000.0, 200000.0), kCr, 2) / base,
             WithinRel(std::pow(10.0, -0.165), 1e-12));
  CHECK_THAT(infidelity_power_law(noise, res, 2.0 * kCr, 2) / base, WithinRel(0.5, 1e-12));
}

TEST_CASE("power-law over first-order ratio depends only on beta and n") {
  for (double z : {50.0, 500.0, 5000.0, 50000.0}) {
    for (double q : {1e3, 2e4, 2e5}) {
      for (double s : {1e-17, 1.4e-16, 3e-15}) {
        for (double c_r : {0.05, 0.18, 0.5}) {
          const auto noise = NoiseSpec::from_boundary(s, 0.67, 0.086);
          const auto res = paper_resonator(z, q);
          const double kappa = cavity_decay(res);
          const double j = optimal_exchange(noise, kappa, 2, kEpsA);
          const double g0 = dephasing_rate(j, 0.0, noise, kEpsA).gamma_phi_0;
          const double eps_d = optimal_drive_amplitude(kappa, 2, kEpsA, g0);
          const double v0 = units::volts_to_internal(photon_voltage(res));
          const double g = 0.5 * (j / (kEpsA * kEpsA)) * c_r * v0 * eps_d;
          const auto sched = gate_schedule(g, g, 2);
          const double first = infidelity_first_order(dephasing_rate(j, eps_d, noise, kEpsA).gamma_phi, kappa,
                                                      sched.t_g, 2);
          CHECK_THAT(infidelity_power_law(noise, res, c_r, 2) / first, WithinRel(frozen::kPowerLawRatio, 1e-9));
        }
      }
    }
  }
}
