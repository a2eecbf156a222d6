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
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "geophase/channel.hpp"
#include "geophase/device_model.hpp"

// Master-equation solver for two qubits longitudinally coupled to one
// resonator mode. Composite states are D x D with D = 4 N, ordered
// qubit1 (x) qubit2 (x) Fock.

namespace geophase {

struct FockSpace {
  int dimension = 8;

  MatX annihilation() const;
  MatX number() const;
};

/// Truncated coherent state vector e^{-|a|^2/2} sum a^n / sqrt(n!) |n>.
VecX coherent_state(int dimension, cplx alpha);

MatX vacuum_density(int dimension);
MatX coherent_density(int dimension, cplx alpha);

/// rho_qubits (x) rho_cavity.
MatX product_state(const Mat4& qubits, const MatX& cavity);
Mat4 trace_out_cavity(const MatX& rho, int dimension);
MatX trace_out_qubits(const MatX& rho, int dimension);

/// I_4 (x) op.
MatX embed_cavity(const MatX& op);
/// op (x) I_N.
MatX embed_qubits(const Mat4& op, int dimension);

/// Drive-frame Hamiltonian Delta a^dag a + (g1/2)(a + a^dag) Z1 + (g2/2)(a + a^dag) Z2.
MatX build_hamiltonian(const DerivedGateParams& params, int dimension);

/// -i[H, rho] + 2 kappa D[a] rho + gamma_1 D[Z1] rho / 2 + gamma_2 D[Z2] rho / 2 on
/// the dense composite space. The Fock dimension is rho.rows() / 4.
MatX lindblad_rhs(const MatX& rho, const MatX& h, double kappa, double gamma_1, double gamma_2);

/// The same generator evaluated block by block. H is diagonal in the qubit
/// basis, so each N x N block (q, p) evolves on its own, and every Fock
/// operator involved is tridiagonal.
class GateModel {
 public:
  GateModel(const DerivedGateParams& params, double gamma_1, double gamma_2, int dimension);

  int dimension() const { return n_; }
  void derivative(const MatX& rho, MatX& out) const;
  MatX derivative(const MatX& rho) const;

 private:
  int n_;
  double delta_;
  double kappa_;
  std::vector<double> root_;
  std::array<double, 4> shift_{};
  Eigen::Matrix4d dephasing_;
};

struct StepPolicy {
  double dt = 0.02;  // ns
  int min_steps = 200;
  int max_steps = 10000;

  int steps_for(double t) const;
  static StepPolicy fixed(int steps) { return {0.0, steps, steps}; }
};

struct SimDiagnostics {
  double max_top_population = 0.0;
  double final_polaron_residual = 0.0;
  int steps = 0;
  double trace_drift = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  bool failed = false;
  std::string message;

  void merge(const SimDiagnostics& other);
};

struct SimOptions {
  int n_photon = 8;
  StepPolicy policy;
  double top_population_threshold = 1e-4;
  double trace_tolerance = 1e-8;
  double reconstruction_tolerance = 1e-6;
  // Raise n_photon when a displaced initial state needs more levels.
  bool auto_dimension = true;
};

/// Called after every step with (t, rho).
using StepObserver = std::function<void(double, const MatX&)>;

struct Evolution {
  MatX rho;
  SimDiagnostics diagnostics;
};

Evolution evolve_rk4(const GateModel& model, const MatX& rho0, double t, const StepPolicy& policy,
                     const SimOptions& opts = {}, const StepObserver& observer = {});

/// Population of the highest Fock level summed over qubit states.
double top_level_population(const MatX& rho, int dimension);

struct InitialCavity {
  enum class Kind { vacuum, coherent, thermal };
  Kind kind = Kind::vacuum;
  cplx alpha{0.0, 0.0};
  double n_bar = 0.0;
  int samples = 64;
  std::uint64_t seed = 0;

  static InitialCavity vacuum() { return {}; }
  static InitialCavity coherent(cplx a) { return {Kind::coherent, a, 0.0, 64, 0}; }
  static InitialCavity thermal(double n_bar, int samples, std::uint64_t seed) {
    return {Kind::thermal, {0.0, 0.0}, n_bar, samples, seed};
  }
};

/// Smallest dimension whose Poisson tail beyond the top level is below 1e-7 for
/// a displacement of modulus `amplitude`.
int required_fock_dimension(double amplitude);

enum class ChannelMethod {
  product_inputs,    // 16 product states, linear reconstruction, Bell check
  block_multiplier,  // one run from |++> (x) rho_cav; the map is a Schur product
};

struct ChannelResult {
  TwoQubitChannel channel;
  SimDiagnostics diagnostics;
  double reconstruction_residual = 0.0;
  int dimension = 0;
};

ChannelResult extract_channel(const DerivedGateParams& params, double gamma_1, double gamma_2,
                              const InitialCavity& cavity = InitialCavity::vacuum(), const SimOptions& opts = {},
                              ChannelMethod method = ChannelMethod::product_inputs);

struct PolaronReport {
  std::vector<double> times;
  std::vector<double> residuals;
  double max_residual = 0.0;
  SimDiagnostics diagnostics;
};

/// Evolves |++> (x) |0> and, at each sampled time, measures the weight outside
/// the qubit-conditioned coherent states |s alpha(t)>, s = z1 + z2.
PolaronReport polaron_residual(const DerivedGateParams& params, const std::vector<double>& t_samples,
                               double gamma_1 = 0.0, double gamma_2 = 0.0, const SimOptions& opts = {});

struct ThermalAverage {
  TwoQubitChannel channel;      // plain average over sampled coherent states
  TwoQubitChannel compensated;  // average of per-sample local-Z compensated channels
  std::vector<cplx> amplitudes;
  SimDiagnostics diagnostics;
};

/// Monte-Carlo average over coherent amplitudes from the complex Gaussian with
/// variance n_bar. Deterministic in `seed`.
ThermalAverage thermal_average_channel(const DerivedGateParams& params, double gamma_1, double gamma_2,
                                       double n_bar, int samples, std::uint64_t seed,
                                       const SimOptions& opts = {});

struct TrajectorySample {
  double t_ns = 0.0;
  double trace = 0.0;
  double purity = 0.0;
  double mean_photon = 0.0;
  double top_level_pop = 0.0;
  double polaron_residual = 0.0;
};

/// Per-step observables for |++> (x) |0>.
std::vector<TrajectorySample> simulate_trajectory(const DerivedGateParams& params, double gamma_1, double gamma_2,
                                                  const SimOptions& opts = {});

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& samples);

}  // namespace geophase
