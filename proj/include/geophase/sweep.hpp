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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "geophase/device_model.hpp"
#include "geophase/lindblad.hpp"
#include "geophase/noise_optimum.hpp"

// Run configuration, per-point optimisation, parameter sweeps and result
// emission. Config keys carry their units (omega_r_ghz, s_eps_ev2, ...).

namespace geophase {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RunMode { analytic, simulate, sweep, optimize };
enum class TargetGate { ug, cz };

struct AxisSpec {
  std::string name;
  std::vector<double> values;
};

/// Names accepted as sweep axes.
const std::vector<std::string>& axis_names();

std::vector<double> log_range(double start, double stop, int count);
std::vector<double> linear_range(double start, double stop, int count);

struct RunConfig {
  double omega_r_ghz = 6.5;
  double z_r_ohm = 5000.0;
  double q = 20000.0;
  double c_r = 0.18;
  double j0_ghz = 1.0;
  double eps_a_uev = 100.0;
  double eps_0_uev = 0.0;
  std::optional<double> eps_d_uev;
  double eps_d_scale = 1.0;
  double s_eps_ev2 = 1.4e-16;
  double beta = 0.67;
  double eta = 0.086;
  int m = 1;
  int n = 2;
  double j_min_ghz = 0.05;
  double j_max_ghz = 30.0;
  double eps_window = 6.0;
  int delta_sign = 1;

  int n_photon = 8;
  double dt_ns = 0.02;
  int min_steps = 200;
  int max_steps = 10000;
  double top_population_threshold = 1e-4;
  InitialCavity initial_cavity;

  bool numeric = false;
  bool refine = true;
  std::uint64_t seed = 0;
  int jobs = 1;
  TargetGate target = TargetGate::ug;
  RunMode mode = RunMode::optimize;
  std::vector<AxisSpec> axes;

  std::string out_csv;
  std::string out_json;
  std::string out_trajectory;

  /// Sets a named scalar parameter (an axis name). Throws ConfigError.
  void set(const std::string& name, double value);
  double get(const std::string& name) const;
  void validate() const;

  ResonatorSpec resonator() const;
  NoiseSpec noise() const;
  ExchangeWindow window() const;
  SimOptions sim_options() const;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);
RunConfig load_config(const std::string& path);

struct SweepRow {
  std::vector<std::pair<std::string, double>> inputs;
  double z_ohm = 0.0;
  double q = 0.0;
  int n = 0;
  double j_ghz = 0.0;
  double eps_d_over_eps_a = 0.0;
  double g_mhz = 0.0;
  double delta_mhz = 0.0;
  double t_g_ns = 0.0;
  double f_analytic = 0.0;
  std::optional<double> f_numeric;
  std::optional<double> infidelity_powerlaw;
  bool clamped = false;
  std::optional<double> max_fock_pop;

  double gamma_phi_per_s = 0.0;
  double kappa_per_s = 0.0;
  double b = 0.0;
  double infidelity_closed_form = 0.0;
  int refine_sweeps = 0;
  bool numeric_failed = false;
  std::string diagnostics;
  std::optional<std::string> error;
};

struct SweepResult {
  std::vector<std::string> axes;
  std::vector<SweepRow> rows;
};

/// Analytic gate at exchange j and drive eps_d (internal units).
struct PointPhysics {
  DerivedGateParams params;
  double gamma_phi = 0.0;
  double b = 1.0;
  double f_analytic = 0.0;
};

PointPhysics evaluate_gate(const RunConfig& config, double j, double eps_d);

struct OperatingPoint {
  double j = 0.0;
  double eps_d = 0.0;
  double j_closed_form = 0.0;
  double eps_d_closed_form = 0.0;
  double infidelity = 0.0;
  double infidelity_closed_form = 0.0;
  bool clamped = false;
  int refine_sweeps = 0;
};

/// Closed-form (J, eps_d) at the configured (Z_r, Q), clamped to the exchange
/// window and refined by coordinate descent on the analytic infidelity when
/// config.refine is set. eps_d_scale is not applied.
OperatingPoint optimal_operating_point(const RunConfig& config);

/// (J, eps_d) of the configured operating point, internal units.
std::pair<double, double> fixed_operating_point(const RunConfig& config);

/// Operating point of `config` as written: J = J0 exp(eps_0 / eps_a), eps_d
/// from eps_d_uev or the closed-form optimum at that J.
SweepRow evaluate_fixed_point(const RunConfig& config);

/// Closed-form optimum at (Z_r, Q), refined by coordinate descent when
/// config.refine is set.
SweepRow optimize_point(const RunConfig& config, double z_r_ohm, double q);

/// Cartesian product of config.axes (first axis outermost), each point
/// optimised. Points run on config.jobs threads; row order is fixed.
SweepResult run_sweep(const RunConfig& config);

void write_csv(std::ostream& out, const SweepResult& result);
void write_json(std::ostream& out, const SweepResult& result, const RunConfig& config);
SweepResult read_json(std::istream& in);

inline constexpr int kResultSchemaVersion = 1;

}  // namespace geophase
