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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "geophase/analytic_channel.hpp"
#include "geophase/lindblad.hpp"
#include "geophase/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Flags {
  std::string config;
  std::string out;
  std::string format = "csv";
  bool numeric = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string trajectory;
  std::optional<double> z_ohm;
  std::optional<double> q;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out, "output file (stdout when omitted)");
  cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--numeric", f.numeric, "verify each point with the master-equation solver");
  cmd->add_option("--seed", f.seed, "random seed for thermal sampling");
  cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
}

geophase::RunConfig resolve(const Flags& f, geophase::RunMode mode) {
  geophase::RunConfig c = f.config.empty() ? geophase::config_from_json(nlohmann::json::object())
                                           : geophase::load_config(f.config);
  c.mode = mode;
  if (f.numeric) c.numeric = true;
  if (f.seed) {
    c.seed = *f.seed;
    c.initial_cavity.seed = *f.seed;
  }
  if (f.jobs) c.jobs = *f.jobs;
  if (f.z_ohm) c.z_r_ohm = *f.z_ohm;
  if (f.q) c.q = *f.q;
  if (!f.trajectory.empty()) c.out_trajectory = f.trajectory;
  c.validate();
  return c;
}

void emit(const geophase::SweepResult& result, const geophase::RunConfig& config, const Flags& f) {
  auto write = [&](std::ostream& os, const std::string& format) {
    if (format == "json")
      geophase::write_json(os, result, config);
    else
      geophase::write_csv(os, result);
  };
  auto write_file = [&](const std::string& path, const std::string& format) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error(path + ": cannot open for writing");
    write(os, format);
    if (!os) throw std::runtime_error(path + ": write failed");
  };
  if (!f.out.empty())
    write_file(f.out, f.format);
  else if (config.out_csv.empty() && config.out_json.empty())
    write(std::cout, f.format);
  if (!config.out_csv.empty()) write_file(config.out_csv, "csv");
  if (!config.out_json.empty()) write_file(config.out_json, "json");
}

int status_of(const geophase::SweepResult& result) {
  for (const auto& r : result.rows) {
    if (r.error) std::cerr << "point z=" << r.z_ohm << " q=" << r.q << ": " << *r.error << '\n';
    if (r.numeric_failed) std::cerr << "point z=" << r.z_ohm << " q=" << r.q << ": " << r.diagnostics << '\n';
  }
  for (const auto& r : result.rows)
    if (r.error || r.numeric_failed) return kExitNumeric;
  return kExitOk;
}

void dump_trajectory(const geophase::RunConfig& config) {
  const auto [j, eps_d] = geophase::fixed_operating_point(config);
  const auto phys = geophase::evaluate_gate(config, j, eps_d);
  const auto rows = geophase::simulate_trajectory(phys.params, phys.gamma_phi, phys.gamma_phi, config.sim_options());
  std::ofstream os(config.out_trajectory, std::ios::binary);
  if (!os) throw std::runtime_error(config.out_trajectory + ": cannot open for writing");
  geophase::write_trajectory_csv(os, rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonator-mediated CPHASE gate between singlet-triplet qubits: analytic channel, "
               "master-equation simulation and drive optimisation."};
  app.require_subcommand(1);
  Flags flags;

  auto* analytic = app.add_subcommand("analytic", "analytic fidelity at the configured operating point");
  add_common(analytic, flags);
  auto* simulate = app.add_subcommand("simulate", "master-equation simulation at the configured operating point");
  add_common(simulate, flags);
  simulate->add_option("--trajectory", flags.trajectory, "per-step trajectory CSV");
  auto* optimize = app.add_subcommand("optimize", "optimal drive and exchange at one (Z_r, Q)");
  add_common(optimize, flags);
  optimize->add_option("--z-ohm", flags.z_ohm, "resonator impedance in ohm")->check(CLI::PositiveNumber);
  optimize->add_option("--q", flags.q, "resonator quality factor")->check(CLI::PositiveNumber);
  auto* sweep = app.add_subcommand("sweep", "optimised sweep over the configured axes");
  add_common(sweep, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    geophase::SweepResult result;
    geophase::RunConfig config;
    if (analytic->parsed()) {
      config = resolve(flags, geophase::RunMode::analytic);
      result.rows.push_back(geophase::evaluate_fixed_point(config));
    } else if (simulate->parsed()) {
      config = resolve(flags, geophase::RunMode::simulate);
      config.numeric = true;
      result.rows.push_back(geophase::evaluate_fixed_point(config));
      if (!config.out_trajectory.empty()) dump_trajectory(config);
    } else if (optimize->parsed()) {
      config = resolve(flags, geophase::RunMode::optimize);
      result.rows.push_back(geophase::optimize_point(config, config.z_r_ohm, config.q));
      result.axes = {"z_r_ohm", "q"};
    } else {
      config = resolve(flags, geophase::RunMode::sweep);
      result = geophase::run_sweep(config);
    }
    emit(result, config, flags);
    return status_of(result);
  } catch (const geophase::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
