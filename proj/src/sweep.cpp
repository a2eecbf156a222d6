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

#include "geophase/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <thread>

#include "geophase/analytic_channel.hpp"
#include "geophase/fidelity.hpp"
#include "geophase/format.hpp"
#include "geophase/optimize.hpp"
#include "geophase/units.hpp"

namespace geophase {

using nlohmann::json;

namespace {

const char* mode_name(RunMode m) {
  switch (m) {
    case RunMode::analytic:
      return "analytic";
    case RunMode::simulate:
      return "simulate";
    case RunMode::sweep:
      return "sweep";
    case RunMode::optimize:
      return "optimize";
  }
  return "optimize";
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

long integer_at(const json& j, const std::string& path) {
  const double v = number_at(j, path);
  if (std::floor(v) != v || std::abs(v) > 1e15) throw ConfigError(path + ": expected an integer");
  return static_cast<long>(v);
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  std::string unknown;
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
  }
  if (!unknown.empty()) throw ConfigError(where + ": unknown key(s): " + unknown);
}

std::vector<double> axis_values(const json& a, const std::string& path) {
  const int forms = a.contains("values") + a.contains("log_range") + a.contains("linear_range");
  if (forms != 1) throw ConfigError(path + ": give exactly one of values, log_range, linear_range");
  if (a.contains("values")) {
    const auto& v = a.at("values");
    if (!v.is_array() || v.empty()) throw ConfigError(path + ".values: expected a non-empty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number_at(v[i], path + ".values[" + std::to_string(i) + "]"));
    return out;
  }
  const bool log = a.contains("log_range");
  const std::string key = log ? "log_range" : "linear_range";
  const auto& r = a.at(key);
  const std::string rp = path + "." + key;
  if (!r.is_object()) throw ConfigError(rp + ": expected an object");
  reject_unknown(r, {"start", "stop", "count"}, rp);
  for (const char* k : {"start", "stop", "count"})
    if (!r.contains(k)) throw ConfigError(rp + ": missing " + k);
  const double start = number_at(r.at("start"), rp + ".start");
  const double stop = number_at(r.at("stop"), rp + ".stop");
  const long count = integer_at(r.at("count"), rp + ".count");
  if (count < 1) throw ConfigError(rp + ".count: must be >= 1");
  if (log && !(start > 0.0 && stop > 0.0)) throw ConfigError(rp + ": log range bounds must be positive");
  return log ? log_range(start, stop, static_cast<int>(count)) : linear_range(start, stop, static_cast<int>(count));
}

InitialCavity cavity_from_json(const json& j, std::uint64_t seed) {
  const std::string path = "initial_cavity";
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  reject_unknown(j, {"kind", "alpha_re", "alpha_im", "n_bar", "samples"}, path);
  const std::string kind = j.value("kind", "vacuum");
  if (kind == "vacuum") return InitialCavity::vacuum();
  if (kind == "coherent") {
    const double re = j.contains("alpha_re") ? number_at(j.at("alpha_re"), path + ".alpha_re") : 0.0;
    const double im = j.contains("alpha_im") ? number_at(j.at("alpha_im"), path + ".alpha_im") : 0.0;
    return InitialCavity::coherent({re, im});
  }
  if (kind == "thermal") {
    const double n_bar = j.contains("n_bar") ? number_at(j.at("n_bar"), path + ".n_bar") : 0.0;
    const long samples = j.contains("samples") ? integer_at(j.at("samples"), path + ".samples") : 64;
    if (!(n_bar >= 0.0)) throw ConfigError(path + ".n_bar: must be non-negative");
    if (samples < 1) throw ConfigError(path + ".samples: must be >= 1");
    return InitialCavity::thermal(n_bar, static_cast<int>(samples), seed);
  }
  throw ConfigError(path + ".kind: expected vacuum, coherent or thermal, got '" + kind + "'");
}

json cavity_to_json(const InitialCavity& c) {
  switch (c.kind) {
    case InitialCavity::Kind::coherent:
      return {{"kind", "coherent"}, {"alpha_re", c.alpha.real()}, {"alpha_im", c.alpha.imag()}};
    case InitialCavity::Kind::thermal:
      return {{"kind", "thermal"}, {"n_bar", c.n_bar}, {"samples", c.samples}};
    case InitialCavity::Kind::vacuum:
      break;
  }
  return {{"kind", "vacuum"}};
}

}  // namespace

const std::vector<std::string>& axis_names() {
  static const std::vector<std::string> names{"z_r_ohm", "q",   "n",         "c_r",       "omega_r_ghz", "beta",
                                              "eta",     "s_eps_ev2", "eps_a_uev", "eps_d_scale", "m"};
  return names;
}

std::vector<double> log_range(double start, double stop, int count) {
  if (count == 1) return {start};
  std::vector<double> out(count);
  const double l0 = std::log(start);
  const double l1 = std::log(stop);
  for (int i = 0; i < count; ++i) out[i] = std::exp(l0 + (l1 - l0) * i / (count - 1));
  out.front() = start;
  out.back() = stop;
  return out;
}

std::vector<double> linear_range(double start, double stop, int count) {
  if (count == 1) return {start};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = start + (stop - start) * i / (count - 1);
  out.back() = stop;
  return out;
}

void RunConfig::set(const std::string& name, double value) {
  auto as_int = [&](int& field) {
    if (std::floor(value) != value) throw ConfigError(name + ": expected an integer value");
    field = static_cast<int>(value);
  };
  if (name == "z_r_ohm") z_r_ohm = value;
  else if (name == "q") q = value;
  else if (name == "n") as_int(n);
  else if (name == "m") as_int(m);
  else if (name == "c_r") c_r = value;
  else if (name == "omega_r_ghz") omega_r_ghz = value;
  else if (name == "beta") beta = value;
  else if (name == "eta") eta = value;
  else if (name == "s_eps_ev2") s_eps_ev2 = value;
  else if (name == "eps_a_uev") eps_a_uev = value;
  else if (name == "eps_d_scale") eps_d_scale = value;
  else throw ConfigError("unknown sweep parameter '" + name + "'");
}

double RunConfig::get(const std::string& name) const {
  if (name == "z_r_ohm") return z_r_ohm;
  if (name == "q") return q;
  if (name == "n") return n;
  if (name == "m") return m;
  if (name == "c_r") return c_r;
  if (name == "omega_r_ghz") return omega_r_ghz;
  if (name == "beta") return beta;
  if (name == "eta") return eta;
  if (name == "s_eps_ev2") return s_eps_ev2;
  if (name == "eps_a_uev") return eps_a_uev;
  if (name == "eps_d_scale") return eps_d_scale;
  throw ConfigError("unknown sweep parameter '" + name + "'");
}

void RunConfig::validate() const {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(key) + ": must be positive");
  };
  positive(omega_r_ghz, "omega_r_ghz");
  positive(z_r_ohm, "z_r_ohm");
  positive(q, "q");
  positive(j0_ghz, "j0_ghz");
  positive(eps_a_uev, "eps_a_uev");
  positive(eps_d_scale, "eps_d_scale");
  positive(s_eps_ev2, "s_eps_ev2");
  positive(beta, "beta");
  positive(eta, "eta");
  positive(j_min_ghz, "j_min_ghz");
  positive(eps_window, "eps_window");
  positive(dt_ns, "dt_ns");
  positive(top_population_threshold, "top_population_threshold");
  if (eps_d_uev) positive(*eps_d_uev, "eps_d_uev");
  if (!(c_r > 0.0 && c_r <= 1.0)) throw ConfigError("c_r: must lie in (0, 1]");
  if (!(j_max_ghz > j_min_ghz)) throw ConfigError("j_max_ghz: must exceed j_min_ghz");
  if (m < 1) throw ConfigError("m: must be >= 1");
  if (n < 1) throw ConfigError("n: must be >= 1");
  if (delta_sign != 1 && delta_sign != -1) throw ConfigError("delta_sign: must be +1 or -1");
  if (n_photon < 2) throw ConfigError("n_photon: must be >= 2");
  if (min_steps < 1 || max_steps < min_steps) throw ConfigError("min_steps/max_steps: need 1 <= min_steps <= max_steps");
  if (jobs < 1) throw ConfigError("jobs: must be >= 1");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::string path = "axes[" + std::to_string(i) + "]";
    if (std::find(axis_names().begin(), axis_names().end(), axes[i].name) == axis_names().end())
      throw ConfigError(path + ".name: unknown parameter '" + axes[i].name + "'");
    if (axes[i].values.empty()) throw ConfigError(path + ": empty axis");
    for (std::size_t k = 0; k < i; ++k)
      if (axes[k].name == axes[i].name) throw ConfigError(path + ".name: duplicate axis '" + axes[i].name + "'");
    RunConfig probe = *this;
    probe.axes.clear();
    for (double v : axes[i].values) {
      probe.set(axes[i].name, v);
      try {
        probe.validate();
      } catch (const ConfigError& e) {
        throw ConfigError(path + ": value " + format_number(v) + " invalid (" + e.what() + ")");
      }
    }
  }
}

ResonatorSpec RunConfig::resonator() const { return ResonatorSpec::from_ghz(omega_r_ghz, z_r_ohm, q); }

NoiseSpec RunConfig::noise() const { return NoiseSpec::from_boundary(s_eps_ev2, beta, eta, m); }

ExchangeWindow RunConfig::window() const {
  return {units::ghz_to_internal(j_min_ghz), units::ghz_to_internal(j_max_ghz)};
}

SimOptions RunConfig::sim_options() const {
  SimOptions opts;
  opts.n_photon = n_photon;
  opts.policy = {dt_ns, min_steps, max_steps};
  opts.top_population_threshold = top_population_threshold;
  return opts;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  static const std::set<std::string> known{
      "omega_r_ghz", "z_r_ohm",   "q",         "c_r",       "j0_ghz",    "eps_a_uev",  "eps_0_uev",
      "eps_d_uev",   "eps_d_scale", "s_eps_ev2", "beta",      "eta",       "m",          "n",
      "j_min_ghz",   "j_max_ghz", "eps_window", "delta_sign", "n_photon", "dt_ns",      "min_steps",
      "max_steps",   "top_population_threshold", "initial_cavity", "numeric", "refine", "seed",
      "jobs",        "target",    "mode",      "axes",      "outputs"};
  reject_unknown(j, known, "config");

  RunConfig c;
  auto num = [&](const char* key, double& field) {
    if (j.contains(key)) field = number_at(j.at(key), key);
  };
  auto integer = [&](const char* key, int& field) {
    if (j.contains(key)) field = static_cast<int>(integer_at(j.at(key), key));
  };
  auto flag = [&](const char* key, bool& field) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_boolean()) throw ConfigError(std::string(key) + ": expected true or false");
    field = j.at(key).get<bool>();
  };
  num("omega_r_ghz", c.omega_r_ghz);
  num("z_r_ohm", c.z_r_ohm);
  num("q", c.q);
  num("c_r", c.c_r);
  num("j0_ghz", c.j0_ghz);
  num("eps_a_uev", c.eps_a_uev);
  num("eps_0_uev", c.eps_0_uev);
  if (j.contains("eps_d_uev") && !j.at("eps_d_uev").is_null()) c.eps_d_uev = number_at(j.at("eps_d_uev"), "eps_d_uev");
  num("eps_d_scale", c.eps_d_scale);
  num("s_eps_ev2", c.s_eps_ev2);
  num("beta", c.beta);
  num("eta", c.eta);
  integer("m", c.m);
  integer("n", c.n);
  num("j_min_ghz", c.j_min_ghz);
  num("j_max_ghz", c.j_max_ghz);
  num("eps_window", c.eps_window);
  integer("delta_sign", c.delta_sign);
  integer("n_photon", c.n_photon);
  num("dt_ns", c.dt_ns);
  integer("min_steps", c.min_steps);
  integer("max_steps", c.max_steps);
  num("top_population_threshold", c.top_population_threshold);
  flag("numeric", c.numeric);
  flag("refine", c.refine);
  integer("jobs", c.jobs);
  if (j.contains("seed")) {
    const long seed = integer_at(j.at("seed"), "seed");
    if (seed < 0) throw ConfigError("seed: must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);
  }
  if (j.contains("initial_cavity")) c.initial_cavity = cavity_from_json(j.at("initial_cavity"), c.seed);
  if (j.contains("target")) {
    const auto t = j.at("target");
    if (t == "ug") c.target = TargetGate::ug;
    else if (t == "cz") c.target = TargetGate::cz;
    else throw ConfigError("target: expected 'ug' or 'cz'");
  }
  if (j.contains("mode")) {
    const auto& m = j.at("mode");
    if (m == "analytic") c.mode = RunMode::analytic;
    else if (m == "simulate") c.mode = RunMode::simulate;
    else if (m == "sweep") c.mode = RunMode::sweep;
    else if (m == "optimize") c.mode = RunMode::optimize;
    else throw ConfigError("mode: expected analytic, simulate, sweep or optimize");
  }
  if (j.contains("axes")) {
    const auto& axes = j.at("axes");
    if (!axes.is_array()) throw ConfigError("axes: expected an array");
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const std::string path = "axes[" + std::to_string(i) + "]";
      const auto& a = axes[i];
      if (!a.is_object()) throw ConfigError(path + ": expected an object");
      reject_unknown(a, {"name", "values", "log_range", "linear_range"}, path);
      if (!a.contains("name") || !a.at("name").is_string()) throw ConfigError(path + ".name: expected a string");
      c.axes.push_back({a.at("name").get<std::string>(), axis_values(a, path)});
    }
  }
  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    if (!o.is_object()) throw ConfigError("outputs: expected an object");
    reject_unknown(o, {"csv", "json", "trajectory"}, "outputs");
    for (const auto& [key, value] : o.items())
      if (!value.is_string()) throw ConfigError("outputs." + key + ": expected a path string");
    c.out_csv = o.value("csv", "");
    c.out_json = o.value("json", "");
    c.out_trajectory = o.value("trajectory", "");
  }
  c.validate();
  return c;
}

json config_to_json(const RunConfig& c) {
  json j{{"omega_r_ghz", c.omega_r_ghz},
         {"z_r_ohm", c.z_r_ohm},
         {"q", c.q},
         {"c_r", c.c_r},
         {"j0_ghz", c.j0_ghz},
         {"eps_a_uev", c.eps_a_uev},
         {"eps_0_uev", c.eps_0_uev},
         {"eps_d_scale", c.eps_d_scale},
         {"s_eps_ev2", c.s_eps_ev2},
         {"beta", c.beta},
         {"eta", c.eta},
         {"m", c.m},
         {"n", c.n},
         {"j_min_ghz", c.j_min_ghz},
         {"j_max_ghz", c.j_max_ghz},
         {"eps_window", c.eps_window},
         {"delta_sign", c.delta_sign},
         {"n_photon", c.n_photon},
         {"dt_ns", c.dt_ns},
         {"min_steps", c.min_steps},
         {"max_steps", c.max_steps},
         {"top_population_threshold", c.top_population_threshold},
         {"initial_cavity", cavity_to_json(c.initial_cavity)},
         {"numeric", c.numeric},
         {"refine", c.refine},
         {"seed", c.seed},
         {"jobs", c.jobs},
         {"target", c.target == TargetGate::cz ? "cz" : "ug"},
         {"mode", mode_name(c.mode)}};
  if (c.eps_d_uev) j["eps_d_uev"] = *c.eps_d_uev;
  json axes = json::array();
  for (const auto& a : c.axes) axes.push_back({{"name", a.name}, {"values", a.values}});
  j["axes"] = axes;
  json outputs = json::object();
  if (!c.out_csv.empty()) outputs["csv"] = c.out_csv;
  if (!c.out_json.empty()) outputs["json"] = c.out_json;
  if (!c.out_trajectory.empty()) outputs["trajectory"] = c.out_trajectory;
  j["outputs"] = outputs;
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

PointPhysics evaluate_gate(const RunConfig& config, double j, double eps_d) {
  const double eps_a = units::uev_to_internal(config.eps_a_uev);
  const double j0 = units::ghz_to_internal(config.j0_ghz);
  if (!(j > 0.0) || !(eps_d > 0.0)) throw std::domain_error("evaluate_gate: J and eps_d must be positive");
  if (eps_d > config.eps_window * eps_a)
    throw std::domain_error("drive amplitude eps_d = " + format_number(eps_d / eps_a) +
                            " eps_a leaves the exchange-model window");
  const QubitTuning tuning{j0, eps_a, eps_a * std::log(j / j0), config.c_r, eps_d, config.eps_window};
  const auto res = config.resonator();

  PointPhysics out;
  out.params = derive_gate_params(tuning, res, config.n, config.delta_sign);
  out.gamma_phi = dephasing_rate(j, eps_d, config.noise(), eps_a).gamma_phi;
  out.b = b_factor(out.params.g(), std::abs(out.params.delta), out.params.kappa, out.params.t_g).b;
  out.f_analytic = analytic_avg_fidelity(out.b, out.gamma_phi, out.params.t_g);
  return out;
}

namespace {

void run_numeric(const RunConfig& config, const PointPhysics& phys, SweepRow& row) {
  const auto opts = config.sim_options();
  const double gamma = phys.gamma_phi;
  const auto result = extract_channel(phys.params, gamma, gamma, config.initial_cavity, opts);
  TwoQubitChannel channel = result.channel;
  Mat4 target = gate_target(phys.params);
  if (config.initial_cavity.kind != InitialCavity::Kind::vacuum)
    channel = compensate_local_z(channel, target).corrected;
  if (config.target == TargetGate::cz) std::tie(channel, target) = as_textbook_cphase(channel, config.delta_sign);
  row.f_numeric = average_gate_fidelity(channel, target).f_avg;
  row.max_fock_pop = result.diagnostics.max_top_population;
  row.numeric_failed = result.diagnostics.failed;
  row.diagnostics = result.diagnostics.message;
}

void fill_row(const RunConfig& config, double j, double eps_d, SweepRow& row) {
  const auto phys = evaluate_gate(config, j, eps_d);
  const auto& p = phys.params;
  row.j_ghz = units::internal_to_ghz(j);
  row.eps_d_over_eps_a = eps_d / units::uev_to_internal(config.eps_a_uev);
  row.g_mhz = units::internal_to_mhz(p.g());
  row.delta_mhz = units::internal_to_mhz(p.delta);
  row.t_g_ns = p.t_g;
  row.f_analytic = phys.f_analytic;
  row.gamma_phi_per_s = units::internal_to_per_s(phys.gamma_phi);
  row.kappa_per_s = units::internal_to_per_s(p.kappa);
  row.b = phys.b;
  if (config.n >= 2 && config.beta < 1.0)
    row.infidelity_powerlaw = infidelity_power_law(config.noise(), config.resonator(), config.c_r, config.n);
  if (config.numeric) run_numeric(config, phys, row);
}

SweepRow start_row(const RunConfig& config) {
  SweepRow row;
  row.z_ohm = config.z_r_ohm;
  row.q = config.q;
  row.n = config.n;
  return row;
}

SweepRow optimize_current(const RunConfig& config) {
  SweepRow row = start_row(config);
  try {
    const auto op = optimal_operating_point(config);
    row.clamped = op.clamped;
    row.infidelity_closed_form = op.infidelity_closed_form;
    row.refine_sweeps = op.refine_sweeps;
    fill_row(config, op.j, op.eps_d * config.eps_d_scale, row);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

OperatingPoint optimal_operating_point(const RunConfig& config) {
  const auto res = config.resonator();
  const auto noise = config.noise();
  const auto window = config.window();
  const double kappa = cavity_decay(res);
  const double eps_a = units::uev_to_internal(config.eps_a_uev);

  const double j_guess = std::clamp(optimal_exchange(noise, kappa, config.n, eps_a), window.j_min, window.j_max);
  const double gamma0 = dephasing_rate(j_guess, 0.0, noise, eps_a).gamma_phi_0;
  const auto drive = optimal_drive(noise, kappa, config.n, eps_a, gamma0, window);

  OperatingPoint op;
  op.j = op.j_closed_form = drive.j_opt;
  op.eps_d = op.eps_d_closed_form = std::min(drive.eps_d_opt, config.eps_window * eps_a);
  op.clamped = drive.clamped;
  op.infidelity_closed_form = op.infidelity = 1.0 - evaluate_gate(config, op.j, op.eps_d).f_analytic;
  if (!config.refine) return op;

  auto objective = [&](const std::vector<double>& x) {
    try {
      return 1.0 - evaluate_gate(config, std::exp(x[0]), std::exp(x[1])).f_analytic;
    } catch (const std::domain_error&) {
      return 2.0;
    }
  };
  const std::vector<double> lower{std::log(window.j_min), std::log(1e-3 * eps_a)};
  const std::vector<double> upper{std::log(window.j_max), std::log(config.eps_window * eps_a)};
  const auto refined = coordinate_descent(objective, {std::log(op.j), std::log(op.eps_d)}, lower, upper);
  op.j = std::exp(refined.x[0]);
  op.eps_d = std::exp(refined.x[1]);
  op.infidelity = refined.value;
  op.refine_sweeps = refined.sweeps;
  return op;
}

std::pair<double, double> fixed_operating_point(const RunConfig& config) {
  const double eps_a = units::uev_to_internal(config.eps_a_uev);
  const double j = units::ghz_to_internal(config.j0_ghz) * std::exp(config.eps_0_uev / config.eps_a_uev);
  double eps_d = 0.0;
  if (config.eps_d_uev) {
    eps_d = units::uev_to_internal(*config.eps_d_uev);
  } else {
    const double gamma0 = dephasing_rate(j, 0.0, config.noise(), eps_a).gamma_phi_0;
    eps_d = optimal_drive_amplitude(cavity_decay(config.resonator()), config.n, eps_a, gamma0);
  }
  return {j, eps_d * config.eps_d_scale};
}

SweepRow evaluate_fixed_point(const RunConfig& config) {
  SweepRow row = start_row(config);
  try {
    const auto [j, eps_d] = fixed_operating_point(config);
    row.infidelity_closed_form = 1.0 - evaluate_gate(config, j, eps_d).f_analytic;
    fill_row(config, j, eps_d, row);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

SweepRow optimize_point(const RunConfig& config, double z_r_ohm, double q) {
  RunConfig c = config;
  c.z_r_ohm = z_r_ohm;
  c.q = q;
  SweepRow row = optimize_current(c);
  row.inputs = {{"z_r_ohm", z_r_ohm}, {"q", q}};
  return row;
}

SweepResult run_sweep(const RunConfig& config) {
  config.validate();
  SweepResult out;
  std::vector<RunConfig> points{config};
  std::vector<std::vector<std::pair<std::string, double>>> inputs{{}};
  for (const auto& axis : config.axes) {
    out.axes.push_back(axis.name);
    std::vector<RunConfig> next;
    std::vector<std::vector<std::pair<std::string, double>>> next_inputs;
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (double v : axis.values) {
        RunConfig c = points[i];
        c.set(axis.name, v);
        next.push_back(std::move(c));
        auto in = inputs[i];
        in.emplace_back(axis.name, v);
        next_inputs.push_back(std::move(in));
      }
    }
    points = std::move(next);
    inputs = std::move(next_inputs);
  }

  out.rows.resize(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      out.rows[i] = optimize_current(points[i]);
      out.rows[i].inputs = inputs[i];
    }
  };
  const int threads = std::max(1, std::min<int>(config.jobs, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "z_ohm,q,n,j_ghz,eps_d_over_eps_a,g_mhz,delta_mhz,t_g_ns,f_analytic,f_numeric,"
         "infidelity_powerlaw,clamped,max_fock_pop\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& r : result.rows) {
    out << format_number(r.z_ohm) << ',' << format_number(r.q) << ',' << r.n << ',';
    if (r.error) {
      out << std::string(9, ',') << '\n';
      continue;
    }
    out << format_number(r.j_ghz) << ',' << format_number(r.eps_d_over_eps_a) << ',' << format_number(r.g_mhz) << ','
        << format_number(r.delta_mhz) << ',' << format_number(r.t_g_ns) << ',' << format_number(r.f_analytic) << ','
        << opt(r.f_numeric) << ',' << opt(r.infidelity_powerlaw) << ',' << (r.clamped ? 1 : 0) << ','
        << opt(r.max_fock_pop) << '\n';
  }
}

namespace {

json row_to_json(const SweepRow& r) {
  json inputs = json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j{{"inputs", inputs},
         {"z_ohm", r.z_ohm},
         {"q", r.q},
         {"n", r.n},
         {"j_ghz", r.j_ghz},
         {"eps_d_over_eps_a", r.eps_d_over_eps_a},
         {"g_mhz", r.g_mhz},
         {"delta_mhz", r.delta_mhz},
         {"t_g_ns", r.t_g_ns},
         {"f_analytic", r.f_analytic},
         {"f_numeric", opt(r.f_numeric)},
         {"infidelity_powerlaw", opt(r.infidelity_powerlaw)},
         {"clamped", r.clamped},
         {"max_fock_pop", opt(r.max_fock_pop)},
         {"gamma_phi_per_s", r.gamma_phi_per_s},
         {"kappa_per_s", r.kappa_per_s},
         {"b", r.b},
         {"infidelity_closed_form", r.infidelity_closed_form},
         {"refine_sweeps", r.refine_sweeps},
         {"numeric_failed", r.numeric_failed},
         {"diagnostics", r.diagnostics},
         {"error", r.error ? json(*r.error) : json(nullptr)}};
  return j;
}

std::optional<double> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

SweepRow row_from_json(const json& j) {
  SweepRow r;
  for (const auto& [k, v] : j.at("inputs").items()) r.inputs.emplace_back(k, v.get<double>());
  r.z_ohm = j.at("z_ohm").get<double>();
  r.q = j.at("q").get<double>();
  r.n = j.at("n").get<int>();
  r.j_ghz = j.at("j_ghz").get<double>();
  r.eps_d_over_eps_a = j.at("eps_d_over_eps_a").get<double>();
  r.g_mhz = j.at("g_mhz").get<double>();
  r.delta_mhz = j.at("delta_mhz").get<double>();
  r.t_g_ns = j.at("t_g_ns").get<double>();
  r.f_analytic = j.at("f_analytic").get<double>();
  r.f_numeric = opt_from(j, "f_numeric");
  r.infidelity_powerlaw = opt_from(j, "infidelity_powerlaw");
  r.clamped = j.at("clamped").get<bool>();
  r.max_fock_pop = opt_from(j, "max_fock_pop");
  r.gamma_phi_per_s = j.at("gamma_phi_per_s").get<double>();
  r.kappa_per_s = j.at("kappa_per_s").get<double>();
  r.b = j.at("b").get<double>();
  r.infidelity_closed_form = j.at("infidelity_closed_form").get<double>();
  r.refine_sweeps = j.at("refine_sweeps").get<int>();
  r.numeric_failed = j.at("numeric_failed").get<bool>();
  r.diagnostics = j.at("diagnostics").get<std::string>();
  if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
  return r;
}

}  // namespace

void write_json(std::ostream& out, const SweepResult& result, const RunConfig& config) {
  json rows = json::array();
  for (const auto& r : result.rows) rows.push_back(row_to_json(r));
  const json doc{{"schema_version", kResultSchemaVersion},
                 {"config", config_to_json(config)},
                 {"axes", result.axes},
                 {"rows", rows}};
  out << doc.dump(2) << '\n';
}

SweepResult read_json(std::istream& in) {
  json doc;
  in >> doc;
  if (!doc.contains("schema_version") || doc.at("schema_version").get<int>() != kResultSchemaVersion)
    throw std::runtime_error("results: unsupported schema_version");
  SweepResult out;
  out.axes = doc.at("axes").get<std::vector<std::string>>();
  for (const auto& r : doc.at("rows")) out.rows.push_back(row_from_json(r));
  return out;
}

}  // namespace geophase
