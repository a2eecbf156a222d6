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

#include "geophase/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "geophase/analytic_channel.hpp"
#include "geophase/fidelity.hpp"
#include "geophase/format.hpp"
#include "geophase/linalg.hpp"

namespace geophase {

MatX FockSpace::annihilation() const {
  MatX a = MatX::Zero(dimension, dimension);
  for (int k = 1; k < dimension; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

MatX FockSpace::number() const {
  MatX n = MatX::Zero(dimension, dimension);
  for (int k = 0; k < dimension; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

VecX coherent_state(int dimension, cplx alpha) {
  VecX psi(dimension);
  cplx term = std::exp(-0.5 * std::norm(alpha));
  for (int k = 0; k < dimension; ++k) {
    psi(k) = term;
    term *= alpha / std::sqrt(static_cast<double>(k + 1));
  }
  return psi / psi.norm();
}

MatX vacuum_density(int dimension) {
  MatX rho = MatX::Zero(dimension, dimension);
  rho(0, 0) = 1.0;
  return rho;
}

MatX coherent_density(int dimension, cplx alpha) {
  const VecX psi = coherent_state(dimension, alpha);
  return psi * psi.adjoint();
}

MatX product_state(const Mat4& qubits, const MatX& cavity) { return kron(qubits, cavity); }

Mat4 trace_out_cavity(const MatX& rho, int dimension) {
  Mat4 out;
  for (int q = 0; q < 4; ++q)
    for (int p = 0; p < 4; ++p) out(q, p) = rho.block(q * dimension, p * dimension, dimension, dimension).trace();
  return out;
}

MatX trace_out_qubits(const MatX& rho, int dimension) {
  MatX out = MatX::Zero(dimension, dimension);
  for (int q = 0; q < 4; ++q) out += rho.block(q * dimension, q * dimension, dimension, dimension);
  return out;
}

MatX embed_cavity(const MatX& op) { return kron(MatX::Identity(4, 4), op); }

MatX embed_qubits(const Mat4& op, int dimension) { return kron(op, MatX::Identity(dimension, dimension)); }

MatX build_hamiltonian(const DerivedGateParams& params, int dimension) {
  const FockSpace fock{dimension};
  const MatX a = fock.annihilation();
  const MatX x = a + a.adjoint();
  return params.delta * embed_cavity(fock.number()) + (params.g1 / 2.0) * kron(z1(), x) +
         (params.g2 / 2.0) * kron(z2(), x);
}

MatX lindblad_rhs(const MatX& rho, const MatX& h, double kappa, double gamma_1, double gamma_2) {
  const int n = static_cast<int>(rho.rows() / 4);
  const MatX a = embed_cavity(FockSpace{n}.annihilation());
  MatX out = -kI * commutator(h, rho) + 2.0 * kappa * dissipator(a, rho);
  if (gamma_1 != 0.0) out += (gamma_1 / 2.0) * dissipator(embed_qubits(z1(), n), rho);
  if (gamma_2 != 0.0) out += (gamma_2 / 2.0) * dissipator(embed_qubits(z2(), n), rho);
  return out;
}

GateModel::GateModel(const DerivedGateParams& params, double gamma_1, double gamma_2, int dimension)
    : n_(dimension), delta_(params.delta), kappa_(params.kappa), root_(dimension + 1) {
  if (dimension < 2) throw std::invalid_argument("GateModel: Fock dimension must be at least 2");
  for (int k = 0; k <= dimension; ++k) root_[k] = std::sqrt(static_cast<double>(k));
  for (int q = 0; q < 4; ++q) {
    shift_[q] = (params.g1 * kZ1Sign[q] + params.g2 * kZ2Sign[q]) / 2.0;
    for (int p = 0; p < 4; ++p)
      dephasing_(q, p) = 0.5 * gamma_1 * (kZ1Sign[q] * kZ1Sign[p] - 1) + 0.5 * gamma_2 * (kZ2Sign[q] * kZ2Sign[p] - 1);
  }
}

// Block (q, p), element (i, j):
//   -i [Delta (i - j) X_ij + c_q (sqrt(i) X_{i-1,j} + sqrt(i+1) X_{i+1,j})
//                          - c_p (sqrt(j) X_{i,j-1} + sqrt(j+1) X_{i,j+1})]
//   + kappa (2 sqrt((i+1)(j+1)) X_{i+1,j+1} - (i + j) X_ij) + d_qp X_ij
void GateModel::derivative(const MatX& rho, MatX& out) const {
  const int n = n_;
  out.resize(rho.rows(), rho.cols());
  const double* r = root_.data();
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      const double cq = shift_[q];
      const double cp = shift_[p];
      const double d = dephasing_(q, p);
      const auto x = rho.block(q * n, p * n, n, n);
      auto y = out.block(q * n, p * n, n, n);
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          const cplx xij = x(i, j);
          cplx h = delta_ * (i - j) * xij;
          if (i > 0) h += cq * r[i] * x(i - 1, j);
          if (i + 1 < n) h += cq * r[i + 1] * x(i + 1, j);
          if (j > 0) h -= cp * r[j] * x(i, j - 1);
          if (j + 1 < n) h -= cp * r[j + 1] * x(i, j + 1);
          cplx loss = -static_cast<double>(i + j) * xij;
          if (i + 1 < n && j + 1 < n) loss += 2.0 * r[i + 1] * r[j + 1] * x(i + 1, j + 1);
          y(i, j) = cplx(h.imag(), -h.real()) + kappa_ * loss + d * xij;
        }
      }
    }
  }
}

MatX GateModel::derivative(const MatX& rho) const {
  MatX out;
  derivative(rho, out);
  return out;
}

int StepPolicy::steps_for(double t) const {
  if (dt <= 0.0) return std::max(min_steps, 1);
  const double raw = std::ceil(t / dt - 1e-9);
  return static_cast<int>(std::clamp(raw, static_cast<double>(min_steps), static_cast<double>(max_steps)));
}

void SimDiagnostics::merge(const SimDiagnostics& other) {
  max_top_population = std::max(max_top_population, other.max_top_population);
  final_polaron_residual = std::max(final_polaron_residual, other.final_polaron_residual);
  steps = std::max(steps, other.steps);
  trace_drift = std::max(trace_drift, other.trace_drift);
  hermiticity_error = std::max(hermiticity_error, other.hermiticity_error);
  min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
  if (other.failed) {
    failed = true;
    if (message.find(other.message) == std::string::npos) message += message.empty() ? other.message : "; " + other.message;
  }
}

double top_level_population(const MatX& rho, int dimension) {
  double pop = 0.0;
  for (int q = 0; q < 4; ++q) {
    const Eigen::Index k = q * dimension + dimension - 1;
    pop += rho(k, k).real();
  }
  return pop;
}

Evolution evolve_rk4(const GateModel& model, const MatX& rho0, double t, const StepPolicy& policy,
                     const SimOptions& opts, const StepObserver& observer) {
  const int n = model.dimension();
  if (rho0.rows() != 4 * n || rho0.cols() != 4 * n)
    throw std::invalid_argument("evolve_rk4: state shape does not match the model");
  if (!(t >= 0.0)) throw std::invalid_argument("evolve_rk4: negative evolution time");

  Evolution out;
  auto& diag = out.diagnostics;
  const int steps = t > 0.0 ? policy.steps_for(t) : 0;
  const double dt = steps > 0 ? t / steps : 0.0;
  const cplx trace0 = rho0.trace();

  MatX rho = rho0;
  MatX k1, k2, k3, k4, stage;
  diag.max_top_population = top_level_population(rho, n);
  for (int s = 0; s < steps; ++s) {
    model.derivative(rho, k1);
    stage = rho + (0.5 * dt) * k1;
    model.derivative(stage, k2);
    stage = rho + (0.5 * dt) * k2;
    model.derivative(stage, k3);
    stage = rho + dt * k3;
    model.derivative(stage, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    diag.hermiticity_error = std::max(diag.hermiticity_error, hermiticity_error(rho));
    stage = 0.5 * (rho + rho.adjoint());
    rho.swap(stage);
    diag.max_top_population = std::max(diag.max_top_population, top_level_population(rho, n));
    diag.trace_drift = std::max(diag.trace_drift, std::abs(rho.trace() - trace0));
    if (observer) observer((s + 1) * dt, rho);
  }
  diag.steps = steps;
  const Eigen::SelfAdjointEigenSolver<MatX> eig(rho, Eigen::EigenvaluesOnly);
  diag.min_eigenvalue = eig.eigenvalues().minCoeff();

  std::ostringstream why;
  if (!std::isfinite(diag.trace_drift) || diag.trace_drift > opts.trace_tolerance)
    why << "trace drift " << diag.trace_drift << " exceeds " << opts.trace_tolerance;
  if (!(diag.max_top_population < opts.top_population_threshold)) {
    if (why.tellp() > 0) why << "; ";
    why << "top Fock level population " << diag.max_top_population << " exceeds "
        << opts.top_population_threshold << " (N_ph = " << n << ")";
  }
  diag.message = why.str();
  diag.failed = !diag.message.empty();
  out.rho = std::move(rho);
  return out;
}

int required_fock_dimension(double amplitude) {
  const double mean = amplitude * amplitude;
  double p = std::exp(-mean);
  double cdf = 0.0;
  for (int k = 0; k < 400; ++k) {
    if (1.0 - cdf - p < 1e-7) return k + 2;
    cdf += p;
    p *= mean / (k + 1);
  }
  throw std::domain_error("required_fock_dimension: displacement too large");
}

namespace {

double displacement_bound(const DerivedGateParams& params) {
  const double scale = std::hypot(params.delta, params.kappa);
  if (scale == 0.0) return 0.0;
  return (std::abs(params.g1) + std::abs(params.g2)) / scale;
}

cplx displacement(const DerivedGateParams& params, int q, double t) {
  const double g_q = params.g1 * kZ1Sign[q] + params.g2 * kZ2Sign[q];
  if (g_q == 0.0 || t == 0.0) return {0.0, 0.0};
  return alpha_drive_frame(g_q, params.delta, params.kappa, t);
}

double polaron_weight_outside(const MatX& rho, const DerivedGateParams& params, double t, int n) {
  double inside = 0.0;
  double total = 0.0;
  for (int q = 0; q < 4; ++q) {
    const auto block = rho.block(q * n, q * n, n, n);
    const VecX psi = coherent_state(n, displacement(params, q, t));
    inside += (psi.adjoint() * block * psi)(0, 0).real();
    total += block.trace().real();
  }
  return total > 0.0 ? 1.0 - inside / total : 0.0;
}

Mat4 uniform_superposition() { return Mat4::Constant(0.25); }

MatX initial_cavity_density(const InitialCavity& cavity, int n) {
  return cavity.kind == InitialCavity::Kind::coherent ? coherent_density(n, cavity.alpha) : vacuum_density(n);
}

}  // namespace

ChannelResult extract_channel(const DerivedGateParams& params, double gamma_1, double gamma_2,
                              const InitialCavity& cavity, const SimOptions& opts, ChannelMethod method) {
  if (cavity.kind == InitialCavity::Kind::thermal) {
    const auto avg = thermal_average_channel(params, gamma_1, gamma_2, cavity.n_bar, cavity.samples, cavity.seed, opts);
    ChannelResult out;
    out.channel = avg.channel;
    out.diagnostics = avg.diagnostics;
    out.dimension = opts.n_photon;
    return out;
  }

  int n = opts.n_photon;
  if (opts.auto_dimension && cavity.kind == InitialCavity::Kind::coherent)
    n = std::max(n, required_fock_dimension(std::abs(cavity.alpha) + displacement_bound(params)));
  const GateModel model(params, gamma_1, gamma_2, n);
  const MatX cav = initial_cavity_density(cavity, n);

  ChannelResult out;
  out.dimension = n;
  auto run = [&](const Mat4& qubits) {
    auto evo = evolve_rk4(model, product_state(qubits, cav), params.t_g, opts.policy, opts);
    out.diagnostics.merge(evo.diagnostics);
    return trace_out_cavity(evo.rho, n);
  };

  if (method == ChannelMethod::block_multiplier) {
    const Mat4 m = 4.0 * run(uniform_superposition());
    Mat16 s = Mat16::Zero();
    for (int q = 0; q < 4; ++q)
      for (int p = 0; p < 4; ++p) s(p * 4 + q, p * 4 + q) = m(q, p);
    out.channel = TwoQubitChannel::from_superoperator(s);
    return out;
  }

  const auto& inputs = product_input_states();
  Mat16 in;
  Mat16 outputs;
  for (int k = 0; k < 16; ++k) {
    in.col(k) = vec(inputs[k]);
    outputs.col(k) = vec(run(inputs[k]));
  }
  const Mat16 s = in.transpose().fullPivLu().solve(outputs.transpose()).transpose();
  out.channel = TwoQubitChannel::from_superoperator(s);

  // Bell input as an independent check of the linear fit.
  const Eigen::Vector4cd psi = Eigen::Vector4cd(1.0, 0.0, 0.0, 1.0) / std::sqrt(2.0);
  const Mat4 bell_state = psi * psi.adjoint();
  out.reconstruction_residual = (run(bell_state) - out.channel.apply(bell_state)).cwiseAbs().maxCoeff();
  if (out.reconstruction_residual > opts.reconstruction_tolerance) {
    SimDiagnostics flag;
    flag.failed = true;
    std::ostringstream msg;
    msg << "channel reconstruction residual " << out.reconstruction_residual << " exceeds "
        << opts.reconstruction_tolerance;
    flag.message = msg.str();
    out.diagnostics.merge(flag);
  }
  return out;
}

PolaronReport polaron_residual(const DerivedGateParams& params, const std::vector<double>& t_samples, double gamma_1,
                               double gamma_2, const SimOptions& opts) {
  if (!std::is_sorted(t_samples.begin(), t_samples.end()) || (!t_samples.empty() && t_samples.front() < 0.0))
    throw std::invalid_argument("polaron_residual: sample times must be ascending and non-negative");
  const int n = opts.n_photon;
  const GateModel model(params, gamma_1, gamma_2, n);
  const double horizon = std::max(params.t_g, t_samples.empty() ? 0.0 : t_samples.back());
  const double dt = horizon > 0.0 ? horizon / opts.policy.steps_for(horizon) : 0.0;

  PolaronReport out;
  MatX rho = product_state(uniform_superposition(), vacuum_density(n));
  double t = 0.0;
  for (double target : t_samples) {
    const double span = target - t;
    if (span > 0.0) {
      const int steps = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-9)));
      auto evo = evolve_rk4(model, rho, span, StepPolicy::fixed(steps), opts);
      out.diagnostics.merge(evo.diagnostics);
      rho = std::move(evo.rho);
      t = target;
    }
    const double r = polaron_weight_outside(rho, params, t, n);
    out.times.push_back(t);
    out.residuals.push_back(r);
    out.max_residual = std::max(out.max_residual, std::abs(r));
  }
  out.diagnostics.final_polaron_residual = out.residuals.empty() ? 0.0 : out.residuals.back();
  return out;
}

ThermalAverage thermal_average_channel(const DerivedGateParams& params, double gamma_1, double gamma_2, double n_bar,
                                       int samples, std::uint64_t seed, const SimOptions& opts) {
  if (!(n_bar >= 0.0)) throw std::invalid_argument("thermal_average_channel: n_bar must be non-negative");
  if (samples < 1) throw std::invalid_argument("thermal_average_channel: need at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sigma = std::sqrt(n_bar / 2.0);
  const Mat4 target = gate_target(params);

  ThermalAverage out;
  Mat16 raw = Mat16::Zero();
  Mat16 corrected = Mat16::Zero();
  for (int k = 0; k < samples; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    const cplx alpha(sigma * re, sigma * im);
    out.amplitudes.push_back(alpha);
    const auto result =
        extract_channel(params, gamma_1, gamma_2, InitialCavity::coherent(alpha), opts, ChannelMethod::block_multiplier);
    out.diagnostics.merge(result.diagnostics);
    raw += result.channel.superoperator();
    corrected += compensate_local_z(result.channel, target).corrected.superoperator();
  }
  out.channel = TwoQubitChannel::from_superoperator(raw / samples);
  out.compensated = TwoQubitChannel::from_superoperator(corrected / samples);
  return out;
}

std::vector<TrajectorySample> simulate_trajectory(const DerivedGateParams& params, double gamma_1, double gamma_2,
                                                  const SimOptions& opts) {
  const int n = opts.n_photon;
  const GateModel model(params, gamma_1, gamma_2, n);
  const MatX num = embed_cavity(FockSpace{n}.number());
  std::vector<TrajectorySample> rows;
  auto record = [&](double t, const MatX& rho) {
    TrajectorySample s;
    s.t_ns = t;
    s.trace = rho.trace().real();
    s.purity = (rho * rho).trace().real();
    s.mean_photon = (num * rho).trace().real();
    s.top_level_pop = top_level_population(rho, n);
    s.polaron_residual = polaron_weight_outside(rho, params, t, n);
    rows.push_back(s);
  };
  const MatX rho0 = product_state(uniform_superposition(), vacuum_density(n));
  record(0.0, rho0);
  evolve_rk4(model, rho0, params.t_g, opts.policy, opts, record);
  return rows;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& samples) {
  auto put = [&out](double v) { out << format_number(v); };
  out << "t_ns,trace,purity,mean_photon,top_level_pop,polaron_residual\n";
  for (const auto& s : samples) {
    for (double v : {s.t_ns, s.trace, s.purity, s.mean_photon, s.top_level_pop}) {
      put(v);
      out << ',';
    }
    put(s.polaron_residual);
    out << '\n';
  }
}

}  // namespace geophase
