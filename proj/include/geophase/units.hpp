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

#include <cmath>
#include <numbers>

// Physical constants (CODATA 2018, exact where the SI defines them) and the
// single conversion layer between boundary units and the internal system.
//
// Internal system: time in ns, energies as angular frequencies in rad/ns
// (hbar = 1). Boundary units are SI volts/ohms, eV and GHz.

namespace geophase::units {

inline constexpr double kPi = std::numbers::pi;

inline constexpr double kHbar = 1.054571817e-34;            // J s
inline constexpr double kPlanck = 6.62607015e-34;           // J s (exact)
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C (exact)
inline constexpr double kHbarEv = kHbar / kElementaryCharge;      // eV s
inline constexpr double kPlanckEv = kPlanck / kElementaryCharge;  // eV s

inline constexpr double kNsPerS = 1e9;

// Energies.
inline double ev_to_internal(double energy_ev) { return energy_ev / kHbarEv / kNsPerS; }
inline double internal_to_ev(double rad_per_ns) { return rad_per_ns * kNsPerS * kHbarEv; }
inline double uev_to_internal(double energy_uev) { return ev_to_internal(energy_uev * 1e-6); }
inline double internal_to_uev(double rad_per_ns) { return internal_to_ev(rad_per_ns) * 1e6; }

// Cycle frequencies (E = h f).
inline double ghz_to_internal(double f_ghz) { return 2.0 * kPi * f_ghz; }
inline double internal_to_ghz(double rad_per_ns) { return rad_per_ns / (2.0 * kPi); }
inline double internal_to_mhz(double rad_per_ns) { return internal_to_ghz(rad_per_ns) * 1e3; }

// Rates.
inline double per_s_to_internal(double rate) { return rate / kNsPerS; }
inline double internal_to_per_s(double rate) { return rate * kNsPerS; }

/// Energy e*V of one electron at potential V, internal units.
inline double volts_to_internal(double volts) { return ev_to_internal(volts); }

/// Charge-noise prefactor S_eps [eV^2 / Hz^(1-beta)] to internal units
/// [ns^-(1+beta)]. Fluctuations of an energy are expressed as fluctuations of
/// the cycle frequency E/h before the noise spectrum is applied.
inline double charge_noise_to_internal(double s_eps_ev2, double beta) {
  return s_eps_ev2 / (kPlanckEv * kPlanckEv) * std::pow(1.0 / kNsPerS, 1.0 + beta);
}
inline double charge_noise_from_internal(double s_internal, double beta) {
  return s_internal * (kPlanckEv * kPlanckEv) / std::pow(1.0 / kNsPerS, 1.0 + beta);
}

}  // namespace geophase::units
