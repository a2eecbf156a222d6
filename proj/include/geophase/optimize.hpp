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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace geophase {

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
template <typename F>
double golden_section_minimize(F&& f, double lo, double hi, double tol, int max_iter = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (hi - lo) > tol; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

struct CoordinateDescentOptions {
  double bracket = 0.5;      // half-width of each line search
  double x_tol = 1e-8;       // line-search tolerance
  double rel_f_tol = 1e-4;   // stop when a full sweep changes f by less than this (relative)
  int max_sweeps = 50;
};

struct CoordinateDescentResult {
  std::vector<double> x;
  double value = 0.0;
  int sweeps = 0;
  bool converged = false;
};

/// Cyclic coordinate descent with bounded golden-section line searches.
template <typename F>
CoordinateDescentResult coordinate_descent(F&& f, std::vector<double> x, const std::vector<double>& lower,
                                           const std::vector<double>& upper,
                                           const CoordinateDescentOptions& opts = {}) {
  CoordinateDescentResult out;
  double current = f(x);
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double before = current;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double lo = std::max(lower[k], x[k] - opts.bracket);
      const double hi = std::min(upper[k], x[k] + opts.bracket);
      auto line = [&](double v) {
        auto trial = x;
        trial[k] = v;
        return f(trial);
      };
      const double candidate = golden_section_minimize(line, lo, hi, opts.x_tol);
      const double value = line(candidate);
      if (value < current) {
        x[k] = candidate;
        current = value;
      }
    }
    out.sweeps = sweep + 1;
    if (std::abs(before - current) <= opts.rel_f_tol * std::abs(before)) {
      out.converged = true;
      break;
    }
  }
  out.x = std::move(x);
  out.value = current;
  return out;
}

}  // namespace geophase
