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

#include <cmath>
#include <sstream>

#include "geophase/sweep.hpp"
#include "geophase/units.hpp"
#include "oracles.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace geophase;
using nlohmann::json;

namespace {

RunConfig grid_config() {
  return config_from_json(json::parse(R"({
    "axes": [
      {"name": "z_r_ohm", "values": [50, 500, 5000, 50000]},
      {"name": "q", "log_range": {"start": 1000, "stop": 200000, "count": 8}}
    ]
  })"));
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

}  // namespace

TEST_CASE("config defaults and parsing") {
  const auto c = config_from_json(json::object());
  CHECK(c.z_r_ohm == 5000.0);
  CHECK(c.q == 20000.0);
  CHECK(c.beta == 0.67);
  CHECK(c.n == 2);
  CHECK(c.mode == RunMode::optimize);
  CHECK(c.initial_cavity.kind == InitialCavity::Kind::vacuum);

  const auto r = log_range(1e3, 2e5, 8);
  REQUIRE(r.size() == 8);
  CHECK(r.front() == 1e3);
  CHECK(r.back() == 2e5);
  CHECK_THAT(r[1] / r[0], WithinRel(r[7] / r[6], 1e-12));
  CHECK(linear_range(0.0, 1.0, 5)[2] == 0.5);

  const auto back = config_from_json(config_to_json(grid_config()));
  CHECK(config_to_json(back) == config_to_json(grid_config()));
}

TEST_CASE("config errors name the offending path") {
  CHECK_THROWS_WITH(config_from_json(json::parse(R"({"qbits": 2})")), ContainsSubstring("unknown key(s): qbits"));
  CHECK_THROWS_WITH(config_from_json(json::parse(R"({"axes": [{"name": "q", "log_range": {"start": 1, "stop": 2, "count": 0}}]})")),
                    ContainsSubstring("axes[0].log_range.count"));
  CHECK_THROWS_WITH(config_from_json(json::parse(R"({"axes": [{"name": "qq", "values": [1]}]})")),
                    ContainsSubstring("axes[0].name"));
  CHECK_THROWS_WITH(config_from_json(json::parse(R"({"z_r_ohm": "big"})")), ContainsSubstring("z_r_ohm"));
  CHECK_THROWS_WITH(config_from_json(json::parse(R"({"initial_cavity": {"kind": "squeezed"}})")),
                    ContainsSubstring("initial_cavity.kind"));
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"n": 1.5})")), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("reference operating point") {
  const auto c = config_from_json(json::object());
  const auto op = optimal_operating_point(c);
  CHECK_FALSE(op.clamped);
  CHECK_THAT(op.infidelity_closed_form, WithinRel(1.0 - oracle::frozen::kFClosedForm, 1e-8));
  CHECK_THAT(op.infidelity, WithinAbs(oracle::frozen::kRefinedInfidelity, 1e-8));
  const double gain = 1.0 - op.infidelity / op.infidelity_closed_form;
  CHECK(gain > 0.0);
  CHECK(gain < 0.025);

  const auto row = optimize_point(c, 5000.0, 20000.0);
  CHECK(row.f_analytic > 0.989);
  CHECK(row.f_analytic < 0.993);
  CHECK(row.t_g_ns > 3.0);
  CHECK(row.t_g_ns < 30.0);
  CHECK_THAT(row.eps_d_over_eps_a, WithinAbs(2.0, 0.05));
  REQUIRE(row.infidelity_powerlaw);
  CHECK_THAT(*row.infidelity_powerlaw, WithinRel(oracle::frozen::kPowerLaw, 1e-9));
  CHECK_FALSE(row.error);
}

TEST_CASE("lossless resonator clamps to the window with eps_d near 2 eps_a") {
  auto c = config_from_json(json::object());
  c.q = 1e13;
  c.refine = false;
  const auto op = optimal_operating_point(c);
  CHECK(op.clamped);
  CHECK_THAT(op.eps_d / units::uev_to_internal(c.eps_a_uev), WithinAbs(2.0, 1e-3));
}

TEST_CASE("grid sweep") {
  auto c = grid_config();
  const auto r = run_sweep(c);
  REQUIRE(r.rows.size() == 32);
  CHECK(r.axes == std::vector<std::string>{"z_r_ohm", "q"});
  CHECK(r.rows[0].inputs[0].second == 50.0);
  CHECK(r.rows[1].inputs[1].second > r.rows[0].inputs[1].second);
  for (const auto& row : r.rows) {
    CHECK_FALSE(row.error);
    CHECK(row.f_analytic > 0.8);
    CHECK(row.f_analytic < 1.0);
  }
  // Fidelity rises with both impedance and quality factor.
  for (int zi = 0; zi < 4; ++zi)
    for (int qi = 0; qi < 8; ++qi) {
      const auto& row = r.rows[zi * 8 + qi];
      if (qi > 0) CHECK(row.f_analytic > r.rows[zi * 8 + qi - 1].f_analytic);
      if (zi > 0) CHECK(row.f_analytic > r.rows[(zi - 1) * 8 + qi].f_analytic);
    }
  CHECK_THAT(r.rows[0].infidelity_closed_form, WithinRel(1.0 - oracle::frozen::kFClosedZ50Q1e3, 1e-8));
  CHECK_THAT(r.rows[31].infidelity_closed_form, WithinRel(1.0 - oracle::frozen::kFClosedZ5e4Q2e5, 1e-8));

  const auto single = optimize_point(c, r.rows[13].z_ohm, r.rows[13].q);
  CHECK(single.f_analytic == r.rows[13].f_analytic);
  CHECK(single.j_ghz == r.rows[13].j_ghz);

  c.jobs = 3;
  CHECK(csv_of(run_sweep(c)) == csv_of(r));
  CHECK(csv_of(run_sweep(grid_config())) == csv_of(r));
}

TEST_CASE("CSV and JSON output") {
  auto c = grid_config();
  c.axes[0].values = {500, 5000};
  c.axes[1].values = {1e4, 1e5};
  const auto r = run_sweep(c);
  const std::string csv = csv_of(r);
  CHECK(csv.rfind("z_ohm,q,n,j_ghz,eps_d_over_eps_a,g_mhz,delta_mhz,t_g_ns,f_analytic,f_numeric,"
                  "infidelity_powerlaw,clamped,max_fock_pop\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  std::stringstream js;
  write_json(js, r, c);
  const auto parsed = json::parse(js.str());
  CHECK(parsed.at("schema_version") == kResultSchemaVersion);
  CHECK(parsed.at("rows").size() == 4);
  CHECK(parsed.at("config").at("axes").size() == 2);
  js.seekg(0);
  const auto back = read_json(js);
  CHECK(back.axes == r.axes);
  CHECK(csv_of(back) == csv);
}

TEST_CASE("drive scaling keeps t_g eps_d fixed") {
  auto c = config_from_json(json::parse(R"({"axes": [{"name": "eps_d_scale", "values": [0.5, 1, 1.5, 2]}]})"));
  const auto r = run_sweep(c);
  REQUIRE(r.rows.size() == 4);
  const double ref = r.rows[1].t_g_ns * r.rows[1].eps_d_over_eps_a;
  for (const auto& row : r.rows) {
    CHECK(row.j_ghz == r.rows[0].j_ghz);
    CHECK_THAT(row.t_g_ns * row.eps_d_over_eps_a, WithinRel(ref, 1e-9));
  }
  CHECK(r.rows[1].f_analytic > r.rows[0].f_analytic);
  CHECK(r.rows[1].f_analytic > r.rows[3].f_analytic);
}

TEST_CASE("failing points become error rows") {
  auto c = config_from_json(json::parse(R"({"axes": [{"name": "beta", "values": [0.67, 1.2]}]})"));
  const auto r = run_sweep(c);
  REQUIRE(r.rows.size() == 2);
  CHECK_FALSE(r.rows[0].error);
  REQUIRE(r.rows[1].error);
  const std::string csv = csv_of(r);
  CHECK_THAT(csv, ContainsSubstring("\n5000,20000,2" + std::string(10, ',') + "\n"));
}

TEST_CASE("numeric column tracks the analytic fidelity") {
  auto c = config_from_json(json::parse(R"({"numeric": true})"));
  const auto row = optimize_point(c, 5000.0, 20000.0);
  REQUIRE(row.f_numeric);
  REQUIRE(row.max_fock_pop);
  CHECK_FALSE(row.numeric_failed);
  CHECK(std::abs(*row.f_numeric - row.f_analytic) < 2e-3);
  CHECK(*row.max_fock_pop < 1e-4);
}
