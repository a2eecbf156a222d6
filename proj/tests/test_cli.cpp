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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "geophase_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(GEOPHASE_CLI) + " " + args + " >" + (kDir / "stdout.txt").string() + " 2>" +
                          (kDir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = kDir / name;
  std::ofstream(p) << text;
  return p;
}

struct TempDir {
  TempDir() { fs::create_directories(kDir); }
  ~TempDir() { fs::remove_all(kDir); }
};

}  // namespace

TEST_CASE("analytic and optimize subcommands") {
  TempDir dir;
  REQUIRE(run("analytic") == 0);
  const std::string csv = slurp(kDir / "stdout.txt");
  CHECK(csv.rfind("z_ohm,q,n,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

  REQUIRE(run("optimize --z-ohm 5000 --q 20000 --format json") == 0);
  const auto j = nlohmann::json::parse(slurp(kDir / "stdout.txt"));
  CHECK(j.at("rows").size() == 1);
  const double f = j.at("rows")[0].at("f_analytic");
  CHECK(f > 0.989);
  CHECK(f < 0.993);
}

TEST_CASE("sweep writes files and reruns byte-identically") {
  TempDir dir;
  const auto cfg = write_config("sweep.json", R"({
    "axes": [{"name": "z_r_ohm", "values": [500, 5000]}, {"name": "q", "values": [1e4, 1e5]}]
  })");
  const auto a = kDir / "a.csv";
  const auto b = kDir / "b.csv";
  REQUIRE(run("sweep --config " + cfg.string() + " --out " + a.string()) == 0);
  REQUIRE(run("sweep --config " + cfg.string() + " --jobs 2 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  const std::string text = slurp(a);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("simulate writes a trajectory") {
  TempDir dir;
  const auto traj = kDir / "traj.csv";
  REQUIRE(run("simulate --trajectory " + traj.string()) == 0);
  const std::string csv = slurp(kDir / "stdout.txt");
  CHECK(csv.find("0.99") != std::string::npos);
  CHECK(slurp(traj).rfind("t_ns,trace,purity,mean_photon,top_level_pop,polaron_residual\n", 0) == 0);
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("analytic --format xml") == 2);
  CHECK(run("analytic --config /nonexistent.json") == 2);

  const auto bad = write_config("bad.json", R"({"qbits": 2})");
  CHECK(run("analytic --config " + bad.string()) == 2);
  CHECK(slurp(kDir / "stderr.txt").find("qbits") != std::string::npos);

  const auto broken = write_config("broken.json", "{ not json");
  CHECK(run("analytic --config " + broken.string()) == 2);

  const auto failing = write_config("fail.json", R"({"axes": [{"name": "beta", "values": [0.67, 1.2]}]})");
  CHECK(run("sweep --config " + failing.string()) == 3);
  const std::string csv = slurp(kDir / "stdout.txt");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const auto truncated = write_config("trunc.json", R"({"n_photon": 2})");
  CHECK(run("simulate --config " + truncated.string()) == 3);
}
