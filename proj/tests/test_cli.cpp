/* Copyright 2026 The satreg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "satreg/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "satreg_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args) {
  const std::string cmd = std::string(SATREG_CLI) + " " + args + " 2>" + path("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void put(const std::string& p, const std::string& text) { std::ofstream(p) << text; }

void write_fixtures() {
  put(path("fit.csv"), "x1,y\n1,2\n2,4\n3,6\n4,8\n5,100\n");
  put(path("axis.csv"), "x1,x2\n-3,0\n-2,0\n-1,0\n1,0\n2,0\n3,0\n1,5\n-2,7\n");
}

}  // namespace

TEST_CASE("regress exact on the exact-fit data") {
  write_fixtures();
  REQUIRE(run("regress --method exact --p 0 --epsilon 0.1 -o " + path("r.json") + " " + path("fit.csv")) == 0);
  const json j = json::parse(slurp(path("r.json")));
  CHECK(j["objective"] == 1.0);
  CHECK(j["inliers"] == json::array({1, 2, 3, 4}));
  CHECK(j["w"][0].get<double>() == doctest::Approx(2.0));
  CHECK(j.contains("seconds"));
}

TEST_CASE("regress sampled and ransac are byte-identical across runs") {
  write_fixtures();
  for (const char* method : {"sampled", "ransac"}) {
    const std::string args = std::string("regress --method ") + method +
                             " --iters 3000 --rng-seed 7 --p 2 --epsilon 0.1 --no-timing " + path("fit.csv");
    REQUIRE(run(args + " -o " + path("a.json")) == 0);
    REQUIRE(run(args + " -o " + path("b.json")) == 0);
    CHECK(slurp(path("a.json")) == slurp(path("b.json")));
    CHECK(run(args + " --threads 1 -o " + path("c.json")) == 0);
    CHECK(slurp(path("a.json")) == slurp(path("c.json")));
  }
}

TEST_CASE("subspace exact on the axis data") {
  write_fixtures();
  REQUIRE(run("subspace --method exact --p 0 --ds 1 --epsilon 0.1 -o " + path("s.json") + " " + path("axis.csv")) ==
          0);
  const json j = json::parse(slurp(path("s.json")));
  CHECK(j["objective"] == 2.0);
  CHECK(j["inliers"] == json::array({1, 2, 3, 4, 5, 6}));

  const std::string sampled =
      "subspace --method sampled --iters 500 --rng-seed 3 --p 0 --ds 1 --epsilon 0.1 --no-timing " + path("axis.csv");
  REQUIRE(run(sampled + " -o " + path("s1.json")) == 0);
  REQUIRE(run(sampled + " -o " + path("s2.json")) == 0);
  CHECK(slurp(path("s1.json")) == slurp(path("s2.json")));
  CHECK(json::parse(slurp(path("s1.json")))["objective"] == 2.0);
}

TEST_CASE("exit codes") {
  write_fixtures();
  CHECK(run("regress --epsilon 0 " + path("fit.csv")) == 2);
  CHECK(run("regress --epsilon -1 " + path("fit.csv")) == 2);
  CHECK(run("regress --method bogus --epsilon 1 " + path("fit.csv")) == 2);
  CHECK(run("regress --p 3 --epsilon 1 " + path("fit.csv")) == 2);
  CHECK(run("regress --method exact --ransac-s 3 --epsilon 1 " + path("fit.csv")) == 2);
  CHECK(run("subspace --ds 2 --epsilon 1 " + path("axis.csv")) == 2);
  CHECK(run("subspace --epsilon 1 " + path("axis.csv")) == 2);
  CHECK(run("subspace --method ransac --ds 1 --epsilon 1 " + path("axis.csv")) == 2);
  CHECK(run("subspace --p 1 --ds 1 --epsilon 1 " + path("axis.csv")) == 2);
  CHECK(slurp(path("stderr.txt")).find("p = 1") != std::string::npos);
  CHECK(run("regress --epsilon 1 " + path("does_not_exist.csv")) == 3);
  CHECK(run("regress --epsilon 1 -o /nonexistent_dir/x.json " + path("fit.csv")) == 3);
  put(path("bad.csv"), "x1,y\n1,oops\n");
  CHECK(run("regress --epsilon 1 " + path("bad.csv")) == 6);
  put(path("short.csv"), "x1,x2,y\n1,2,3\n");
  CHECK(run("regress --epsilon 1 " + path("short.csv")) == 7);
  CHECK(run("bench --methods exact --N 5000 --trials 1") == 5);
  CHECK(run("") == 2);
}

TEST_CASE("gen writes a dataset and sidecar") {
  const std::string csv = path("gen.csv");
  REQUIRE(run("gen --N 100 --d 3 --r 0.4 --rng-seed 2 -o " + csv) == 0);
  const auto data = satreg::read_regression_csv(csv);
  CHECK(data.size() == 100);
  CHECK(data.dim() == 3);
  const json side = json::parse(slurp(path("gen.json")));
  CHECK(side["outliers"].size() == 40);
  CHECK(side["w0"].size() == 3);

  const std::string first_csv = slurp(csv);
  const std::string first_side = slurp(path("gen.json"));
  REQUIRE(run("gen --N 100 --d 3 --r 0.4 --rng-seed 2 -o " + csv) == 0);
  CHECK(slurp(csv) == first_csv);
  CHECK(slurp(path("gen.json")) == first_side);

  // Round trip: the parsed file equals the generator output bit for bit.
  satreg::GeneratorConfig cfg;
  cfg.n = 100;
  cfg.d = 3;
  cfg.outlier_fraction = 0.4;
  cfg.rng_seed = 2;
  const auto g = satreg::generate_regression(cfg);
  CHECK((g.data.x.array() == data.x.array()).all());
  CHECK((g.data.y.array() == data.y.array()).all());

  REQUIRE(run("gen --N 20 --d 2 --r 0 -o " + path("clean.csv")) == 0);
  CHECK(json::parse(slurp(path("clean.json")))["outliers"].empty());
  CHECK(run("gen --N 20 --d 2 --r 1.0 -o " + path("bad_r.csv")) == 2);
}

TEST_CASE("bench CSV") {
  const std::string args = "bench --trials 1 --N 30 --d 2 --iters 50 --r 0.1,0.5 --rng-seed 4 --no-timing";
  REQUIRE(run(args + " -o " + path("b1.csv") + " --summary " + path("sum.csv")) == 0);
  REQUIRE(run(args + " -o " + path("b2.csv")) == 0);
  const std::string csv = slurp(path("b1.csv"));
  CHECK(csv == slurp(path("b2.csv")));
  CHECK(csv.rfind("method,r,trial,error,objective,seconds\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 2);
  CHECK(slurp(path("sum.csv")).rfind("method,r,trials,", 0) == 0);
}

TEST_CASE("bench --fig1 preset row count") {
  // Full preset shape with a reduced iteration count to keep the test short.
  REQUIRE(run("bench --fig1 --rng-seed 1 --iters 20 --N 40 -o " + path("fig1.csv")) == 0);
  const std::string csv = slurp(path("fig1.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 1600);
}
