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

// Serial reference vs OpenMP driver for the exact solvers.
//
//   bench_enumeration [--N 80] [--d 2] [--p 2] [--reps 3] [--threads 0]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "CLI11.hpp"
#include "satreg/exact.hpp"
#include "satreg/experiments.hpp"

using namespace satreg;

namespace {

double median_seconds(int reps, const std::function<double()>& run, double& objective) {
  std::vector<double> t;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    objective = run();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 80;
  std::size_t d = 2;
  int p = 2;
  int reps = 3;
  int threads = 0;
  std::size_t points = 9;
  CLI::App app{"Exact enumeration: serial reference vs OpenMP"};
  app.add_option("--N", n);
  app.add_option("--d", d);
  app.add_option("--p", p)->check(CLI::IsMember({0, 1, 2}));
  app.add_option("--reps", reps)->check(CLI::PositiveNumber);
  app.add_option("--threads", threads);
  app.add_option("--subspace-N", points, "Points in the subspace case (d=2, d_s=1)");
  CLI11_PARSE(app, argc, argv);

  GeneratorConfig gen;
  gen.n = n;
  gen.d = d;
  gen.outlier_fraction = 0.3;
  gen.rng_seed = 1;
  const RegressionDataset data = generate_regression(gen).data;
  const LossSpec spec{p, 1.0};
  ExactOptions opts;
  opts.threads = threads;

  const int used = threads > 0 ? threads : omp_get_max_threads();
  std::printf("case,threads,seconds,objective\n");
  double j = 0.0;
  double t = median_seconds(reps, [&] { return exact_regression_serial(data, spec).objective; }, j);
  std::printf("regression_serial,1,%.6f,%.17g\n", t, j);
  t = median_seconds(reps, [&] { return exact_regression(data, spec, opts).objective; }, j);
  std::printf("regression_openmp,%d,%.6f,%.17g\n", used, t, j);

  SubspaceGeneratorConfig sg;
  sg.n = points;
  sg.outlier_fraction = 0.25;
  sg.rng_seed = 2;
  const PointDataset pts = generate_subspace(sg).data;
  const LossSpec sspec{p == 1 ? 2 : p, 0.3};
  t = median_seconds(reps, [&] { return exact_subspace_serial(pts, sspec).objective; }, j);
  std::printf("subspace_serial,1,%.6f,%.17g\n", t, j);
  t = median_seconds(reps, [&] { return exact_subspace(pts, sspec, opts).objective; }, j);
  std::printf("subspace_openmp,%d,%.6f,%.17g\n", used, t, j);
  return 0;
}
