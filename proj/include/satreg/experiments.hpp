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

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "satreg/core.hpp"
#include "satreg/sampling.hpp"

namespace satreg {

/// Synthetic regression data: y_i = x_i^T w0 + xi_i + nu_i with x_i uniform
/// on [-h, h]^d, xi_i ~ N(0, noise_std^2) and nu_i ~ N(outlier_mean,
/// outlier_std^2) on exactly round(r N) points chosen uniformly.
struct GeneratorConfig {
  std::size_t n = 100;
  std::size_t d = 3;
  /// Fixed true parameter; drawn uniformly from [-5, 5]^d when absent.
  std::optional<Vector> w0;
  double x_half_width = 5.0;
  double noise_std = std::sqrt(0.1);
  double outlier_mean = 100.0;
  double outlier_std = std::sqrt(1000.0);
  double outlier_fraction = 0.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct GeneratedRegression {
  RegressionDataset data;
  Vector w0;
  std::vector<std::size_t> outliers;  // sorted, 0-based
};

[[nodiscard]] GeneratedRegression generate_regression(const GeneratorConfig& cfg);

/// Points near a random d_s-dimensional subspace: x = B0 c + noise with c
/// uniform in [-h, h]^{d_s}; outliers uniform in [-h, h]^d.
struct SubspaceGeneratorConfig {
  std::size_t n = 50;
  std::size_t d = 2;
  std::size_t subspace_dim = 1;
  double half_width = 5.0;
  double noise_std = 0.05;
  double outlier_fraction = 0.0;
  std::uint64_t rng_seed = 0;
};

struct GeneratedSubspace {
  PointDataset data;
  SubspaceModel truth;
  std::vector<std::size_t> outliers;
};

[[nodiscard]] GeneratedSubspace generate_subspace(const SubspaceGeneratorConfig& cfg);

/// |w0 - w| / |w0|.
[[nodiscard]] double relative_error(const Vector& w0, const Vector& w);

struct BenchRow {
  std::string method;
  double r = 0.0;
  std::size_t trial = 0;
  double error = 0.0;
  double objective = 0.0;
  double seconds = 0.0;
};

struct SweepConfig {
  std::vector<std::string> methods{"sampled", "ransac"};
  std::vector<double> r_values{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  std::size_t trials = 100;
  /// Dataset template; w0 and rng_seed are replaced per trial.
  GeneratorConfig base;
  LossSpec spec{2, 3.0 * std::sqrt(0.1)};
  /// n_iters and ransac_subset are used; rng_seed is derived per trial.
  SamplingConfig sampling;
  std::uint64_t master_seed = 1;
  /// Largest C(2N, d) the exact method may enumerate per trial.
  std::uint64_t exact_budget = 20'000'000;
  int threads = 0;

  void validate() const;
};

/// Runs every (method, r, trial). The dataset of (r, trial) is shared by all
/// methods. Rows come back sorted by (method, r, trial). Throws
/// BudgetExceeded if the exact method is requested beyond exact_budget.
[[nodiscard]] std::vector<BenchRow> run_sweep(const SweepConfig& cfg);

struct SummaryRow {
  std::string method;
  double r = 0.0;
  std::size_t count = 0;
  double mean_error = 0.0;
  double std_error = 0.0;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
};

/// Mean and sample standard deviation (0 for a single row) per (method, r).
[[nodiscard]] std::vector<SummaryRow> summarize(const std::vector<BenchRow>& rows);

/// CSV with header `method,r,trial,error,objective,seconds`, 9 significant digits.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace satreg
