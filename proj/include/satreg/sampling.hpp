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

#include <cstdint>

#include "satreg/exact.hpp"

namespace satreg {

struct SamplingConfig {
  std::uint64_t n_iters = 1000;
  std::uint64_t rng_seed = 0;
  /// RANSAC sample size s; 0 means 2d.
  std::size_t ransac_subset = 0;
  /// When n_iters covers every seed subset, enumerate them instead of
  /// sampling (the result is then exact).
  bool enumerate_if_covering = false;
  bool prune = true;
  int threads = 0;
  std::uint64_t block_size = 256;
};

/// Algorithm-1 style search over n_iters random seeds of d distinct lifted
/// indices. Iteration k draws from its own stream derived from rng_seed, so
/// results do not depend on the thread count.
[[nodiscard]] SolveReport sampled_regression(const RegressionDataset& data, const LossSpec& spec,
                                             const SamplingConfig& cfg);

/// Algorithm-2 style search over n_iters random seeds of D lifted indices.
[[nodiscard]] SolveReport sampled_subspace(const PointDataset& data, const LossSpec& spec,
                                           const SamplingConfig& cfg);

/// Classic RANSAC: least squares on s random points, keep the largest
/// consensus set (strict |e| < eps), then refit that set with the
/// subproblem for p and report J_p of the refit.
[[nodiscard]] SolveReport ransac_regression(const RegressionDataset& data, const LossSpec& spec,
                                            const SamplingConfig& cfg);

}  // namespace satreg
