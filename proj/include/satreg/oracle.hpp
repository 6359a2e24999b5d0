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

// Brute-force certifier of global optimality for small instances. It never
// touches the lifted geometry: every candidate inlier set I1 is enumerated
// directly, refit with the fixed-classification subproblem and scored with
// the full objective over all points.

#include <cstdint>

#include "satreg/core.hpp"

namespace satreg {

inline constexpr std::size_t kOracleRegressionMaxN = 20;
inline constexpr std::size_t kOracleSubspaceMaxN = 16;

struct OracleRegressionResult {
  double objective = 0.0;
  InlierSet inliers;  // I1 of the returned model
  RegressionModel model;
  std::uint64_t subsets_evaluated = 0;
  /// p = 0: subsets whose minimax error lands within the on-plane tolerance
  /// of epsilon (floating-point ties at the threshold).
  std::uint64_t boundary_subsets = 0;
};

struct OracleSubspaceResult {
  double objective = 0.0;
  InlierSet inliers;
  SubspaceModel model;
  std::uint64_t subsets_evaluated = 0;
  /// p = 0: subsets whose least-squares basis fails to keep every member
  /// strictly within epsilon.
  std::uint64_t infeasible_witnesses = 0;
};

/// Global minimum of the regression objective over every I1 with |I1| >= d.
/// Throws InvalidInput for N > 20.
[[nodiscard]] OracleRegressionResult oracle_regression(const RegressionDataset& data, const LossSpec& spec,
                                                       int threads = 0);

/// Global minimum of the subspace objective over every I1 with |I1| >= d_s
/// (p in {0, 2}). Throws InvalidInput for N > 16.
[[nodiscard]] OracleSubspaceResult oracle_subspace(const PointDataset& data, const LossSpec& spec,
                                                   int threads = 0);

}  // namespace satreg
