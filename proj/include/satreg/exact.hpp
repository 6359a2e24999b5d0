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

#include <atomic>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "satreg/core.hpp"

namespace satreg {

struct SolveCounters {
  std::uint64_t seeds_enumerated = 0;
  std::uint64_t seeds_degenerate = 0;   // rank-deficient seed matrices
  std::uint64_t seeds_vertical = 0;     // regression hyperplanes with h_1 = 0
  std::uint64_t seeds_skipped = 0;      // whole sign loop skipped by the count bound
  std::uint64_t sign_completions = 0;
  std::uint64_t max_completions_per_seed = 0;
  std::uint64_t subproblems_solved = 0;
  std::uint64_t subproblems_pruned = 0;
  std::uint64_t extra_on_plane = 0;     // on-plane points beyond the seed (non-generic data)

  SolveCounters& operator+=(const SolveCounters& o);
  friend bool operator==(const SolveCounters&, const SolveCounters&) = default;
};

/// Result of any solver in this library.
struct SolveReport {
  double objective = 0.0;
  std::variant<RegressionModel, SubspaceModel> model;
  /// I1 of the returned model.
  InlierSet inliers;
  SolveCounters counters;
  /// Rank of the winning seed (enumeration or iteration index) and the sign
  /// completion mask that produced it.
  std::uint64_t best_rank = 0;
  std::uint64_t best_mask = 0;
  bool approximate = false;
  bool cancelled = false;
  /// Only exactly d inlier points were possible; solved by exact fits.
  bool trivial_case = false;
  /// p = 0: the final minimax fit on the best inlier set reproduces its
  /// objective. False flags a floating-point tie at the threshold.
  bool certificate_ok = true;
  /// Subspace: the least-squares basis of the winning set is not unique.
  bool non_unique = false;
  /// RANSAC only: size of the best consensus set before refitting.
  std::size_t consensus = 0;
  double seconds = 0.0;

  [[nodiscard]] const RegressionModel& regression() const { return std::get<RegressionModel>(model); }
  [[nodiscard]] const SubspaceModel& subspace() const { return std::get<SubspaceModel>(model); }
};

struct ExactOptions {
  /// Worker threads; 0 uses the OpenMP default.
  int threads = 0;
  /// Count-bound pruning of sign completions and of whole seeds.
  bool prune = true;
  /// Seeds per synchronization block. The incumbent used for pruning is only
  /// refreshed between blocks, which keeps results independent of the
  /// thread count.
  std::uint64_t block_size = 2048;
  /// Called from one thread between blocks with (seeds done, total, J*).
  std::function<void(std::uint64_t, std::uint64_t, double)> progress;
  /// Checked between blocks; the run stops early and flags `cancelled`.
  const std::atomic<bool>* cancel = nullptr;
};

/// Lexicographic k-subsets of {0, ..., M-1}.
class SeedEnumerator {
 public:
  SeedEnumerator(std::size_t m, std::size_t k);

  /// Positions the enumerator on the subset of the given lexicographic rank.
  void seek(std::uint64_t rank);
  [[nodiscard]] const std::vector<std::size_t>& current() const { return current_; }
  [[nodiscard]] bool done() const { return done_; }
  void next();
  [[nodiscard]] std::uint64_t count() const { return count_; }

 private:
  std::size_t m_;
  std::size_t k_;
  std::uint64_t count_;
  std::vector<std::size_t> current_;
  bool done_ = false;
};

/// Global minimizer of the saturated regression objective by enumerating
/// every hyperplane through d lifted points and the origin, resolving
/// on-plane signs exhaustively and solving the fixed-classification
/// subproblem. OpenMP-parallel over seeds.
[[nodiscard]] SolveReport exact_regression(const RegressionDataset& data, const LossSpec& spec,
                                           const ExactOptions& options = {});

/// Single-threaded reference with a continuously updated incumbent, kept to
/// cross-check the parallel driver.
[[nodiscard]] SolveReport exact_regression_serial(const RegressionDataset& data, const LossSpec& spec,
                                                  bool prune = true);

/// p = 0 only: best w = h_{2:d+1} / h_1 over all enumerated hyperplanes with
/// h_1 > 0, without sign completion. J0(w) <= J0* + 2d.
[[nodiscard]] SolveReport approx_regression_p0(const RegressionDataset& data, const LossSpec& spec,
                                               const ExactOptions& options = {});

/// Global minimizer of the saturated subspace objective (p in {0, 2}).
[[nodiscard]] SolveReport exact_subspace(const PointDataset& data, const LossSpec& spec,
                                         const ExactOptions& options = {});

[[nodiscard]] SolveReport exact_subspace_serial(const PointDataset& data, const LossSpec& spec);

}  // namespace satreg
