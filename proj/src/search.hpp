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

// Per-seed kernels shared by the exact enumerators and the random-sampling
// variants, plus the block-synchronous OpenMP driver that runs them.

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <exception>
#include <limits>
#include <span>
#include <vector>

#include "satreg/core.hpp"
#include "satreg/exact.hpp"
#include "satreg/geometry.hpp"

namespace satreg::detail {

// Sign completion enumerates 2^n patterns; more than this many on-plane
// points means the data is far from general position.
inline constexpr std::size_t kMaxOnPlane = 20;
// |h_1| at or below this is treated as a vertical hyperplane.
inline constexpr double kVerticalTol = 1e-12;

struct Candidate {
  double objective = std::numeric_limits<double>::infinity();
  std::uint64_t rank = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t mask = std::numeric_limits<std::uint64_t>::max();
  Vector w;        // empty while a p = 0 fit is deferred
  Matrix basis;
  InlierSet subset;  // the classification that produced the candidate
  bool non_unique = false;

  [[nodiscard]] bool has_value() const { return rank != std::numeric_limits<std::uint64_t>::max(); }
};

/// Ordering by (objective, rank, mask): the earliest seed wins ties.
[[nodiscard]] inline bool better(const Candidate& a, const Candidate& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.mask < b.mask;
}

/// Pruning threshold seen by a kernel. In block mode it is frozen for the
/// whole block; in continuous mode the kernel's own best also counts.
inline double effective_threshold(double block_threshold, const Candidate& best, bool continuous) {
  return continuous ? std::min(block_threshold, best.objective) : block_threshold;
}

class RegressionSearch {
 public:
  RegressionSearch(const RegressionDataset& data, const LiftedSet& lift, const LossSpec& spec, bool prune,
                   bool continuous)
      : data_(data), lift_(lift), spec_(spec), prune_(prune), continuous_(continuous) {}

  void process(std::span<const std::size_t> seed, std::uint64_t rank, double block_threshold, Candidate& best,
               SolveCounters& c);

 private:
  const RegressionDataset& data_;
  const LiftedSet& lift_;
  const LossSpec& spec_;
  bool prune_;
  bool continuous_;
  std::vector<std::size_t> base_;
  std::vector<std::size_t> cand_;
  std::vector<std::uint64_t> req_;
};

class SubspaceSearch {
 public:
  SubspaceSearch(const PointDataset& data, const LiftedSet& lift, const LossSpec& spec, bool continuous)
      : data_(data), lift_(lift), spec_(spec), continuous_(continuous) {}

  void process(std::span<const std::size_t> seed, std::uint64_t rank, double block_threshold, Candidate& best,
               SolveCounters& c);

 private:
  const PointDataset& data_;
  const LiftedSet& lift_;
  const LossSpec& spec_;
  bool continuous_;
};

/// p = 0 approximation: score w = h_{2:}/h_1 directly.
class DirectHyperplaneSearch {
 public:
  DirectHyperplaneSearch(const RegressionDataset& data, const LiftedSet& lift, const LossSpec& spec)
      : data_(data), lift_(lift), spec_(spec) {}

  void process(std::span<const std::size_t> seed, std::uint64_t rank, double block_threshold, Candidate& best,
               SolveCounters& c);

 private:
  const RegressionDataset& data_;
  const LiftedSet& lift_;
  const LossSpec& spec_;
};

struct DriverConfig {
  int threads = 0;
  std::uint64_t block_size = 2048;
  std::uint64_t chunk = 32;
  const ExactOptions* hooks = nullptr;  // progress / cancel, optional
};

[[nodiscard]] inline int resolve_threads(int requested) {
  return requested > 0 ? requested : omp_get_max_threads();
}

/// Runs `total` ranked seeds in blocks. `generate(begin, end, fn)` must call
/// fn(rank, seed) for every rank in [begin, end) in order. Each thread gets
/// its own kernel from `make()`. Returns false if cancelled.
template <class MakeSearch, class Generate>
bool run_blocked(std::uint64_t total, const DriverConfig& cfg, double initial_threshold, MakeSearch&& make,
                 Generate&& generate, Candidate& best, SolveCounters& counters) {
  const int nthreads = resolve_threads(cfg.threads);
  const std::uint64_t block = std::max<std::uint64_t>(1, cfg.block_size);
  const std::uint64_t chunk = std::max<std::uint64_t>(1, cfg.chunk);
  double threshold = initial_threshold;

  for (std::uint64_t begin = 0; begin < total; begin += block) {
    if (cfg.hooks && cfg.hooks->cancel && cfg.hooks->cancel->load()) return false;
    const std::uint64_t end = std::min(total, begin + block);
    const auto nchunks = static_cast<std::int64_t>((end - begin + chunk - 1) / chunk);

    std::vector<Candidate> locals(static_cast<std::size_t>(nthreads));
    std::vector<SolveCounters> local_counts(static_cast<std::size_t>(nthreads));
    std::exception_ptr failure;

#pragma omp parallel num_threads(nthreads)
    {
      const auto tid = static_cast<std::size_t>(omp_get_thread_num());
      auto search = make();
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t ch = 0; ch < nchunks; ++ch) {
        const std::uint64_t b = begin + static_cast<std::uint64_t>(ch) * chunk;
        const std::uint64_t e = std::min(end, b + chunk);
        try {
          generate(b, e, [&](std::uint64_t rank, std::span<const std::size_t> seed) {
            search.process(seed, rank, threshold, locals[tid], local_counts[tid]);
          });
        } catch (...) {
#pragma omp critical(satreg_failure)
          if (!failure) failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t t = 0; t < locals.size(); ++t) {
      counters += local_counts[t];
      if (locals[t].has_value() && (!best.has_value() || better(locals[t], best))) best = std::move(locals[t]);
    }
    if (best.has_value()) threshold = std::min(threshold, best.objective);
    if (cfg.hooks && cfg.hooks->progress) cfg.hooks->progress(end, total, threshold);
  }
  return true;
}

/// Enumeration source for run_blocked: lexicographic k-subsets of [0, m).
struct EnumerationSource {
  std::size_t m;
  std::size_t k;

  template <class Fn>
  void operator()(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    SeedEnumerator it(m, k);
    it.seek(begin);
    for (std::uint64_t r = begin; r < end; ++r, it.next()) fn(r, std::span<const std::size_t>(it.current()));
  }
};

/// Fills in model, objective and inliers of a regression report from the
/// winning candidate, including the deferred p = 0 minimax fit and the
/// exactly-d-inliers fallback.
void finalize_regression(const RegressionDataset& data, const LossSpec& spec, Candidate best, SolveReport& report);

void finalize_subspace(const PointDataset& data, const LossSpec& spec, const Candidate& best, SolveReport& report);

}  // namespace satreg::detail
