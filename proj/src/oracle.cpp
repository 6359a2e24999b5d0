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

#include "satreg/oracle.hpp"

#include <omp.h>

#include <bit>
#include <cmath>
#include <exception>
#include <limits>

#include "satreg/geometry.hpp"
#include "satreg/subsolvers.hpp"

namespace satreg {

namespace {

InlierSet subset_of(std::uint64_t mask, std::size_t n) {
  InlierSet s;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask & (std::uint64_t{1} << i)) s.indices.push_back(i);
  }
  return s;
}

template <class Model>
struct Best {
  double objective = std::numeric_limits<double>::infinity();
  std::uint64_t mask = std::numeric_limits<std::uint64_t>::max();
  Model model;
  std::uint64_t evaluated = 0;
  std::uint64_t flagged = 0;

  void offer(double j, std::uint64_t m, const Model& candidate) {
    if (j < objective || (j == objective && m < mask)) {
      objective = j;
      mask = m;
      model = candidate;
    }
  }
};

// Min-reduction over all masks with popcount >= min_size; `eval(mask, best)`
// scores one subset into the thread-local best.
template <class Model, class Eval>
Best<Model> search_subsets(std::size_t n, std::size_t min_size, int threads, Eval&& eval) {
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  std::vector<Best<Model>> locals(static_cast<std::size_t>(nthreads));
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << n);
  std::exception_ptr failure;
#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 64)
  for (std::int64_t m = 0; m < total; ++m) {
    const auto mask = static_cast<std::uint64_t>(m);
    if (static_cast<std::size_t>(std::popcount(mask)) < min_size) continue;
    try {
      eval(mask, locals[static_cast<std::size_t>(omp_get_thread_num())]);
    } catch (...) {
#pragma omp critical(satreg_oracle_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  Best<Model> out;
  for (const auto& b : locals) {
    out.evaluated += b.evaluated;
    out.flagged += b.flagged;
    if (b.mask != std::numeric_limits<std::uint64_t>::max()) out.offer(b.objective, b.mask, b.model);
  }
  return out;
}

}  // namespace

OracleRegressionResult oracle_regression(const RegressionDataset& data, const LossSpec& spec, int threads) {
  data.validate();
  spec.validate();
  const std::size_t n = data.size();
  if (n > kOracleRegressionMaxN) {
    throw InvalidInput("brute-force oracle refuses N > " + std::to_string(kOracleRegressionMaxN));
  }
  const double boundary = kOnPlaneTol * std::max(1.0, spec.epsilon);

  auto best = search_subsets<RegressionModel>(n, data.dim(), threads, [&](std::uint64_t mask, auto& local) {
    const InlierSet subset = subset_of(mask, n);
    RegressionModel model;
    if (spec.p == 0) {
      const MinimaxFit fit = solve_minimax(data, subset);
      if (std::abs(fit.max_error - spec.epsilon) <= boundary) ++local.flagged;
      model = fit.model;
    } else {
      model = solve_regression_subproblem(data, subset, spec.p);
    }
    ++local.evaluated;
    local.offer(regression_objective(data, model, spec), mask, model);
  });

  OracleRegressionResult out;
  out.objective = best.objective;
  out.model = std::move(best.model);
  out.inliers = regression_inliers(data, out.model, spec);
  out.subsets_evaluated = best.evaluated;
  out.boundary_subsets = best.flagged;
  return out;
}

OracleSubspaceResult oracle_subspace(const PointDataset& data, const LossSpec& spec, int threads) {
  data.validate();
  spec.validate();
  if (spec.p == 1) throw UnsupportedCase("subspace oracle supports p = 0 and p = 2 only");
  const std::size_t n = data.size();
  if (n > kOracleSubspaceMaxN) {
    throw InvalidInput("brute-force oracle refuses N > " + std::to_string(kOracleSubspaceMaxN));
  }

  auto best = search_subsets<SubspaceModel>(n, data.subspace_dim, threads, [&](std::uint64_t mask, auto& local) {
    const InlierSet subset = subset_of(mask, n);
    const SubspaceFit fit = solve_subspace_p2(data, subset, data.subspace_dim);
    if (spec.p == 0) {
      const Vector resid = subspace_residuals(data, fit.model);
      for (std::size_t i : subset.indices) {
        if (!(resid[static_cast<Eigen::Index>(i)] < spec.epsilon)) {
          ++local.flagged;
          break;
        }
      }
    }
    ++local.evaluated;
    local.offer(subspace_objective(data, fit.model, spec), mask, fit.model);
  });

  OracleSubspaceResult out;
  out.objective = best.objective;
  out.model = std::move(best.model);
  out.inliers = subspace_inliers(data, out.model, spec);
  out.subsets_evaluated = best.evaluated;
  out.infeasible_witnesses = best.flagged;
  return out;
}

}  // namespace satreg
