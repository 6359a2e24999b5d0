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

#include "satreg/sampling.hpp"

#include <chrono>

#include "search.hpp"
#include "satreg/rng.hpp"
#include "satreg/subsolvers.hpp"

namespace satreg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_config(const SamplingConfig& cfg) {
  if (cfg.n_iters < 1) throw InvalidInput("sampling needs at least one iteration");
}

// Seed of iteration r: k distinct lifted indices from that iteration's stream.
struct RandomSource {
  std::uint64_t master;
  std::size_t m;
  std::size_t k;

  template <class Fn>
  void operator()(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    for (std::uint64_t r = begin; r < end; ++r) {
      Rng rng(master, r);
      const std::vector<std::size_t> seed = rng.sample_without_replacement(m, k);
      fn(r, std::span<const std::size_t>(seed));
    }
  }
};

detail::DriverConfig driver_config(const SamplingConfig& cfg) {
  detail::DriverConfig out;
  out.threads = cfg.threads;
  out.block_size = cfg.block_size;
  out.chunk = 8;
  return out;
}

}  // namespace

SolveReport sampled_regression(const RegressionDataset& data, const LossSpec& spec, const SamplingConfig& cfg) {
  const auto t0 = Clock::now();
  data.validate();
  spec.validate();
  check_config(cfg);
  const LiftedSet lift = lift_regression(data, spec);

  if (cfg.enumerate_if_covering && cfg.n_iters >= binomial(lift.size(), lift.seed_size())) {
    ExactOptions opts;
    opts.threads = cfg.threads;
    opts.prune = cfg.prune;
    return exact_regression(data, spec, opts);
  }

  detail::Candidate best;
  SolveReport report;
  report.approximate = true;
  (void)detail::run_blocked(
      cfg.n_iters, driver_config(cfg), spec.saturation() * static_cast<double>(data.size()),
      [&] { return detail::RegressionSearch(data, lift, spec, cfg.prune, false); },
      RandomSource{cfg.rng_seed, lift.size(), lift.seed_size()}, best, report.counters);

  if (!best.has_value()) {
    // Nothing beat the all-outlier bound; fall back to plain least squares.
    InlierSet all;
    for (std::size_t i = 0; i < data.size(); ++i) all.indices.push_back(i);
    best.w = solve_least_squares(data, all).model.w;
    best.subset = std::move(all);
    best.rank = cfg.n_iters;
    best.mask = 0;
  }
  if (best.w.size() == 0) {
    const MinimaxFit fit = solve_minimax(data, best.subset);
    best.w = fit.model.w;
    if (!(fit.max_error < spec.epsilon)) report.certificate_ok = false;
  }
  RegressionModel model{best.w};
  report.objective = regression_objective(data, model, spec);
  if (spec.p == 0 && best.objective < report.objective) report.certificate_ok = false;
  report.inliers = regression_inliers(data, model, spec);
  report.best_rank = best.rank;
  report.best_mask = best.mask;
  report.model = std::move(model);
  report.seconds = seconds_since(t0);
  return report;
}

SolveReport sampled_subspace(const PointDataset& data, const LossSpec& spec, const SamplingConfig& cfg) {
  const auto t0 = Clock::now();
  data.validate();
  spec.validate();
  check_config(cfg);
  if (spec.p == 1) {
    throw UnsupportedCase("subspace estimation supports p = 0 and p = 2 only (no p = 1 subproblem solver)");
  }
  const LiftedSet lift = lift_subspace(data, spec);

  if (cfg.enumerate_if_covering && cfg.n_iters >= binomial(lift.size(), lift.seed_size())) {
    ExactOptions opts;
    opts.threads = cfg.threads;
    return exact_subspace(data, spec, opts);
  }

  detail::Candidate best;
  SolveReport report;
  report.approximate = true;
  (void)detail::run_blocked(
      cfg.n_iters, driver_config(cfg), spec.saturation() * static_cast<double>(data.size()),
      [&] { return detail::SubspaceSearch(data, lift, spec, false); },
      RandomSource{cfg.rng_seed, lift.size(), lift.seed_size()}, best, report.counters);

  if (!best.has_value()) {
    InlierSet all;
    for (std::size_t i = 0; i < data.size(); ++i) all.indices.push_back(i);
    SubspaceFit fit = solve_subspace_p2(data, all, data.subspace_dim);
    best.basis = std::move(fit.model.basis);
    best.non_unique = fit.non_unique;
    best.rank = cfg.n_iters;
    best.mask = 0;
  }
  detail::finalize_subspace(data, spec, best, report);
  report.seconds = seconds_since(t0);
  return report;
}

SolveReport ransac_regression(const RegressionDataset& data, const LossSpec& spec, const SamplingConfig& cfg) {
  const auto t0 = Clock::now();
  data.validate();
  spec.validate();
  check_config(cfg);
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const std::size_t s = cfg.ransac_subset == 0 ? std::min(2 * d, n) : cfg.ransac_subset;
  if (s < d) throw InvalidInput("RANSAC sample size must be at least d");
  if (s > n) throw InvalidInput("RANSAC sample size exceeds the number of points");

  struct Best {
    std::size_t count = 0;
    std::uint64_t iter = std::numeric_limits<std::uint64_t>::max();
    Vector w;
  };
  const auto beats = [](std::size_t count, std::uint64_t iter, const Best& b) {
    return count > b.count || (count == b.count && iter < b.iter);
  };

  const int nthreads = detail::resolve_threads(cfg.threads);
  std::vector<Best> locals(static_cast<std::size_t>(nthreads));
  const auto iters = static_cast<std::int64_t>(cfg.n_iters);
#pragma omp parallel num_threads(nthreads)
  {
    Best& local = locals[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < iters; ++t) {
      Rng rng(cfg.rng_seed, static_cast<std::uint64_t>(t));
      InlierSet sample{rng.sample_without_replacement(n, s)};
      const RegressionModel model = solve_least_squares(data, sample).model;
      const std::size_t count = regression_inliers(data, model, spec).size();
      if (beats(count, static_cast<std::uint64_t>(t), local)) {
        local.count = count;
        local.iter = static_cast<std::uint64_t>(t);
        local.w = model.w;
      }
    }
  }
  Best best;
  for (const Best& b : locals) {
    if (b.w.size() > 0 && beats(b.count, b.iter, best)) best = b;
  }

  SolveReport report;
  report.approximate = true;
  report.counters.seeds_enumerated = cfg.n_iters;
  report.counters.subproblems_solved = cfg.n_iters + 1;
  report.consensus = best.count;
  report.best_rank = best.iter;

  const InlierSet consensus = regression_inliers(data, RegressionModel{best.w}, spec);
  RegressionModel refit =
      consensus.size() >= d ? solve_regression_subproblem(data, consensus, spec.p) : RegressionModel{best.w};
  report.objective = regression_objective(data, refit, spec);
  report.inliers = regression_inliers(data, refit, spec);
  report.model = std::move(refit);
  report.seconds = seconds_since(t0);
  return report;
}

}  // namespace satreg
