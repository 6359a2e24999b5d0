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

#include "satreg/exact.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "search.hpp"
#include "satreg/subsolvers.hpp"

namespace satreg {

SolveCounters& SolveCounters::operator+=(const SolveCounters& o) {
  seeds_enumerated += o.seeds_enumerated;
  seeds_degenerate += o.seeds_degenerate;
  seeds_vertical += o.seeds_vertical;
  seeds_skipped += o.seeds_skipped;
  sign_completions += o.sign_completions;
  max_completions_per_seed = std::max(max_completions_per_seed, o.max_completions_per_seed);
  subproblems_solved += o.subproblems_solved;
  subproblems_pruned += o.subproblems_pruned;
  extra_on_plane += o.extra_on_plane;
  return *this;
}

SeedEnumerator::SeedEnumerator(std::size_t m, std::size_t k) : m_(m), k_(k), count_(binomial(m, k)) {
  if (k > m) throw InvalidInput("seed size exceeds the number of lifted points");
  current_.resize(k);
  for (std::size_t i = 0; i < k; ++i) current_[i] = i;
  done_ = count_ == 0;
}

void SeedEnumerator::seek(std::uint64_t rank) {
  if (rank >= count_) {
    done_ = true;
    return;
  }
  done_ = false;
  std::size_t c = 0;
  for (std::size_t j = 0; j < k_; ++j) {
    // Smallest c whose block of subsets (those starting with c at slot j)
    // still contains `rank`.
    while (true) {
      const std::uint64_t block = binomial(m_ - c - 1, k_ - j - 1);
      if (rank < block) break;
      rank -= block;
      ++c;
    }
    current_[j] = c++;
  }
}

void SeedEnumerator::next() {
  if (done_) return;
  std::size_t i = k_;
  while (i > 0) {
    --i;
    if (current_[i] < m_ - k_ + i) {
      ++current_[i];
      for (std::size_t j = i + 1; j < k_; ++j) current_[j] = current_[j - 1] + 1;
      return;
    }
  }
  done_ = true;
}

namespace detail {

namespace {

void merge_sorted(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, InlierSet& out) {
  out.indices.clear();
  out.indices.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.indices));
}

}  // namespace

void RegressionSearch::process(std::span<const std::size_t> seed, std::uint64_t rank, double block_threshold,
                               Candidate& best, SolveCounters& c) {
  ++c.seeds_enumerated;
  const auto hp = hyperplane_through(lift_, seed);
  if (!hp) {
    ++c.seeds_degenerate;
    return;
  }
  const Vector& h = hp->normal;
  if (h[0] <= kVerticalTol) {
    ++c.seeds_vertical;
    return;
  }

  const SignVector q = classify(lift_, h);
  const std::size_t n_pts = lift_.original_count;
  const std::vector<std::size_t> zeros = q.zeros();
  const std::size_t n_zero = zeros.size();
  if (n_zero > seed.size()) c.extra_on_plane += n_zero - seed.size();
  if (n_zero > kMaxOnPlane) {
    throw SolverFailure(std::to_string(n_zero) + " lifted points on one hyperplane; data is far from general position");
  }

  // Definite inliers, and indices whose status depends on on-plane signs.
  // req_ holds, per dependent index, the zero bits that must resolve to -1.
  base_.clear();
  cand_.clear();
  req_.clear();
  std::vector<std::uint64_t> bit_of(2 * n_pts, 0);
  for (std::size_t k = 0; k < n_zero; ++k) bit_of[zeros[k]] = std::uint64_t{1} << k;
  for (std::size_t i = 0; i < n_pts; ++i) {
    const std::int8_t a = q.q[i];
    const std::int8_t b = q.q[i + n_pts];
    if (a == 1 || b == 1) continue;
    if (a == -1 && b == -1) {
      base_.push_back(i);
    } else {
      cand_.push_back(i);
      req_.push_back(bit_of[i] | bit_of[i + n_pts]);
    }
  }

  const double sat = spec_.saturation();
  const double n_total = static_cast<double>(n_pts);
  const double threshold0 = effective_threshold(block_threshold, best, continuous_);
  if (prune_ && sat * (n_total - static_cast<double>(base_.size())) >
                    threshold0 + sat * static_cast<double>(n_zero)) {
    ++c.seeds_skipped;
    return;
  }

  const std::uint64_t patterns = std::uint64_t{1} << n_zero;
  c.max_completions_per_seed = std::max(c.max_completions_per_seed, patterns);
  const bool deferred_fit = spec_.p == 0 && n_zero == seed.size();

  Candidate trial;
  std::vector<std::size_t> chosen;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    ++c.sign_completions;
    chosen.clear();
    for (std::size_t j = 0; j < cand_.size(); ++j) {
      if ((mask & req_[j]) == 0) chosen.push_back(cand_[j]);
    }
    const double count = static_cast<double>(base_.size() + chosen.size());
    const double threshold = effective_threshold(block_threshold, best, continuous_);
    if (prune_ && sat * (n_total - count) >= threshold) {
      ++c.subproblems_pruned;
      continue;
    }
    merge_sorted(base_, chosen, trial.subset);
    trial.rank = rank;
    trial.mask = mask;
    if (deferred_fit) {
      // The on-plane signs may not be jointly realizable, so the count only
      // screens; the minimax fit gives the objective actually attained.
      trial.objective = n_total - count;
      if (continuous_ && best.has_value() && !better(trial, best)) continue;
      RegressionModel model = solve_minimax(data_, trial.subset).model;
      trial.objective = regression_objective(data_, model, spec_);
      trial.w = std::move(model.w);
      ++c.subproblems_solved;
    } else {
      RegressionModel model = solve_regression_subproblem(data_, trial.subset, spec_.p);
      trial.objective = regression_objective(data_, model, spec_);
      trial.w = std::move(model.w);
      ++c.subproblems_solved;
    }
    if (trial.objective < threshold && (!best.has_value() || better(trial, best))) best = trial;
  }
}

void SubspaceSearch::process(std::span<const std::size_t> seed, std::uint64_t rank, double block_threshold,
                             Candidate& best, SolveCounters& c) {
  ++c.seeds_enumerated;
  const auto hp = hyperplane_through(lift_, seed);
  if (!hp) {
    ++c.seeds_degenerate;
    return;
  }
  const SignVector q = classify(lift_, hp->normal);
  const std::vector<std::size_t> zeros = q.zeros();
  const std::size_t n_zero = zeros.size();
  if (n_zero > seed.size()) c.extra_on_plane += n_zero - seed.size();
  if (n_zero > kMaxOnPlane) {
    throw SolverFailure(std::to_string(n_zero) + " lifted points on one hyperplane; data is far from general position");
  }

  std::vector<std::size_t> negative;
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q.q[i] < 0) negative.push_back(i);
    if (q.q[i] > 0) positive.push_back(i);
  }

  const std::uint64_t subsets = std::uint64_t{1} << n_zero;
  c.max_completions_per_seed = std::max(c.max_completions_per_seed, 2 * subsets);
  Candidate trial;
  std::vector<std::size_t> included;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    included.clear();
    for (std::size_t k = 0; k < n_zero; ++k) {
      if (mask & (std::uint64_t{1} << k)) included.push_back(zeros[k]);
    }
    for (int side = 0; side < 2; ++side) {
      ++c.sign_completions;
      merge_sorted(side == 0 ? negative : positive, included, trial.subset);
      SubspaceFit fit = solve_subspace_p2(data_, trial.subset, data_.subspace_dim);
      ++c.subproblems_solved;
      trial.objective = subspace_objective(data_, fit.model, spec_);
      trial.rank = rank;
      trial.mask = 2 * mask + static_cast<std::uint64_t>(side);
      trial.basis = std::move(fit.model.basis);
      trial.non_unique = fit.non_unique;
      const double threshold = effective_threshold(block_threshold, best, continuous_);
      if (trial.objective < threshold && (!best.has_value() || better(trial, best))) best = trial;
    }
  }
}

void DirectHyperplaneSearch::process(std::span<const std::size_t> seed, std::uint64_t rank, double,
                                     Candidate& best, SolveCounters& c) {
  ++c.seeds_enumerated;
  const auto hp = hyperplane_through(lift_, seed);
  if (!hp) {
    ++c.seeds_degenerate;
    return;
  }
  const Vector& h = hp->normal;
  if (h[0] <= kVerticalTol) {
    ++c.seeds_vertical;
    return;
  }
  Candidate trial;
  trial.w = h.tail(h.size() - 1) / h[0];
  trial.objective = regression_objective(data_, RegressionModel{trial.w}, spec_);
  trial.rank = rank;
  trial.mask = 0;
  if (!best.has_value() || better(trial, best)) best = std::move(trial);
}

void finalize_regression(const RegressionDataset& data, const LossSpec& spec, Candidate best, SolveReport& report) {
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const double sat = spec.saturation();

  // At most d points can be fit within epsilon: any d-subset fit exactly is
  // optimal, and the enumeration above may not see it.
  if (!best.has_value() || best.objective >= sat * static_cast<double>(n - d)) {
    SeedEnumerator it(n, d);
    Candidate fallback;
    std::uint64_t r = 0;
    for (; !it.done(); it.next(), ++r) {
      InlierSet subset{it.current()};
      RegressionModel model = solve_least_squares(data, subset).model;
      const double j = regression_objective(data, model, spec);
      if (!fallback.has_value() || j < fallback.objective) {
        fallback.objective = j;
        fallback.rank = r;
        fallback.mask = 0;
        fallback.w = std::move(model.w);
        fallback.subset = std::move(subset);
      }
    }
    if (fallback.has_value() && (!best.has_value() || fallback.objective < best.objective)) {
      best = std::move(fallback);
      report.trivial_case = true;
    }
  }
  if (!best.has_value()) throw SolverFailure("no candidate model was produced");

  if (best.w.size() == 0) {
    // Deferred p = 0 fit: minimax on the winning inlier set must stay
    // strictly below epsilon.
    const MinimaxFit fit = solve_minimax(data, best.subset);
    best.w = fit.model.w;
    if (!(fit.max_error < spec.epsilon)) report.certificate_ok = false;
  }
  RegressionModel model{best.w};
  report.objective = regression_objective(data, model, spec);
  if (spec.p == 0 && report.objective != best.objective) report.certificate_ok = false;
  report.inliers = regression_inliers(data, model, spec);
  report.best_rank = best.rank;
  report.best_mask = best.mask;
  report.model = std::move(model);
}

void finalize_subspace(const PointDataset& data, const LossSpec& spec, const Candidate& best, SolveReport& report) {
  if (!best.has_value()) throw SolverFailure("no candidate subspace was produced");
  SubspaceModel model{best.basis};
  report.objective = subspace_objective(data, model, spec);
  report.inliers = subspace_inliers(data, model, spec);
  report.non_unique = best.non_unique;
  report.best_rank = best.rank;
  report.best_mask = best.mask;
  report.model = std::move(model);
}

}  // namespace detail

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

detail::DriverConfig driver_config(const ExactOptions& options) {
  detail::DriverConfig cfg;
  cfg.threads = options.threads;
  cfg.block_size = options.block_size;
  cfg.hooks = &options;
  return cfg;
}

void check_not_all_degenerate(const SolveCounters& c) {
  if (c.seeds_enumerated > 0 && c.seeds_degenerate + c.seeds_vertical == c.seeds_enumerated) {
    throw SolverFailure("no usable hyperplane: every seed subset is rank deficient or vertical");
  }
}

void check_subspace_loss(const LossSpec& spec) {
  if (spec.p == 1) {
    throw UnsupportedCase("exact subspace estimation supports p = 0 and p = 2 only (no p = 1 subproblem solver)");
  }
}

}  // namespace

SolveReport exact_regression(const RegressionDataset& data, const LossSpec& spec, const ExactOptions& options) {
  const auto t0 = Clock::now();
  data.validate();
  spec.validate();
  const LiftedSet lift = lift_regression(data, spec);
  const std::uint64_t total = binomial(lift.size(), lift.seed_size());

  detail::Candidate best;
  SolveReport report;
  const bool finished = detail::run_blocked(
      total, driver_config(options), spec.saturation() * static_cast<double>(data.size()),
      [&] { return detail::RegressionSearch(data, lift, spec, options.prune, false); },
      detail::EnumerationSource{lift.size(), lift.seed_size()}, best, report.counters);
  report.cancelled = !finished;
  check_not_all_degenerate(report.counters);
  detail::finalize_regression(data, spec, std::move(best), report);
  report.seconds = seconds_since(t0);
  return report;
}

SolveReport exact_regression_serial(const RegressionDataset& data, const LossSpec& spec, bool prune) {
  const auto t0 = Clock::now();
  data.validate();
  spec.validate();
  const LiftedSet lift = lift_regression(data, spec);
  const double initial = spec.saturation() * static_cast<double>(data.size());

  detail::RegressionSearch search(data, lift, spec, prune, true);
  detail::Candidate best;
  SolveReport report;
  std::uint64_t rank = 0;
  for (SeedEnumerator it(lift.size(), lift.seed_size()); !it.done(); it.next(), ++rank) {
    search.process(it.current(), rank, initial, best, report.counters);
  }
  check_not_all_degenerate(report.counters);
  detail::finalize_regression(data, spec, std::move(best), report);
  report.seconds = seconds_since(t0);
  return report;
}

SolveReport approx_regression_p0(const RegressionDataset& data, const LossSpec& spec, const ExactOptions& options) {
  const auto t0 = Clock::now();
  data.validate();
  spec.validate();
  if (spec.p != 0) throw UnsupportedCase("the direct hyperplane approximation is defined for p = 0 only");
  const LiftedSet lift = lift_regression(data, spec);
  const std::uint64_t total = binomial(lift.size(), lift.seed_size());

  detail::Candidate best;
  SolveReport report;
  report.approximate = true;
  const bool finished = detail::run_blocked(
      total, driver_config(options), std::numeric_limits<double>::infinity(),
      [&] { return detail::DirectHyperplaneSearch(data, lift, spec); },
      detail::EnumerationSource{lift.size(), lift.seed_size()}, best, report.counters);
  report.cancelled = !finished;
  check_not_all_degenerate(report.counters);
  if (!best.has_value()) throw SolverFailure("no hyperplane with h_1 > 0 was found");
  RegressionModel model{best.w};
  report.objective = regression_objective(data, model, spec);
  report.inliers = regression_inliers(data, model, spec);
  report.best_rank = best.rank;
  report.model = std::move(model);
  report.seconds = seconds_since(t0);
  return report;
}

SolveReport exact_subspace(const PointDataset& data, const LossSpec& spec, const ExactOptions& options) {
  const auto t0 = Clock::now();
  data.validate();
  spec.validate();
  check_subspace_loss(spec);
  const LiftedSet lift = lift_subspace(data, spec);
  const std::uint64_t total = binomial(lift.size(), lift.seed_size());

  detail::Candidate best;
  SolveReport report;
  const bool finished = detail::run_blocked(
      total, driver_config(options), spec.saturation() * static_cast<double>(data.size()),
      [&] { return detail::SubspaceSearch(data, lift, spec, false); },
      detail::EnumerationSource{lift.size(), lift.seed_size()}, best, report.counters);
  report.cancelled = !finished;
  check_not_all_degenerate(report.counters);
  detail::finalize_subspace(data, spec, best, report);
  report.seconds = seconds_since(t0);
  return report;
}

SolveReport exact_subspace_serial(const PointDataset& data, const LossSpec& spec) {
  const auto t0 = Clock::now();
  data.validate();
  spec.validate();
  check_subspace_loss(spec);
  const LiftedSet lift = lift_subspace(data, spec);
  const double initial = spec.saturation() * static_cast<double>(data.size());

  detail::SubspaceSearch search(data, lift, spec, true);
  detail::Candidate best;
  SolveReport report;
  std::uint64_t rank = 0;
  for (SeedEnumerator it(lift.size(), lift.seed_size()); !it.done(); it.next(), ++rank) {
    search.process(it.current(), rank, initial, best, report.counters);
  }
  check_not_all_degenerate(report.counters);
  detail::finalize_subspace(data, spec, best, report);
  report.seconds = seconds_since(t0);
  return report;
}

}  // namespace satreg
