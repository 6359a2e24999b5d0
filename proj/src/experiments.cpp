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

#include "satreg/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <exception>
#include <map>
#include <tuple>

#include "satreg/exact.hpp"
#include "satreg/rng.hpp"

namespace satreg {

namespace {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void GeneratorConfig::validate() const {
  if (d < 1 || n < d) throw InvalidInput("generator needs N >= d >= 1");
  if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0)) {
    throw InvalidInput("outlier fraction must lie in [0, 1)");
  }
  if (w0 && static_cast<std::size_t>(w0->size()) != d) throw DimensionMismatch("w0 length differs from d");
  if (noise_std < 0.0 || outlier_std < 0.0 || x_half_width <= 0.0) {
    throw InvalidInput("generator scales must be nonnegative");
  }
}

GeneratedRegression generate_regression(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.rng_seed);
  const auto n = static_cast<Eigen::Index>(cfg.n);
  const auto d = static_cast<Eigen::Index>(cfg.d);

  GeneratedRegression out;
  if (cfg.w0) {
    out.w0 = *cfg.w0;
  } else {
    out.w0.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) out.w0[k] = rng.uniform(-5.0, 5.0);
  }
  out.data.x.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) out.data.x(i, k) = rng.uniform(-cfg.x_half_width, cfg.x_half_width);
  }
  out.data.y = out.data.x * out.w0;
  if (cfg.noise_std > 0.0) {
    for (Eigen::Index i = 0; i < n; ++i) out.data.y[i] += rng.normal(0.0, cfg.noise_std);
  }
  const auto n_out = static_cast<std::size_t>(std::llround(cfg.outlier_fraction * static_cast<double>(cfg.n)));
  out.outliers = rng.sample_without_replacement(cfg.n, n_out);
  for (std::size_t i : out.outliers) {
    out.data.y[static_cast<Eigen::Index>(i)] += rng.normal(cfg.outlier_mean, cfg.outlier_std);
  }
  return out;
}

GeneratedSubspace generate_subspace(const SubspaceGeneratorConfig& cfg) {
  if (cfg.subspace_dim < 1 || cfg.subspace_dim >= cfg.d) throw InvalidInput("need 1 <= d_s < d");
  if (!(cfg.outlier_fraction >= 0.0 && cfg.outlier_fraction < 1.0)) {
    throw InvalidInput("outlier fraction must lie in [0, 1)");
  }
  Rng rng(cfg.rng_seed);
  const auto n = static_cast<Eigen::Index>(cfg.n);
  const auto d = static_cast<Eigen::Index>(cfg.d);
  const auto ds = static_cast<Eigen::Index>(cfg.subspace_dim);

  Matrix g(d, ds);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < ds; ++j) g(i, j) = rng.normal(0.0, 1.0);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  GeneratedSubspace out;
  out.truth.basis = qr.householderQ() * Matrix::Identity(d, ds);

  out.data.subspace_dim = cfg.subspace_dim;
  out.data.x.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector c(ds);
    for (Eigen::Index j = 0; j < ds; ++j) c[j] = rng.uniform(-cfg.half_width, cfg.half_width);
    Vector p = out.truth.basis * c;
    for (Eigen::Index k = 0; k < d; ++k) p[k] += cfg.noise_std > 0.0 ? rng.normal(0.0, cfg.noise_std) : 0.0;
    out.data.x.row(i) = p.transpose();
  }
  const auto n_out = static_cast<std::size_t>(std::llround(cfg.outlier_fraction * static_cast<double>(cfg.n)));
  out.outliers = rng.sample_without_replacement(cfg.n, n_out);
  for (std::size_t i : out.outliers) {
    for (Eigen::Index k = 0; k < d; ++k) {
      out.data.x(static_cast<Eigen::Index>(i), k) = rng.uniform(-cfg.half_width, cfg.half_width);
    }
  }
  return out;
}

double relative_error(const Vector& w0, const Vector& w) {
  if (w0.size() != w.size()) throw DimensionMismatch("parameter vectors differ in length");
  const double scale = w0.norm();
  return scale > 0.0 ? (w0 - w).norm() / scale : (w0 - w).norm();
}

void SweepConfig::validate() const {
  if (methods.empty()) throw InvalidInput("sweep needs at least one method");
  for (const auto& m : methods) {
    if (m != "exact" && m != "sampled" && m != "ransac") throw InvalidInput("unknown method '" + m + "'");
  }
  if (r_values.empty()) throw InvalidInput("sweep needs at least one outlier fraction");
  for (double r : r_values) {
    if (!(r >= 0.0 && r < 1.0)) throw InvalidInput("outlier fractions must lie in [0, 1)");
  }
  if (trials < 1) throw InvalidInput("sweep needs at least one trial");
  spec.validate();
  if (std::find(methods.begin(), methods.end(), "exact") != methods.end()) {
    std::uint64_t seeds = 0;
    try {
      seeds = binomial(2 * base.n, base.d);
    } catch (const BudgetExceeded&) {
      seeds = std::numeric_limits<std::uint64_t>::max();
    }
    if (seeds > exact_budget) {
      throw BudgetExceeded("exact method would enumerate C(" + std::to_string(2 * base.n) + ", " +
                           std::to_string(base.d) + ") seeds per trial, above the budget of " +
                           std::to_string(exact_budget));
    }
  }
}

std::vector<BenchRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  struct Task {
    std::size_t r_index;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (std::size_t ri = 0; ri < cfg.r_values.size(); ++ri) {
    for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({ri, t});
  }

  const int nthreads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
  std::vector<std::vector<BenchRow>> per_task(tasks.size());
  std::exception_ptr failure;
#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 1)
  for (std::int64_t ti = 0; ti < static_cast<std::int64_t>(tasks.size()); ++ti) {
    try {
      const Task& task = tasks[static_cast<std::size_t>(ti)];
      const double r = cfg.r_values[task.r_index];
      const std::uint64_t dataset_seed = derive_seed(derive_seed(cfg.master_seed, task.r_index), task.trial);

      GeneratorConfig gen = cfg.base;
      gen.w0.reset();
      gen.outlier_fraction = r;
      gen.rng_seed = dataset_seed;
      const GeneratedRegression g = generate_regression(gen);

      for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        const std::string& method = cfg.methods[mi];
        SamplingConfig sc = cfg.sampling;
        sc.rng_seed = derive_seed(dataset_seed, mi + 1);
        sc.threads = 1;
        SolveReport rep;
        if (method == "exact") {
          ExactOptions opts;
          opts.threads = 1;
          rep = exact_regression(g.data, cfg.spec, opts);
        } else if (method == "sampled") {
          rep = sampled_regression(g.data, cfg.spec, sc);
        } else {
          rep = ransac_regression(g.data, cfg.spec, sc);
        }
        per_task[static_cast<std::size_t>(ti)].push_back(
            {method, r, task.trial, relative_error(g.w0, rep.regression().w), rep.objective, rep.seconds});
      }
    } catch (...) {
#pragma omp critical(satreg_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BenchRow> rows;
  for (auto& v : per_task) {
    for (auto& row : v) rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.method, a.r, a.trial) < std::tie(b.method, b.r, b.trial);
  });
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRow>& rows) {
  if (rows.empty()) throw InvalidInput("cannot summarize an empty sweep");
  std::map<std::pair<std::string, double>, std::vector<const BenchRow*>> groups;
  for (const auto& row : rows) groups[{row.method, row.r}].push_back(&row);

  const auto mean_std = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    return std::pair{mean, sd};
  };

  std::vector<SummaryRow> out;
  for (const auto& [key, members] : groups) {
    std::vector<double> errors;
    std::vector<double> times;
    for (const BenchRow* row : members) {
      errors.push_back(row->error);
      times.push_back(row->seconds);
    }
    SummaryRow s;
    s.method = key.first;
    s.r = key.second;
    s.count = members.size();
    std::tie(s.mean_error, s.std_error) = mean_std(errors);
    std::tie(s.mean_seconds, s.std_seconds) = mean_std(times);
    out.push_back(std::move(s));
  }
  return out;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "method,r,trial,error,objective,seconds\n";
  for (const auto& row : rows) {
    out << row.method << ',' << fmt9(row.r) << ',' << row.trial << ',' << fmt9(row.error) << ','
        << fmt9(row.objective) << ',' << fmt9(row.seconds) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "method,r,trials,mean_error,std_error,mean_seconds,std_seconds\n";
  for (const auto& row : rows) {
    out << row.method << ',' << fmt9(row.r) << ',' << row.count << ',' << fmt9(row.mean_error) << ','
        << fmt9(row.std_error) << ',' << fmt9(row.mean_seconds) << ',' << fmt9(row.std_seconds) << '\n';
  }
}

}  // namespace satreg
