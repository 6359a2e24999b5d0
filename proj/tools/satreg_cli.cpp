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

// satreg: saturated-loss robust regression and subspace estimation.
//
//   satreg regress  --method exact|sampled|ransac --p P --epsilon E data.csv
//   satreg subspace --method exact|sampled --ds K --p P --epsilon E points.csv
//   satreg bench    [--fig1] [--methods sampled,ransac] [--r 0.1,...] ...
//   satreg gen      --N 100 --d 3 --r 0.4 --rng-seed 2 --output data.csv
//
// Exit codes: 0 ok, 2 usage, 3 I/O, 4 solver failure, 5 budget refusal,
// 6 malformed CSV, 7 dataset unusable (N < d, non-finite values).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "satreg/exact.hpp"
#include "satreg/experiments.hpp"
#include "satreg/io.hpp"
#include "satreg/sampling.hpp"

namespace {

using namespace satreg;

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kSolver = 4,
  kBudget = 5,
  kParse = 6,
  kBadData = 7,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int env_threads() {
  if (const char* v = std::getenv("SATREG_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return 0;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    write_text(output, text);
  }
}

struct SolveFlags {
  std::string method = "exact";
  int p = 2;
  double epsilon = 0.0;
  std::uint64_t iters = 1000;
  std::uint64_t rng_seed = 0;
  std::size_t ransac_s = 0;
  std::size_t ds = 0;
  int threads = -1;
  bool no_prune = false;
  bool enumerate_if_covering = false;
  bool no_timing = false;
  bool progress = false;
  std::string output;
  std::string input;
};

int resolved_threads(const SolveFlags& f) { return f.threads >= 0 ? f.threads : env_threads(); }

void add_solve_flags(CLI::App* cmd, SolveFlags& f, bool subspace) {
  cmd->add_option("--method", f.method, "Solver")
      ->check(subspace ? CLI::IsMember({"exact", "sampled"}) : CLI::IsMember({"exact", "sampled", "ransac"}));
  cmd->add_option("--p", f.p, "Loss exponent")->check(CLI::IsMember({0, 1, 2}));
  cmd->add_option("--epsilon", f.epsilon, "Inlier threshold")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--iters", f.iters, "Iterations of the sampled solvers")->check(CLI::PositiveNumber);
  cmd->add_option("--rng-seed", f.rng_seed, "Seed of the sampled solvers");
  if (!subspace) cmd->add_option("--ransac-s", f.ransac_s, "RANSAC sample size (default 2d)");
  if (subspace) cmd->add_option("--ds", f.ds, "Subspace dimension")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--threads", f.threads, "Worker threads (default SATREG_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  if (!subspace) cmd->add_flag("--no-prune", f.no_prune, "Disable count-bound pruning");
  cmd->add_flag("--enumerate-if-covering", f.enumerate_if_covering,
                "Sampled: enumerate all seeds when iters covers them");
  cmd->add_flag("--no-timing", f.no_timing, "Omit wall time from the report");
  cmd->add_flag("--progress", f.progress, "Exact: progress on stderr");
  cmd->add_option("--output,-o", f.output, "Report path (default stdout)");
  cmd->add_option("input", f.input, "Dataset CSV")->required();
}

SamplingConfig sampling_of(const SolveFlags& f) {
  SamplingConfig sc;
  sc.n_iters = f.iters;
  sc.rng_seed = f.rng_seed;
  sc.ransac_subset = f.ransac_s;
  sc.enumerate_if_covering = f.enumerate_if_covering;
  sc.prune = !f.no_prune;
  sc.threads = resolved_threads(f);
  return sc;
}

ExactOptions exact_of(const SolveFlags& f) {
  ExactOptions opts;
  opts.threads = resolved_threads(f);
  opts.prune = !f.no_prune;
  if (f.progress) {
    opts.progress = [](std::uint64_t done, std::uint64_t total, double best) {
      std::fprintf(stderr, "\rseeds %llu/%llu  J* %.9g", static_cast<unsigned long long>(done),
                   static_cast<unsigned long long>(total), best);
      if (done == total) std::fputc('\n', stderr);
    };
  }
  return opts;
}

ReportContext context_of(const SolveFlags& f, const char* problem) {
  ReportContext ctx;
  ctx.problem = problem;
  ctx.method = f.method;
  ctx.spec = LossSpec{f.p, f.epsilon};
  ctx.input = f.input;
  ctx.rng_seed = f.rng_seed;
  ctx.iters = f.method == "exact" ? 0 : f.iters;
  ctx.include_timing = !f.no_timing;
  return ctx;
}

int cmd_regress(const SolveFlags& f) {
  if (f.method != "ransac" && f.ransac_s != 0) throw UsageError("--ransac-s applies to --method ransac only");
  const RegressionDataset data = read_regression_csv(f.input);
  try {
    data.validate();
  } catch (const InvalidInput& e) {
    throw BadData(e.what());
  }
  const LossSpec spec{f.p, f.epsilon};
  SolveReport report;
  if (f.method == "exact") {
    report = exact_regression(data, spec, exact_of(f));
  } else if (f.method == "sampled") {
    report = sampled_regression(data, spec, sampling_of(f));
  } else {
    report = ransac_regression(data, spec, sampling_of(f));
  }
  emit(report_json(report, context_of(f, "regression")), f.output);
  return kOk;
}

int cmd_subspace(const SolveFlags& f) {
  if (f.p == 1) throw UsageError("subspace estimation supports --p 0 and --p 2 only (no p = 1 subproblem solver)");
  const PointDataset data = read_points_csv(f.input, f.ds);
  if (f.ds >= static_cast<std::size_t>(data.x.cols())) {
    throw UsageError("--ds must be smaller than the point dimension " + std::to_string(data.x.cols()));
  }
  try {
    data.validate();
  } catch (const InvalidInput& e) {
    throw BadData(e.what());
  }
  const LossSpec spec{f.p, f.epsilon};
  SolveReport report;
  if (f.method == "exact") {
    report = exact_subspace(data, spec, exact_of(f));
  } else {
    report = sampled_subspace(data, spec, sampling_of(f));
  }
  emit(report_json(report, context_of(f, "subspace")), f.output);
  return kOk;
}

struct BenchFlags {
  bool fig1 = false;
  std::vector<std::string> methods{"sampled", "ransac"};
  std::vector<double> r{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  std::size_t trials = 10;
  std::size_t n = 200;
  std::size_t d = 3;
  std::uint64_t iters = 1000;
  std::size_t ransac_s = 0;
  int p = 2;
  double epsilon = 3.0 * std::sqrt(0.1);
  double noise_std = std::sqrt(0.1);
  std::uint64_t rng_seed = 1;
  std::uint64_t budget = 20'000'000;
  int threads = -1;
  bool no_timing = false;
  std::string output;
  std::string summary;
};

int cmd_bench(const BenchFlags& f, const CLI::App& cmd) {
  SweepConfig cfg;
  cfg.methods = f.methods;
  cfg.r_values = f.r;
  cfg.trials = f.trials;
  cfg.base.n = f.n;
  cfg.base.d = f.d;
  cfg.base.noise_std = f.noise_std;
  cfg.spec = LossSpec{f.p, f.epsilon};
  cfg.sampling.n_iters = f.iters;
  cfg.sampling.ransac_subset = f.ransac_s;
  cfg.master_seed = f.rng_seed;
  cfg.exact_budget = f.budget;
  cfg.threads = f.threads >= 0 ? f.threads : env_threads();
  if (f.fig1) {
    // Preset values yield to flags given explicitly.
    if (cmd.count("--d") == 0) cfg.base.d = 4;
    if (cmd.count("--trials") == 0) cfg.trials = 100;
    if (cmd.count("--iters") == 0) cfg.sampling.n_iters = 3000;
    if (cmd.count("--ransac-s") == 0) cfg.sampling.ransac_subset = 2 * cfg.base.d;
  }
  try {
    cfg.spec.validate();
    cfg.base.validate();
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }

  std::vector<BenchRow> rows = run_sweep(cfg);
  if (f.no_timing) {
    for (auto& row : rows) row.seconds = 0.0;
  }
  std::ostringstream csv;
  write_bench_csv(csv, rows);
  emit(csv.str(), f.output);
  if (!f.summary.empty()) {
    std::ostringstream s;
    write_summary_csv(s, summarize(rows));
    write_text(f.summary, s.str());
  }
  return kOk;
}

struct GenFlags {
  std::size_t n = 100;
  std::size_t d = 3;
  double r = 0.0;
  std::uint64_t rng_seed = 0;
  double noise_std = std::sqrt(0.1);
  std::string output;
  std::string sidecar;
};

int cmd_gen(const GenFlags& f) {
  GeneratorConfig cfg;
  cfg.n = f.n;
  cfg.d = f.d;
  cfg.outlier_fraction = f.r;
  cfg.rng_seed = f.rng_seed;
  cfg.noise_std = f.noise_std;
  try {
    cfg.validate();
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  const GeneratedRegression gen = generate_regression(cfg);
  const std::filesystem::path csv = f.output;
  const std::filesystem::path sidecar =
      f.sidecar.empty() ? std::filesystem::path(csv).replace_extension(".json") : std::filesystem::path(f.sidecar);
  if (sidecar == csv) throw UsageError("sidecar path collides with the dataset path");
  write_regression_csv(csv, gen.data);
  write_text(sidecar, generator_sidecar_json(gen, cfg));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturated-loss robust regression and subspace estimation"};
  app.require_subcommand(1);

  SolveFlags regress_flags;
  CLI::App* regress = app.add_subcommand("regress", "Robust linear regression");
  add_solve_flags(regress, regress_flags, false);

  SolveFlags subspace_flags;
  CLI::App* subspace = app.add_subcommand("subspace", "Robust subspace estimation");
  add_solve_flags(subspace, subspace_flags, true);

  BenchFlags bench_flags;
  CLI::App* bench = app.add_subcommand("bench", "Synthetic outlier sweep, CSV output");
  bench->add_flag("--fig1", bench_flags.fig1, "Preset: d=4, 100 trials, 3000 iterations, s=2d");
  bench->add_option("--methods", bench_flags.methods, "exact, sampled, ransac")
      ->delimiter(',')
      ->check(CLI::IsMember({"exact", "sampled", "ransac"}));
  bench->add_option("--r", bench_flags.r, "Outlier fractions")->delimiter(',')->check(CLI::Range(0.0, 0.999999));
  bench->add_option("--trials", bench_flags.trials)->check(CLI::PositiveNumber);
  bench->add_option("--N", bench_flags.n, "Points per dataset")->check(CLI::PositiveNumber);
  bench->add_option("--d", bench_flags.d, "Dimension")->check(CLI::PositiveNumber);
  bench->add_option("--iters", bench_flags.iters)->check(CLI::PositiveNumber);
  bench->add_option("--ransac-s", bench_flags.ransac_s);
  bench->add_option("--p", bench_flags.p)->check(CLI::IsMember({0, 1, 2}));
  bench->add_option("--epsilon", bench_flags.epsilon)->check(CLI::PositiveNumber);
  bench->add_option("--noise-std", bench_flags.noise_std)->check(CLI::NonNegativeNumber);
  bench->add_option("--rng-seed", bench_flags.rng_seed);
  bench->add_option("--budget", bench_flags.budget, "Largest C(2N, d) allowed for exact");
  bench->add_option("--threads", bench_flags.threads)->check(CLI::PositiveNumber);
  bench->add_flag("--no-timing", bench_flags.no_timing, "Write 0 in the seconds column");
  bench->add_option("--output,-o", bench_flags.output, "CSV path (default stdout)");
  bench->add_option("--summary", bench_flags.summary, "Per-(method, r) mean/std CSV path");

  GenFlags gen_flags;
  CLI::App* gen = app.add_subcommand("gen", "Write a synthetic regression dataset");
  gen->add_option("--N", gen_flags.n)->check(CLI::PositiveNumber);
  gen->add_option("--d", gen_flags.d)->check(CLI::PositiveNumber);
  gen->add_option("--r", gen_flags.r, "Outlier fraction")->check(CLI::Range(0.0, 0.999999));
  gen->add_option("--rng-seed", gen_flags.rng_seed);
  gen->add_option("--noise-std", gen_flags.noise_std)->check(CLI::NonNegativeNumber);
  gen->add_option("--output,-o", gen_flags.output, "Dataset CSV path")->required();
  gen->add_option("--sidecar", gen_flags.sidecar, "Sidecar JSON path (default: output with .json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return kUsage;
  }

  try {
    if (regress->parsed()) return cmd_regress(regress_flags);
    if (subspace->parsed()) return cmd_subspace(subspace_flags);
    if (bench->parsed()) return cmd_bench(bench_flags, *bench);
    return cmd_gen(gen_flags);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedCase& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const satreg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const BadData& e) {
    std::cerr << "invalid dataset: " << e.what() << "\n";
    return kBadData;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return kBudget;
  } catch (const InvalidInput& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolver;
  }
}
