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

#include <filesystem>
#include <stdexcept>
#include <string>

#include "satreg/core.hpp"
#include "satreg/exact.hpp"
#include "satreg/experiments.hpp"

namespace satreg {

inline constexpr int kReportSchemaVersion = 1;

/// File cannot be opened or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File opened but its content is not a valid dataset.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Header row plus numeric rows `x1,...,xd,y`.
[[nodiscard]] RegressionDataset read_regression_csv(const std::filesystem::path& path);
/// Header row plus numeric rows `x1,...,xd`.
[[nodiscard]] PointDataset read_points_csv(const std::filesystem::path& path, std::size_t subspace_dim);

void write_regression_csv(const std::filesystem::path& path, const RegressionDataset& data);
void write_points_csv(const std::filesystem::path& path, const PointDataset& data);

struct ReportContext {
  std::string problem;  // "regression" or "subspace"
  std::string method;
  LossSpec spec;
  std::string input;
  std::uint64_t rng_seed = 0;
  std::size_t iters = 0;
  bool include_timing = true;
};

/// JSON report with 1-based inlier indices.
[[nodiscard]] std::string report_json(const SolveReport& report, const ReportContext& ctx);

/// Sidecar of a generated dataset: w0 and 1-based outlier indices.
[[nodiscard]] std::string generator_sidecar_json(const GeneratedRegression& gen, const GeneratorConfig& cfg);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace satreg
