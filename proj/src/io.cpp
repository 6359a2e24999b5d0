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

#include "satreg/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace satreg {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& field, std::size_t line_no) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line_no) + ": '" + field + "' is not a finite number");
  }
  return v;
}

// Rows of a headered numeric CSV as a dense matrix.
Matrix read_numeric_csv(const std::filesystem::path& path, std::size_t min_columns) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  bool header_seen = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (!header_seen) {
      header_seen = true;
      columns = fields.size();
      if (columns < min_columns) {
        throw ParseError("header has " + std::to_string(columns) + " columns, need at least " +
                         std::to_string(min_columns));
      }
      continue;
    }
    if (fields.size() != columns) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                       " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double>& row = rows.emplace_back();
    for (const auto& f : fields) row.push_back(parse_double(f, line_no));
  }
  if (in.bad()) throw IoError("read error on '" + path.string() + "'");
  if (!header_seen) throw ParseError("'" + path.string() + "' is empty (header row required)");
  if (rows.empty()) throw ParseError("'" + path.string() + "' has no data rows");

  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(columns));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < columns; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& header, const Matrix& m) {
  std::ostringstream out;
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << fmt17(m(i, j));
    out << '\n';
  }
  write_text(path, out.str());
}

ordered_json to_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ordered_json one_based(const std::vector<std::size_t>& idx) {
  ordered_json a = ordered_json::array();
  for (std::size_t i : idx) a.push_back(i + 1);
  return a;
}

}  // namespace

RegressionDataset read_regression_csv(const std::filesystem::path& path) {
  const Matrix m = read_numeric_csv(path, 2);
  RegressionDataset data;
  data.x = m.leftCols(m.cols() - 1);
  data.y = m.col(m.cols() - 1);
  return data;
}

PointDataset read_points_csv(const std::filesystem::path& path, std::size_t subspace_dim) {
  PointDataset data;
  data.x = read_numeric_csv(path, 1);
  data.subspace_dim = subspace_dim;
  return data;
}

void write_regression_csv(const std::filesystem::path& path, const RegressionDataset& data) {
  std::vector<std::string> header;
  for (std::size_t k = 1; k <= data.dim(); ++k) header.push_back("x" + std::to_string(k));
  header.emplace_back("y");
  Matrix m(data.x.rows(), data.x.cols() + 1);
  m << data.x, data.y;
  write_matrix_csv(path, header, m);
}

void write_points_csv(const std::filesystem::path& path, const PointDataset& data) {
  std::vector<std::string> header;
  for (Eigen::Index k = 1; k <= data.x.cols(); ++k) header.push_back("x" + std::to_string(k));
  write_matrix_csv(path, header, data.x);
}

std::string report_json(const SolveReport& report, const ReportContext& ctx) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["problem"] = ctx.problem;
  j["method"] = ctx.method;
  j["input"] = ctx.input;
  j["p"] = ctx.spec.p;
  j["epsilon"] = ctx.spec.epsilon;
  if (ctx.method != "exact") {
    j["iters"] = ctx.iters;
    j["rng_seed"] = ctx.rng_seed;
  }
  j["objective"] = report.objective;
  if (const auto* reg = std::get_if<RegressionModel>(&report.model)) {
    j["w"] = to_json(reg->w);
  } else {
    const Matrix& b = report.subspace().basis;
    ordered_json cols = ordered_json::array();
    for (Eigen::Index c = 0; c < b.cols(); ++c) cols.push_back(to_json(b.col(c)));
    j["basis_columns"] = cols;
  }
  j["inliers"] = one_based(report.inliers.indices);
  j["inlier_count"] = report.inliers.size();
  j["approximate"] = report.approximate;
  j["trivial_case"] = report.trivial_case;
  j["certificate_ok"] = report.certificate_ok;
  j["non_unique"] = report.non_unique;
  if (ctx.method == "ransac") j["consensus"] = report.consensus;
  const SolveCounters& c = report.counters;
  j["counters"] = {{"seeds_enumerated", c.seeds_enumerated},
                   {"seeds_degenerate", c.seeds_degenerate},
                   {"seeds_vertical", c.seeds_vertical},
                   {"seeds_skipped", c.seeds_skipped},
                   {"sign_completions", c.sign_completions},
                   {"max_completions_per_seed", c.max_completions_per_seed},
                   {"subproblems_solved", c.subproblems_solved},
                   {"subproblems_pruned", c.subproblems_pruned},
                   {"extra_on_plane", c.extra_on_plane}};
  j["best_rank"] = report.best_rank;
  j["best_mask"] = report.best_mask;
  if (ctx.include_timing) j["seconds"] = report.seconds;
  return j.dump(2) + "\n";
}

std::string generator_sidecar_json(const GeneratedRegression& gen, const GeneratorConfig& cfg) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["N"] = cfg.n;
  j["d"] = cfg.d;
  j["r"] = cfg.outlier_fraction;
  j["rng_seed"] = cfg.rng_seed;
  j["noise_std"] = cfg.noise_std;
  j["w0"] = to_json(gen.w0);
  j["outliers"] = one_based(gen.outliers);
  return j.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed on '" + path.string() + "'");
}

}  // namespace satreg
