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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace satreg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Error hierarchy. Everything derives from std::runtime_error or
// std::invalid_argument so callers can catch broadly.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DimensionMismatch : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct InvalidModel : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct UnsupportedCase : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Saturated loss parameters: exponent p in {0, 1, 2} and threshold epsilon > 0.
struct LossSpec {
  int p = 2;
  double epsilon = 1.0;

  /// Throws InvalidInput unless p is 0, 1 or 2 and epsilon is finite and > 0.
  void validate() const;
  /// epsilon^p, the per-point cost of an outlier.
  [[nodiscard]] double saturation() const;
};

/// Regression data: rows of `x` are the regressors x_i, `y` the targets.
struct RegressionDataset {
  Matrix x;  // N x d
  Vector y;  // N

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(x.rows()); }
  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(x.cols()); }
  /// Checks N >= d >= 1, y has N entries and everything is finite.
  void validate() const;
};

/// Raw points (rows of `x`) together with the target subspace dimension.
struct PointDataset {
  Matrix x;  // N x d
  std::size_t subspace_dim = 1;

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(x.rows()); }
  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(x.cols()); }
  /// Dimension of the degree-2 Veronese embedding, d(d+1)/2.
  [[nodiscard]] std::size_t lifted_dim() const { return dim() * (dim() + 1) / 2; }
  /// Checks 1 <= d_s < d, N >= D and finiteness.
  void validate() const;
};

struct RegressionModel {
  Vector w;
};

/// Subspace basis with orthonormal columns (d x d_s).
struct SubspaceModel {
  Matrix basis;

  /// max |B^T B - I| entry.
  [[nodiscard]] double orthonormality_error() const;
};

/// Sorted, duplicate-free, 0-based point indices. Reports and files use
/// 1-based indices; conversion happens at the I/O boundary.
struct InlierSet {
  std::vector<std::size_t> indices;

  [[nodiscard]] std::size_t size() const { return indices.size(); }
  [[nodiscard]] bool empty() const { return indices.empty(); }
  [[nodiscard]] bool contains(std::size_t i) const;
  friend bool operator==(const InlierSet&, const InlierSet&) = default;
};

/// Saturated loss: p = 0 gives 1{|e| > eps}, otherwise min(|e|, eps)^p.
[[nodiscard]] double loss(const LossSpec& spec, double e);

/// Residuals y_i - w^T x_i.
[[nodiscard]] Vector regression_residuals(const RegressionDataset& data, const RegressionModel& model);

/// { i : |y_i - w^T x_i| < eps } (strict).
[[nodiscard]] InlierSet regression_inliers(const RegressionDataset& data, const RegressionModel& model,
                                           const LossSpec& spec);

/// Sum of saturated losses of the regression residuals.
[[nodiscard]] double regression_objective(const RegressionDataset& data, const RegressionModel& model,
                                          const LossSpec& spec);

/// Same objective evaluated through the inlier split: N - |I1| for p = 0,
/// sum over I1 of |e|^p plus eps^p (N - |I1|) otherwise.
[[nodiscard]] double regression_objective_split(const RegressionDataset& data, const RegressionModel& model,
                                                const LossSpec& spec);

/// Norms of (I - B B^T) x_i. Throws InvalidModel if B is not orthonormal
/// within 1e-8.
[[nodiscard]] Vector subspace_residuals(const PointDataset& data, const SubspaceModel& model);

[[nodiscard]] InlierSet subspace_inliers(const PointDataset& data, const SubspaceModel& model,
                                         const LossSpec& spec);

[[nodiscard]] double subspace_objective(const PointDataset& data, const SubspaceModel& model,
                                        const LossSpec& spec);

[[nodiscard]] double subspace_objective_split(const PointDataset& data, const SubspaceModel& model,
                                              const LossSpec& spec);

/// Sum of losses over a residual vector.
[[nodiscard]] double objective_from_residuals(const Vector& residuals, const LossSpec& spec);

/// Strict inlier test over a residual vector.
[[nodiscard]] InlierSet inliers_from_residuals(const Vector& residuals, const LossSpec& spec);

/// C(n, k). Throws BudgetExceeded on 64-bit overflow.
[[nodiscard]] std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace satreg
