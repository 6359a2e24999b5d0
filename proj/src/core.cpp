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

#include "satreg/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace satreg {

namespace {

constexpr double kOrthonormalTol = 1e-8;

}  // namespace

void LossSpec::validate() const {
  if (p < 0 || p > 2) {
    throw InvalidInput("loss exponent p must be 0, 1 or 2, got " + std::to_string(p));
  }
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw InvalidInput("saturation threshold epsilon must be finite and > 0");
  }
}

double LossSpec::saturation() const {
  switch (p) {
    case 0: return 1.0;
    case 1: return epsilon;
    default: return epsilon * epsilon;
  }
}

void RegressionDataset::validate() const {
  if (x.cols() < 1) throw InvalidInput("regression data needs d >= 1");
  if (y.size() != x.rows()) throw DimensionMismatch("x and y have different numbers of rows");
  if (x.rows() < x.cols()) {
    throw InvalidInput("regression data needs N >= d (N=" + std::to_string(x.rows()) +
                       ", d=" + std::to_string(x.cols()) + ")");
  }
  if (!x.allFinite() || !y.allFinite()) throw InvalidInput("regression data contains non-finite values");
}

void PointDataset::validate() const {
  if (x.cols() < 2) throw InvalidInput("point data needs d >= 2");
  if (subspace_dim < 1 || subspace_dim >= dim()) {
    throw InvalidInput("subspace dimension must satisfy 1 <= d_s < d");
  }
  if (size() < lifted_dim()) {
    throw InvalidInput("point data needs N >= d(d+1)/2 (N=" + std::to_string(size()) +
                       ", D=" + std::to_string(lifted_dim()) + ")");
  }
  if (!x.allFinite()) throw InvalidInput("point data contains non-finite values");
}

double SubspaceModel::orthonormality_error() const {
  const Matrix gram = basis.transpose() * basis;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

bool InlierSet::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

double loss(const LossSpec& spec, double e) {
  const double a = std::abs(e);
  switch (spec.p) {
    case 0: return a > spec.epsilon ? 1.0 : 0.0;
    case 1: return std::min(a, spec.epsilon);
    default: {
      const double m = std::min(a, spec.epsilon);
      return m * m;
    }
  }
}

Vector regression_residuals(const RegressionDataset& data, const RegressionModel& model) {
  if (model.w.size() != data.x.cols()) throw DimensionMismatch("model and data dimensions differ");
  if (data.y.size() != data.x.rows()) throw DimensionMismatch("x and y have different numbers of rows");
  return data.y - data.x * model.w;
}

double objective_from_residuals(const Vector& residuals, const LossSpec& spec) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < residuals.size(); ++i) total += loss(spec, residuals[i]);
  return total;
}

InlierSet inliers_from_residuals(const Vector& residuals, const LossSpec& spec) {
  InlierSet out;
  for (Eigen::Index i = 0; i < residuals.size(); ++i) {
    if (std::abs(residuals[i]) < spec.epsilon) out.indices.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

namespace {

double split_objective(const Vector& residuals, const LossSpec& spec) {
  const InlierSet inl = inliers_from_residuals(residuals, spec);
  const auto outliers = static_cast<double>(residuals.size()) - static_cast<double>(inl.size());
  if (spec.p == 0) return outliers;
  double total = 0.0;
  for (std::size_t i : inl.indices) total += std::pow(std::abs(residuals[static_cast<Eigen::Index>(i)]), spec.p);
  return total + spec.saturation() * outliers;
}

}  // namespace

InlierSet regression_inliers(const RegressionDataset& data, const RegressionModel& model, const LossSpec& spec) {
  return inliers_from_residuals(regression_residuals(data, model), spec);
}

double regression_objective(const RegressionDataset& data, const RegressionModel& model, const LossSpec& spec) {
  return objective_from_residuals(regression_residuals(data, model), spec);
}

double regression_objective_split(const RegressionDataset& data, const RegressionModel& model,
                                  const LossSpec& spec) {
  return split_objective(regression_residuals(data, model), spec);
}

Vector subspace_residuals(const PointDataset& data, const SubspaceModel& model) {
  if (model.basis.rows() != data.x.cols()) throw DimensionMismatch("basis and data dimensions differ");
  if (model.orthonormality_error() > kOrthonormalTol) throw InvalidModel("subspace basis is not orthonormal");
  // Rows of x: residual r_i = x_i - B B^T x_i.
  const Matrix proj = (data.x * model.basis) * model.basis.transpose();
  return (data.x - proj).rowwise().norm();
}

InlierSet subspace_inliers(const PointDataset& data, const SubspaceModel& model, const LossSpec& spec) {
  return inliers_from_residuals(subspace_residuals(data, model), spec);
}

double subspace_objective(const PointDataset& data, const SubspaceModel& model, const LossSpec& spec) {
  return objective_from_residuals(subspace_residuals(data, model), spec);
}

double subspace_objective_split(const PointDataset& data, const SubspaceModel& model, const LossSpec& spec) {
  return split_objective(subspace_residuals(data, model), spec);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    // result * num / i is exact at every step; guard the multiplication.
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      throw BudgetExceeded("binomial coefficient overflows 64 bits");
    }
    result = result * num / i;
  }
  return result;
}

}  // namespace satreg
