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

#include "satreg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace satreg {

namespace {

// Relative singular value threshold below which a seed is rank deficient.
constexpr double kRankTol = 1e-12;
// Coordinates below this magnitude do not decide the orientation.
constexpr double kSignTol = 1e-12;

std::int8_t sign0(double v, double scale) {
  if (std::abs(v) <= kOnPlaneTol * std::max(1.0, scale)) return 0;
  return v < 0.0 ? std::int8_t{-1} : std::int8_t{1};
}

}  // namespace

std::vector<std::size_t> SignVector::zeros() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) out.push_back(i);
  }
  return out;
}

LiftedSet lift_regression(const RegressionDataset& data, const LossSpec& spec) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(data.size());
  const auto d = static_cast<Eigen::Index>(data.dim());
  LiftedSet out;
  out.kind = LiftKind::regression;
  out.original_count = data.size();
  out.epsilon = spec.epsilon;
  out.z.resize(2 * n, d + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.z(i, 0) = data.y[i] - spec.epsilon;
    out.z.row(i).tail(d) = -data.x.row(i);
    out.z(i + n, 0) = -data.y[i] - spec.epsilon;
    out.z.row(i + n).tail(d) = data.x.row(i);
  }
  out.row_norms = out.z.rowwise().norm();
  return out;
}

Vector veronese(const Vector& x) {
  const Eigen::Index d = x.size();
  Vector out(d * (d + 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) out[k++] = x[i] * x[j];
  }
  return out;
}

Vector selection_vector(std::size_t d) {
  const std::size_t dim = d * (d + 1) / 2;
  Vector s = Vector::Zero(static_cast<Eigen::Index>(dim));
  // 1-based positions: l_1 = 1, l_k = l_{k-1} + d - k + 2.
  std::size_t l = 1;
  for (std::size_t k = 1; k <= d; ++k) {
    if (k > 1) l = l + d - k + 2;
    s[static_cast<Eigen::Index>(l - 1)] = 1.0;
  }
  return s;
}

LiftedSet lift_subspace(const PointDataset& data, const LossSpec& spec) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(data.size());
  const auto big_d = static_cast<Eigen::Index>(data.lifted_dim());
  LiftedSet out;
  out.kind = LiftKind::subspace;
  out.original_count = data.size();
  out.epsilon = spec.epsilon;
  out.z.resize(n, big_d + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.z(i, 0) = -spec.epsilon * spec.epsilon;
    out.z.row(i).tail(big_d) = veronese(data.x.row(i).transpose()).transpose();
  }
  out.row_norms = out.z.rowwise().norm();
  return out;
}

Vector regression_normal(const RegressionModel& model) {
  Vector h(model.w.size() + 1);
  h[0] = 1.0;
  h.tail(model.w.size()) = model.w;
  return h;
}

Vector subspace_normal(const SubspaceModel& model) {
  const auto d = static_cast<std::size_t>(model.basis.rows());
  const Vector squares = selection_vector(d);
  // (b^T x)^2 = nu(x)^T (nu(b) with cross terms doubled).
  const Vector cross_weight = 2.0 * Vector::Ones(squares.size()) - squares;
  Vector tail = squares;
  for (Eigen::Index j = 0; j < model.basis.cols(); ++j) {
    tail -= veronese(model.basis.col(j)).cwiseProduct(cross_weight);
  }
  Vector h(tail.size() + 1);
  h[0] = 1.0;
  h.tail(tail.size()) = tail;
  return h;
}

std::optional<Hyperplane> hyperplane_through(const LiftedSet& zset, std::span<const std::size_t> seed) {
  const auto m = static_cast<Eigen::Index>(zset.dim());
  if (static_cast<Eigen::Index>(seed.size()) != m - 1) {
    throw std::invalid_argument("hyperplane seed must contain exactly dim-1 points");
  }
  Matrix rows(m - 1, m);
  for (Eigen::Index k = 0; k < m - 1; ++k) {
    const std::size_t idx = seed[static_cast<std::size_t>(k)];
    if (idx >= zset.size()) throw std::out_of_range("hyperplane seed index out of range");
    rows.row(k) = zset.z.row(static_cast<Eigen::Index>(idx));
  }

  Eigen::JacobiSVD<Matrix> svd(rows, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double largest = sv.size() > 0 ? sv[0] : 0.0;
  if (largest <= 0.0 || sv[sv.size() - 1] <= kRankTol * largest) return std::nullopt;

  Vector h = svd.matrixV().col(m - 1);
  h.normalize();
  for (Eigen::Index k = 0; k < m; ++k) {
    if (std::abs(h[k]) > kSignTol) {
      if (h[k] < 0.0) h = -h;
      break;
    }
  }
  if (zset.kind == LiftKind::regression && h[0] < 0.0) h = -h;

  Hyperplane out;
  out.normal = std::move(h);
  out.seed.assign(seed.begin(), seed.end());
  return out;
}

SignVector classify(const LiftedSet& zset, const Vector& normal) {
  if (normal.size() != zset.z.cols()) throw DimensionMismatch("normal and lifted set dimensions differ");
  SignVector out;
  out.q.resize(zset.size());
  if (zset.kind == LiftKind::regression) {
    const auto n = static_cast<Eigen::Index>(zset.original_count);
    const Vector first = zset.z.topRows(n) * normal;
    const double shift = 2.0 * zset.epsilon * normal[0];
    for (Eigen::Index i = 0; i < n; ++i) {
      out.q[static_cast<std::size_t>(i)] = sign0(first[i], zset.row_norms[i]);
      out.q[static_cast<std::size_t>(i + n)] = sign0(-first[i] - shift, zset.row_norms[i + n]);
    }
  } else {
    const Vector values = zset.z * normal;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      out.q[static_cast<std::size_t>(i)] = sign0(values[i], zset.row_norms[i]);
    }
  }
  return out;
}

InlierSet inliers_from_signs(const SignVector& signs, LiftKind kind, int orientation) {
  if (std::find(signs.q.begin(), signs.q.end(), std::int8_t{0}) != signs.q.end()) {
    throw std::logic_error("sign vector still has unresolved zero entries");
  }
  InlierSet out;
  if (kind == LiftKind::regression) {
    const std::size_t n = signs.size() / 2;
    for (std::size_t i = 0; i < n; ++i) {
      if (signs.q[i] == -1 && signs.q[i + n] == -1) out.indices.push_back(i);
    }
  } else {
    if (orientation != -1 && orientation != 1) throw std::invalid_argument("orientation must be -1 or +1");
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (signs.q[i] == orientation) out.indices.push_back(i);
    }
  }
  return out;
}

}  // namespace satreg
