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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "satreg/core.hpp"

namespace satreg {

/// Relative tolerance for deciding that a lifted point lies on a hyperplane:
/// |h^T z| <= kOnPlaneTol * max(1, |z|).
inline constexpr double kOnPlaneTol = 1e-9;

enum class LiftKind { regression, subspace };

/// Classification data set built from the original points.
///
/// Regression: 2N rows in R^{d+1}; row i < N is [y_i - eps, -x_i^T] and row
/// i + N is [-y_i - eps, x_i^T]. Subspace: N rows in R^{D+1}, row i is
/// [-eps^2, nu(x_i)^T].
struct LiftedSet {
  LiftKind kind = LiftKind::regression;
  Matrix z;           // M x m, one lifted point per row
  Vector row_norms;   // |z_i|
  std::size_t original_count = 0;
  double epsilon = 0.0;

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(z.rows()); }
  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(z.cols()); }
  /// Number of points needed, together with the origin, to pin a hyperplane.
  [[nodiscard]] std::size_t seed_size() const { return dim() - 1; }
  /// Original data index of lifted row i.
  [[nodiscard]] std::size_t link(std::size_t i) const {
    return kind == LiftKind::regression && i >= original_count ? i - original_count : i;
  }
};

/// Hyperplane through the origin of the lifted space with unit normal.
struct Hyperplane {
  Vector normal;
  std::vector<std::size_t> seed;
};

/// sign0 of h^T z_i for every lifted point: -1, 0 (on the hyperplane) or +1.
struct SignVector {
  std::vector<std::int8_t> q;

  [[nodiscard]] std::size_t size() const { return q.size(); }
  /// Indices with q_i == 0, ascending.
  [[nodiscard]] std::vector<std::size_t> zeros() const;
};

[[nodiscard]] LiftedSet lift_regression(const RegressionDataset& data, const LossSpec& spec);

/// Degree-2 Veronese map: x1^2, x1x2, ..., x1xd, x2^2, x2x3, ..., xd^2.
[[nodiscard]] Vector veronese(const Vector& x);

/// 0/1 vector marking the squared monomials of veronese(), so that
/// veronese(x)^T s = |x|^2.
[[nodiscard]] Vector selection_vector(std::size_t d);

[[nodiscard]] LiftedSet lift_subspace(const PointDataset& data, const LossSpec& spec);

/// Normal [1, w^T]^T whose lifted classification reproduces I1(w).
[[nodiscard]] Vector regression_normal(const RegressionModel& model);

/// Normal [1, (s - sum_j c .* nu(b_j))^T]^T, c = 2 on cross monomials and 1 on
/// squares, whose lifted classification
/// reproduces I1(B).
[[nodiscard]] Vector subspace_normal(const SubspaceModel& model);

/// Unit normal of the hyperplane through the origin and the lifted points in
/// `seed` (exactly dim()-1 distinct indices). Returns nullopt when the seed
/// matrix is rank deficient. Orientation: the first clearly nonzero
/// coordinate is made positive; for regression sets the normal is then
/// flipped, if needed, so that h_1 >= 0.
[[nodiscard]] std::optional<Hyperplane> hyperplane_through(const LiftedSet& zset,
                                                           std::span<const std::size_t> seed);

/// sign0(h^T z_i) with the on-plane tolerance. Regression sets evaluate the
/// second half through h^T z_{i+N} = -h^T z_i - 2 eps h_1.
[[nodiscard]] SignVector classify(const LiftedSet& zset, const Vector& normal);

/// Inlier set encoded by a fully resolved sign vector. Regression:
/// {i < N : q_i = q_{i+N} = -1}. Subspace: {i : q_i = orientation}.
/// Throws std::logic_error if any sign is still zero.
[[nodiscard]] InlierSet inliers_from_signs(const SignVector& signs, LiftKind kind, int orientation = -1);

}  // namespace satreg
