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

#include "satreg/subsolvers.hpp"

#include <algorithm>
#include <cmath>

namespace satreg {

namespace {

void gather(const RegressionDataset& data, const InlierSet& subset, Matrix& a, Vector& b) {
  const auto k = static_cast<Eigen::Index>(subset.size());
  a.resize(k, data.x.cols());
  b.resize(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const auto i = static_cast<Eigen::Index>(subset.indices[static_cast<std::size_t>(r)]);
    if (i >= data.x.rows()) throw std::out_of_range("subset index out of range");
    a.row(r) = data.x.row(i);
    b[r] = data.y[i];
  }
}

void normalize_column_signs(Matrix& basis) {
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
      if (std::abs(basis(i, j)) > 1e-12) {
        if (basis(i, j) < 0.0) basis.col(j) *= -1.0;
        break;
      }
    }
  }
}

}  // namespace

LeastSquaresFit solve_least_squares(const RegressionDataset& data, const InlierSet& subset) {
  Matrix a;
  Vector b;
  gather(data, subset, a, b);
  LeastSquaresFit fit;
  if (a.rows() == 0) {
    fit.model.w = Vector::Zero(data.x.cols());
    fit.rank_deficient = true;
    return fit;
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  fit.model.w = cod.solve(b);
  fit.rank_deficient = cod.rank() < a.cols();
  return fit;
}

LadFit solve_lad(const RegressionDataset& data, const InlierSet& subset) {
  Matrix a;
  Vector b;
  gather(data, subset, a, b);
  const Eigen::Index k = a.rows();
  const Eigen::Index d = a.cols();
  LadFit fit;
  if (k == 0) {
    fit.model.w = Vector::Zero(d);
    return fit;
  }
  // Variables [w (free), t_1..t_k >= 0]; min sum t s.t. -t <= b - A w <= t.
  DenseLP lp;
  lp.cost = Vector::Zero(d + k);
  lp.cost.tail(k).setOnes();
  lp.constraints = Matrix::Zero(2 * k, d + k);
  lp.rhs.resize(2 * k);
  for (Eigen::Index r = 0; r < k; ++r) {
    lp.constraints.row(r).head(d) = a.row(r);
    lp.constraints(r, d + r) = -1.0;
    lp.rhs[r] = b[r];
    lp.constraints.row(k + r).head(d) = -a.row(r);
    lp.constraints(k + r, d + r) = -1.0;
    lp.rhs[k + r] = -b[r];
  }
  lp.free_vars.assign(static_cast<std::size_t>(d + k), false);
  std::fill_n(lp.free_vars.begin(), d, true);
  const LpSolution sol = lp_solve(lp);
  fit.model.w = sol.x.head(d);
  fit.objective = (b - a * fit.model.w).cwiseAbs().sum();
  return fit;
}

MinimaxFit solve_minimax(const RegressionDataset& data, const InlierSet& subset) {
  Matrix a;
  Vector b;
  gather(data, subset, a, b);
  const Eigen::Index k = a.rows();
  const Eigen::Index d = a.cols();
  MinimaxFit fit;
  if (k == 0) {
    fit.model.w = Vector::Zero(d);
    return fit;
  }
  // Variables [w (free), t >= 0]; min t s.t. |b_r - a_r w| <= t.
  DenseLP lp;
  lp.cost = Vector::Zero(d + 1);
  lp.cost[d] = 1.0;
  lp.constraints.resize(2 * k, d + 1);
  lp.rhs.resize(2 * k);
  for (Eigen::Index r = 0; r < k; ++r) {
    lp.constraints.row(r).head(d) = a.row(r);
    lp.constraints(r, d) = -1.0;
    lp.rhs[r] = b[r];
    lp.constraints.row(k + r).head(d) = -a.row(r);
    lp.constraints(k + r, d) = -1.0;
    lp.rhs[k + r] = -b[r];
  }
  lp.free_vars.assign(static_cast<std::size_t>(d + 1), true);
  lp.free_vars[static_cast<std::size_t>(d)] = false;
  const LpSolution sol = lp_solve(lp);
  fit.model.w = sol.x.head(d);
  fit.max_error = (b - a * fit.model.w).cwiseAbs().maxCoeff();
  return fit;
}

SubspaceFit solve_subspace_p2(const PointDataset& data, const InlierSet& subset, std::size_t subspace_dim) {
  const Eigen::Index d = data.x.cols();
  const auto ds = static_cast<Eigen::Index>(subspace_dim);
  if (ds < 1 || ds >= d) throw InvalidInput("subspace dimension must satisfy 1 <= d_s < d");
  SubspaceFit fit;
  const auto k = static_cast<Eigen::Index>(subset.size());
  if (k == 0) {
    fit.model.basis = Matrix::Identity(d, ds);
    fit.non_unique = true;
    return fit;
  }
  Matrix cols(d, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const auto i = static_cast<Eigen::Index>(subset.indices[static_cast<std::size_t>(r)]);
    if (i >= data.x.rows()) throw std::out_of_range("subset index out of range");
    cols.col(r) = data.x.row(i).transpose();
  }
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeFullU);
  fit.model.basis = svd.matrixU().leftCols(ds);
  normalize_column_signs(fit.model.basis);

  // Singular values beyond min(d, k) are zero.
  const Vector& sv = svd.singularValues();
  const auto sigma = [&](Eigen::Index j) { return j < sv.size() ? sv[j] : 0.0; };
  const double scale = std::max(1.0, sigma(0));
  fit.non_unique = k < ds || std::abs(sigma(ds - 1) - sigma(ds)) <= 1e-10 * scale;
  return fit;
}

RegressionModel solve_regression_subproblem(const RegressionDataset& data, const InlierSet& subset, int p) {
  switch (p) {
    case 0: return solve_minimax(data, subset).model;
    case 1: return solve_lad(data, subset).model;
    default: return solve_least_squares(data, subset).model;
  }
}

}  // namespace satreg
