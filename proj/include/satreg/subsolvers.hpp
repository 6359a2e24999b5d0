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
#include <vector>

#include "satreg/core.hpp"

namespace satreg {

/// minimize c^T x  subject to  A x <= b,  x_j >= 0 unless free_vars[j].
struct DenseLP {
  Vector cost;
  Matrix constraints;  // rows x vars
  Vector rhs;
  std::vector<bool> free_vars;  // empty means all variables nonnegative
};

struct LpSolution {
  Vector x;
  double objective = 0.0;
  /// Multipliers of the A x <= b rows (all <= 0 at optimality).
  Vector duals;
  /// Largest complementary-slackness / dual-feasibility violation.
  double kkt_residual = 0.0;
  std::size_t pivots = 0;
};

/// Dense two-phase primal simplex with Bland's rule. Throws SolverFailure on
/// infeasible or unbounded programs, or when the pivot budget runs out.
[[nodiscard]] LpSolution lp_solve(const DenseLP& lp);

struct LeastSquaresFit {
  RegressionModel model;
  bool rank_deficient = false;
};

struct LadFit {
  RegressionModel model;
  double objective = 0.0;  // sum of absolute residuals over the subset
};

struct MinimaxFit {
  RegressionModel model;
  double max_error = 0.0;  // Chebyshev error over the subset
};

struct SubspaceFit {
  SubspaceModel model;
  /// Set when sigma_{d_s} and sigma_{d_s+1} coincide (within 1e-10) or the
  /// subset has fewer than d_s points, so the optimal basis is not unique.
  bool non_unique = false;
};

/// Least squares on the rows in `subset`. A rank-deficient design gives the
/// minimum-norm solution and sets the flag.
[[nodiscard]] LeastSquaresFit solve_least_squares(const RegressionDataset& data, const InlierSet& subset);

/// Least absolute deviations on `subset` via the slack-variable LP.
[[nodiscard]] LadFit solve_lad(const RegressionDataset& data, const InlierSet& subset);

/// Chebyshev (minimax) fit on `subset` via LP.
[[nodiscard]] MinimaxFit solve_minimax(const RegressionDataset& data, const InlierSet& subset);

/// Best d_s-dimensional subspace in the least-squares sense for the subset:
/// top d_s left singular vectors of the matrix with the subset points as
/// columns. Columns are sign-normalized (first clearly nonzero entry > 0).
[[nodiscard]] SubspaceFit solve_subspace_p2(const PointDataset& data, const InlierSet& subset,
                                            std::size_t subspace_dim);

/// Fit for the fixed-classification regression subproblem of loss p:
/// minimax for p = 0, LAD for p = 1, least squares for p = 2.
[[nodiscard]] RegressionModel solve_regression_subproblem(const RegressionDataset& data, const InlierSet& subset,
                                                          int p);

}  // namespace satreg
