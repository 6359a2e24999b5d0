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

#include <algorithm>
#include <cmath>
#include <limits>

#include "satreg/subsolvers.hpp"

namespace satreg {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;

// Dense tableau. Row 0..m-1 are constraints, the last row holds reduced
// costs; the last column holds the right-hand side.
class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols) : t_(Matrix::Zero(rows + 1, cols + 1)), basis_(rows) {}

  Matrix& data() { return t_; }
  [[nodiscard]] Eigen::Index rows() const { return t_.rows() - 1; }
  [[nodiscard]] Eigen::Index cols() const { return t_.cols() - 1; }
  std::vector<Eigen::Index>& basis() { return basis_; }
  [[nodiscard]] double rhs(Eigen::Index r) const { return t_(r, cols()); }
  [[nodiscard]] double reduced_cost(Eigen::Index c) const { return t_(rows(), c); }
  [[nodiscard]] double objective() const { return -t_(rows(), cols()); }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i <= rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Loads the reduced-cost row for cost vector `c` (length cols()).
  void set_costs(const Vector& c) {
    t_.row(rows()).setZero();
    t_.row(rows()).head(cols()) = c.transpose();
    for (Eigen::Index r = 0; r < rows(); ++r) {
      const double cb = c[basis_[static_cast<std::size_t>(r)]];
      if (cb != 0.0) t_.row(rows()) -= cb * t_.row(r);
    }
  }

  // Bland's rule simplex on columns [0, allowed). Returns false if unbounded.
  // With `bounded_below` a column without a leaving row is roundoff and is
  // passed over until the next pivot.
  bool run(Eigen::Index allowed, std::size_t& pivots, std::size_t max_pivots, bool bounded_below = false) {
    std::vector<char> passed(static_cast<std::size_t>(allowed), 0);
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index c = 0; c < allowed; ++c) {
        if (passed[static_cast<std::size_t>(c)] == 0 && reduced_cost(c) < -kPivotTol) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;

      Eigen::Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < rows(); ++r) {
        const double a = t_(r, enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(0.0, rhs(r)) / a;
        if (ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol && leave >= 0 &&
             basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)])) {
          best_ratio = std::min(best_ratio, ratio);
          leave = r;
        }
      }
      if (leave < 0) {
        if (!bounded_below) return false;
        passed[static_cast<std::size_t>(enter)] = 1;
        continue;
      }
      std::fill(passed.begin(), passed.end(), 0);
      if (++pivots > max_pivots) throw SolverFailure("simplex pivot budget exhausted (cycling guard)");
      pivot(leave, enter);
    }
  }

 private:
  Matrix t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LpSolution lp_solve(const DenseLP& lp) {
  const Eigen::Index m = lp.constraints.rows();
  const Eigen::Index n = lp.constraints.cols();
  if (lp.cost.size() != n || lp.rhs.size() != m) throw DimensionMismatch("LP dimensions are inconsistent");
  if (!lp.free_vars.empty() && static_cast<Eigen::Index>(lp.free_vars.size()) != n) {
    throw DimensionMismatch("LP free-variable mask has the wrong length");
  }
  const auto is_free = [&](Eigen::Index j) {
    return !lp.free_vars.empty() && lp.free_vars[static_cast<std::size_t>(j)];
  };

  // Column layout: structural (free variables split into +/- parts), then
  // one slack per row, then one artificial per row with negative rhs.
  std::vector<Eigen::Index> plus_col(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> minus_col(static_cast<std::size_t>(n), -1);
  Eigen::Index structural = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    plus_col[static_cast<std::size_t>(j)] = structural++;
    if (is_free(j)) minus_col[static_cast<std::size_t>(j)] = structural++;
  }
  const Eigen::Index slack0 = structural;
  Eigen::Index artificials = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (lp.rhs[i] < 0.0) ++artificials;
  }
  const Eigen::Index art0 = slack0 + m;
  const Eigen::Index total = art0 + artificials;

  Tableau tab(m, total);
  Matrix& t = tab.data();
  Eigen::Index next_art = art0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sgn = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = sgn * lp.constraints(i, j);
      t(i, plus_col[static_cast<std::size_t>(j)]) = a;
      if (minus_col[static_cast<std::size_t>(j)] >= 0) t(i, minus_col[static_cast<std::size_t>(j)]) = -a;
    }
    t(i, slack0 + i) = sgn;
    t(i, total) = sgn * lp.rhs[i];
    if (sgn < 0.0) {
      t(i, next_art) = 1.0;
      tab.basis()[static_cast<std::size_t>(i)] = next_art++;
    } else {
      tab.basis()[static_cast<std::size_t>(i)] = slack0 + i;
    }
  }

  std::size_t pivots = 0;
  const std::size_t max_pivots = 50 * static_cast<std::size_t>(m + total) + 1000;

  if (artificials > 0) {
    Vector phase1 = Vector::Zero(total);
    phase1.tail(artificials).setOnes();
    tab.set_costs(phase1);
    tab.run(total, pivots, max_pivots, true);
    const double scale = std::max(1.0, lp.rhs.cwiseAbs().maxCoeff());
    if (tab.objective() > kFeasTol * scale) throw SolverFailure("LP is infeasible");
    // Drive zero-level artificials out of the basis where possible.
    for (Eigen::Index r = 0; r < m; ++r) {
      if (tab.basis()[static_cast<std::size_t>(r)] < art0) continue;
      for (Eigen::Index c = 0; c < art0; ++c) {
        if (std::abs(t(r, c)) > 1e-9) {
          tab.pivot(r, c);
          ++pivots;
          break;
        }
      }
    }
  }

  Vector phase2 = Vector::Zero(total);
  for (Eigen::Index j = 0; j < n; ++j) {
    phase2[plus_col[static_cast<std::size_t>(j)]] = lp.cost[j];
    if (minus_col[static_cast<std::size_t>(j)] >= 0) phase2[minus_col[static_cast<std::size_t>(j)]] = -lp.cost[j];
  }
  tab.set_costs(phase2);
  if (!tab.run(art0, pivots, max_pivots)) throw SolverFailure("LP is unbounded");

  Vector expanded = Vector::Zero(total);
  for (Eigen::Index r = 0; r < m; ++r) expanded[tab.basis()[static_cast<std::size_t>(r)]] = tab.rhs(r);

  LpSolution sol;
  sol.pivots = pivots;
  sol.x.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double v = expanded[plus_col[static_cast<std::size_t>(j)]];
    if (minus_col[static_cast<std::size_t>(j)] >= 0) v -= expanded[minus_col[static_cast<std::size_t>(j)]];
    sol.x[j] = v;
  }
  sol.objective = lp.cost.dot(sol.x);

  // Row multipliers are minus the reduced costs of the slack columns.
  sol.duals.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) sol.duals[i] = -tab.reduced_cost(slack0 + i);

  const Vector slack = lp.rhs - lp.constraints * sol.x;
  const Vector dual_slack = lp.cost - lp.constraints.transpose() * sol.duals;
  double resid = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    resid = std::max(resid, std::abs(sol.duals[i] * slack[i]));
    resid = std::max(resid, std::max(0.0, sol.duals[i]));
    resid = std::max(resid, std::max(0.0, -slack[i]));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (is_free(j)) {
      resid = std::max(resid, std::abs(dual_slack[j]));
    } else {
      resid = std::max(resid, std::abs(sol.x[j] * dual_slack[j]));
      resid = std::max(resid, std::max(0.0, -dual_slack[j]));
    }
  }
  sol.kkt_residual = resid;
  return sol;
}

}  // namespace satreg
