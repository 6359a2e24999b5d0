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
#include <numeric>

#include "doctest.h"
#include "satreg/oracle.hpp"
#include "test_support.hpp"

using namespace satreg;
using namespace satreg::testing;

TEST_SUITE("oracle") {
  TEST_CASE("exact-fit and axis datasets") {
    CHECK(oracle_regression(exact_fit_dataset(), {0, 0.1}).objective == 1.0);
    CHECK(oracle_regression(exact_fit_dataset(), {2, 0.1}).objective == doctest::Approx(0.01));
    const auto axis = oracle_subspace(axis_dataset(), {0, 0.1});
    CHECK(axis.objective == 2.0);
    CHECK(axis.inliers == all_of(6));
    CHECK(axis.subsets_evaluated == (1u << 8) - 1);
  }

  TEST_CASE("collinear data has zero objective") {
    RegressionDataset line;
    line.x.resize(6, 2);
    line.x << 1, 2, 3, 1, -2, 0.5, 4, 4, 0, 1, 2, -3;
    line.y = line.x * Vector::Constant(2, 0.5);
    for (int p : {0, 1, 2}) CHECK(oracle_regression(line, {p, 0.1}).objective == doctest::Approx(0.0));

    PointDataset flat;
    flat.x.resize(7, 3);
    flat.x << 1, 2, 0, -1, 4, 0, 3, 3, 0, 0, 1, 0, 2, -5, 0, 4, 1, 0, -2, -2, 0;
    flat.subspace_dim = 2;
    CHECK(oracle_subspace(flat, {0, 0.1}).objective == 0.0);
  }

  TEST_CASE("p = 0 objective is an integer in [0, N - d]") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto data = random_regression(seed, 9, 2);
      const double j = oracle_regression(data, {0, 0.6}).objective;
      CHECK(j == std::floor(j));
      CHECK(j >= 0);
      CHECK(j <= 7);
    }
  }

  TEST_CASE("invariant under permutation of the points") {
    Rng rng(5);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto data = random_regression(50 + seed, 9, 2);
      std::vector<std::size_t> perm(9);
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = 8; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);
      RegressionDataset shuffled = data;
      for (std::size_t i = 0; i < 9; ++i) {
        shuffled.x.row(static_cast<Eigen::Index>(i)) = data.x.row(static_cast<Eigen::Index>(perm[i]));
        shuffled.y[static_cast<Eigen::Index>(i)] = data.y[static_cast<Eigen::Index>(perm[i])];
      }
      for (int p : {0, 2}) {
        const LossSpec spec{p, 1.0};
        CHECK(rel_diff(oracle_regression(data, spec).objective, oracle_regression(shuffled, spec).objective) <=
              1e-9);
      }
    }
  }

  TEST_CASE("thread count does not change the result") {
    const auto data = random_regression(77, 12, 2);
    const auto a = oracle_regression(data, {2, 1.0}, 1);
    const auto b = oracle_regression(data, {2, 1.0}, 3);
    CHECK(a.objective == b.objective);
    CHECK(a.inliers == b.inliers);
    CHECK(a.subsets_evaluated == b.subsets_evaluated);
  }

  TEST_CASE("size guards") {
    CHECK_THROWS_AS((void)oracle_regression(random_regression(1, 21, 2), {2, 1.0}), InvalidInput);
    CHECK_THROWS_AS((void)oracle_subspace(random_points(1, 17, 2, 1), {2, 1.0}), InvalidInput);
    CHECK_THROWS_AS((void)oracle_subspace(axis_dataset(), {1, 1.0}), UnsupportedCase);
  }
}
