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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "satreg/geometry.hpp"
#include "test_support.hpp"

using namespace satreg;
using namespace satreg::testing;

namespace {

std::vector<double> as_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("regression lift") {
    RegressionDataset data;
    data.x = Matrix::Ones(1, 1);
    data.y = Vector::Constant(1, 0.5);
    const LiftedSet z = lift_regression(data, {2, 1.0});
    REQUIRE(z.size() == 2);
    CHECK(as_std(z.z.row(0).transpose()) == std::vector<double>{-0.5, -1.0});
    CHECK(as_std(z.z.row(1).transpose()) == std::vector<double>{-1.5, 1.0});
    CHECK(z.link(0) == 0);
    CHECK(z.link(1) == 0);
    const auto big = random_regression(2, 13, 3);
    CHECK(lift_regression(big, {2, 1.0}).size() == 26);
  }

  TEST_CASE("second-half identity h'z_{i+N} = -h'z_i - 2 eps h1") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
      const auto data = random_regression(100 + static_cast<std::uint64_t>(t), 9, 2);
      const double eps = rng.uniform(0.1, 3.0);
      const LiftedSet z = lift_regression(data, {2, eps});
      Vector h(3);
      for (int k = 0; k < 3; ++k) h[k] = rng.normal(0, 1);
      for (Eigen::Index i = 0; i < 9; ++i) {
        const double a = z.z.row(i).dot(h);
        const double b = z.z.row(i + 9).dot(h);
        CHECK(std::abs(b - (-a - 2 * eps * h[0])) <= 1e-12 * std::max(1.0, std::abs(b)));
      }
    }
  }

  TEST_CASE("veronese ordering and selection vector") {
    CHECK(as_std(veronese(Vector::LinSpaced(2, 1, 2))) == std::vector<double>{1, 2, 4});
    CHECK(veronese(Vector::Zero(3)).size() == 6);
    CHECK(veronese(Vector::Zero(3)).isZero());
    CHECK(as_std(selection_vector(1)) == std::vector<double>{1});
    CHECK(as_std(selection_vector(2)) == std::vector<double>{1, 0, 1});
    CHECK(as_std(selection_vector(3)) == std::vector<double>{1, 0, 0, 1, 0, 1});
    Vector x3(3);
    x3 << 2, 3, 5;
    CHECK(as_std(veronese(x3)) == std::vector<double>{4, 6, 10, 9, 15, 25});
    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
      const std::size_t d = 1 + static_cast<std::size_t>(t % 5);
      Vector x(static_cast<Eigen::Index>(d));
      for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = rng.uniform(-4, 4);
      CHECK(veronese(x).dot(selection_vector(d)) == doctest::Approx(x.squaredNorm()).epsilon(1e-12));
    }
  }

  TEST_CASE("subspace lift") {
    PointDataset data;
    data.x.resize(3, 2);
    data.x << 1, 0, 0, 1, 2, 3;
    data.subspace_dim = 1;
    const LiftedSet z = lift_subspace(data, {0, 1.0});
    CHECK(as_std(z.z.row(0).transpose()) == std::vector<double>{-1, 1, 0, 0});
    const LiftedSet z2 = lift_subspace(data, {0, 0.3});
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(z2.z(i, 0) == doctest::Approx(-0.09));
  }

  TEST_CASE("hyperplane through a seed") {
    LiftedSet z;
    z.kind = LiftKind::regression;
    z.z.resize(2, 2);
    z.z << 1, 1, 1, 1;
    z.row_norms = z.z.rowwise().norm();
    z.original_count = 1;
    z.epsilon = 1.0;
    const std::vector<std::size_t> seed{0};
    const auto h = hyperplane_through(z, seed);
    REQUIRE(h.has_value());
    CHECK(h->normal[0] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(h->normal[1] == doctest::Approx(-1 / std::sqrt(2.0)));

    const auto data = random_regression(1, 6, 2);
    LiftedSet dup = lift_regression(data, {2, 1.0});
    dup.z.row(1) = dup.z.row(0);
    dup.row_norms = dup.z.rowwise().norm();
    const std::vector<std::size_t> twins{0, 1};
    CHECK_FALSE(hyperplane_through(dup, twins).has_value());
  }

  TEST_CASE("random seeds: unit normal, seed on plane, h1 >= 0, deterministic") {
    Rng rng(4);
    for (int t = 0; t < 300; ++t) {
      const auto data = random_regression(200 + static_cast<std::uint64_t>(t), 10, 3);
      const LiftedSet z = lift_regression(data, {2, 1.0});
      std::vector<std::size_t> seed = rng.sample_without_replacement(z.size(), 3);
      const auto h = hyperplane_through(z, seed);
      if (!h) continue;
      CHECK(std::abs(h->normal.norm() - 1.0) <= 1e-10);
      CHECK(h->normal[0] >= 0.0);
      double maxnorm = 0.0;
      for (std::size_t j : seed) maxnorm = std::max(maxnorm, z.row_norms[static_cast<Eigen::Index>(j)]);
      for (std::size_t j : seed) {
        CHECK(std::abs(z.z.row(static_cast<Eigen::Index>(j)).dot(h->normal)) <= 1e-9 * maxnorm);
      }
      const auto again = hyperplane_through(z, seed);
      CHECK((again->normal.array() == h->normal.array()).all());
      const SignVector q = classify(z, h->normal);
      for (std::size_t j : seed) CHECK(q.q[j] == 0);
      // Generic data: no more than 2d points on a hyperplane.
      CHECK(q.zeros().size() <= 6);
    }
  }

  TEST_CASE("subspace hyperplanes: on-plane count bounded by D") {
    Rng rng(9);
    for (int t = 0; t < 200; ++t) {
      const auto data = random_points(300 + static_cast<std::uint64_t>(t), 9, 2, 1);
      const LiftedSet z = lift_subspace(data, {2, 0.5});
      const std::vector<std::size_t> seed = rng.sample_without_replacement(z.size(), z.seed_size());
      const auto h = hyperplane_through(z, seed);
      if (!h) continue;
      CHECK(std::abs(h->normal.norm() - 1.0) <= 1e-10);
      CHECK(classify(z, h->normal).zeros().size() <= 3);
    }
  }

  TEST_CASE("classification of a worked point") {
    RegressionDataset data;
    data.x = Matrix::Ones(1, 1);
    data.y = Vector::Constant(1, 0.5);
    const LiftedSet z = lift_regression(data, {2, 1.0});
    const SignVector q = classify(z, regression_normal({Vector::Zero(1)}));
    CHECK(q.q[0] == -1);
    CHECK(q.q[1] == -1);
    CHECK(inliers_from_signs(q, LiftKind::regression).indices == std::vector<std::size_t>{0});
  }

  TEST_CASE("lifted-sign rule reproduces regression inliers") {
    Rng rng(12);
    for (int t = 0; t < 1000; ++t) {
      const auto data = random_regression(5000 + static_cast<std::uint64_t>(t), 10, 2);
      const double eps = rng.uniform(0.2, 5.0);
      const LossSpec spec{2, eps};
      Vector w(2);
      w << rng.uniform(-5, 5), rng.uniform(-5, 5);
      const SignVector q = classify(lift_regression(data, spec), regression_normal({w}));
      if (!q.zeros().empty()) continue;
      CHECK(inliers_from_signs(q, LiftKind::regression) == regression_inliers(data, {w}, spec));
    }
  }

  TEST_CASE("lifted-sign rule reproduces subspace inliers") {
    Rng rng(13);
    for (int t = 0; t < 1000; ++t) {
      const std::size_t d = 2 + static_cast<std::size_t>(t % 2);
      const auto data = random_points(7000 + static_cast<std::uint64_t>(t), 10, d, 1);
      const double eps = rng.uniform(0.1, 3.0);
      const LossSpec spec{2, eps};
      const SubspaceModel b{random_orthonormal(rng, d, 1)};
      const SignVector q = classify(lift_subspace(data, spec), subspace_normal(b));
      if (!q.zeros().empty()) continue;
      CHECK(inliers_from_signs(q, LiftKind::subspace) == subspace_inliers(data, b, spec));
    }
  }

  TEST_CASE("inliers from signs") {
    SignVector neg{std::vector<std::int8_t>(8, -1)};
    CHECK(inliers_from_signs(neg, LiftKind::regression) == all_of(4));
    SignVector pos{std::vector<std::int8_t>(8, 1)};
    CHECK(inliers_from_signs(pos, LiftKind::regression).empty());
    CHECK(inliers_from_signs(pos, LiftKind::subspace, 1) == all_of(8));

    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
      SignVector q;
      for (int i = 0; i < 12; ++i) q.q.push_back(rng.uniform() < 0.5 ? -1 : 1);
      std::vector<std::size_t> expect;
      for (std::size_t i = 0; i < 6; ++i) {
        if (q.q[i] == -1 && q.q[i + 6] == -1) expect.push_back(i);
      }
      CHECK(inliers_from_signs(q, LiftKind::regression).indices == expect);
    }
    SignVector zero{{-1, 0}};
    CHECK_THROWS_AS((void)inliers_from_signs(zero, LiftKind::regression), std::logic_error);
  }
}
