// Copyright 2026 The sparsemp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparsemp/affine_map.hpp"

#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

namespace smp {
namespace {

Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

TEST(AffineMap, SecondDifferenceAnnihilatesLinearRamp) {
  AffineMap d = AffineMap::second_difference(4);
  Eigen::VectorXd x(4);
  x << 1, 2, 3, 4;
  Eigen::VectorXd out = d.apply(x);
  ASSERT_EQ(out.size(), 2);
  EXPECT_DOUBLE_EQ(out[0], 0.0);
  EXPECT_DOUBLE_EQ(out[1], 0.0);
}

TEST(AffineMap, IdentityApply) {
  AffineMap id = AffineMap::identity(3);
  Eigen::VectorXd x(3);
  x << 5, -1, 0;
  EXPECT_EQ(id.apply(x), x);
}

TEST(AffineMap, DenseApplyReadsFirstColumn) {
  Eigen::MatrixXd a(2, 4);
  a << 1, -2, 1, 0, 0, 1, -2, 1;
  AffineMap map = AffineMap::dense(a);
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(4);
  e1[0] = 1.0;
  Eigen::VectorXd out = map.apply(e1);
  EXPECT_DOUBLE_EQ(out[0], 1.0);
  EXPECT_DOUBLE_EQ(out[1], 0.0);
}

TEST(AffineMap, AdjointExamples) {
  AffineMap id = AffineMap::identity(3);
  Eigen::VectorXd c(3);
  c << 1, 2, 3;
  EXPECT_EQ(id.adjoint(c), c);

  AffineMap d = AffineMap::second_difference(4);
  Eigen::VectorXd c2(2);
  c2 << 1, 0;
  Eigen::VectorXd adj = d.adjoint(c2);
  Eigen::VectorXd expected(4);
  expected << 1, -2, 1, 0;
  EXPECT_TRUE(adj.isApprox(expected));

  std::vector<AffineMap> blocks{AffineMap::identity(3), AffineMap::identity(3)};
  AffineMap st = AffineMap::stacked(blocks);
  Eigen::VectorXd c3(6);
  c3 << 1, 2, 3, 10, 20, 30;
  Eigen::VectorXd sum = st.adjoint(c3);
  Eigen::VectorXd expected_sum(3);
  expected_sum << 11, 22, 33;
  EXPECT_TRUE(sum.isApprox(expected_sum));
}

TEST(AffineMap, DimensionMismatchThrows) {
  AffineMap d = AffineMap::second_difference(5);
  Eigen::VectorXd bad(4);
  bad.setZero();
  EXPECT_THROW(d.apply(bad), Error);
  EXPECT_THROW(d.adjoint(bad), Error);
}

// <A x, c> == <x, A^T c> for every kind (the offset plays no role).
TEST(AffineMap, AdjointConsistencyOverRandomTriples) {
  std::mt19937_64 rng(7);
  std::vector<AffineMap> maps;
  maps.push_back(AffineMap::identity(9));
  maps.push_back(AffineMap::second_difference(11));
  maps.push_back(AffineMap::grad2d(4, 5));
  {
    Eigen::MatrixXd a(5, 8);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      a(i / 8, i % 8) = std::normal_distribution<double>()(rng);
    }
    maps.push_back(AffineMap::dense(a));
  }
  maps.push_back(AffineMap::stacked(
      {AffineMap::identity(6), AffineMap::second_difference(6)}));

  for (const AffineMap& map : maps) {
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd x = random_vector(map.cols(), rng);
      Eigen::VectorXd c = random_vector(map.rows(), rng);
      const double lhs = map.apply_linear(x).dot(c);
      const double rhs = x.dot(map.adjoint(c));
      EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST(AffineMap, StackedApplyEqualsConcatenation) {
  std::mt19937_64 rng(11);
  AffineMap a = AffineMap::second_difference(7);
  AffineMap b = AffineMap::identity(7);
  AffineMap st = AffineMap::stacked({a, b});
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x = random_vector(7, rng);
    Eigen::VectorXd full = st.apply(x);
    EXPECT_TRUE(full.head(a.rows()).isApprox(a.apply(x)));
    EXPECT_TRUE(full.tail(b.rows()).isApprox(b.apply(x)));
  }
}

TEST(AffineMap, OffsetOnlyAffectsApply) {
  std::mt19937_64 rng(3);
  Eigen::VectorXd b = random_vector(4, rng);
  AffineMap id = AffineMap::identity(4).with_offset(b);
  Eigen::VectorXd x = random_vector(4, rng);
  EXPECT_TRUE(id.apply(x).isApprox(x + b));
  EXPECT_TRUE(id.adjoint(x).isApprox(x));
}

TEST(AffineMap, GradZeroOnConstantImage) {
  AffineMap g = AffineMap::grad2d(3, 4);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(12);
  EXPECT_NEAR(g.apply(ones).lpNorm<Eigen::Infinity>(), 0.0, 1e-15);
}

TEST(SpectralEstimate, IdentityIsExactlyOne) {
  SpectralEstimate est = estimate_sigma_min(AffineMap::identity(17));
  EXPECT_DOUBLE_EQ(est.sigma_min, 1.0);
  EXPECT_EQ(est.method, SpectralMethod::kExactSvd);
}

// For D = second_difference(4), D D^T = [[6,-4],[-4,6]] with eigenvalues
// {10, 2}, so sigma = sqrt(2); checked against a dense eigendecomposition.
TEST(SpectralEstimate, SecondDifferenceMatchesDenseEig) {
  AffineMap d = AffineMap::second_difference(4);
  Eigen::MatrixXd dd = d.to_dense();
  Eigen::MatrixXd ddt = dd * dd.transpose();
  EXPECT_DOUBLE_EQ(ddt(0, 0), 6.0);
  EXPECT_DOUBLE_EQ(ddt(0, 1), -4.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ddt);
  const double sigma_oracle = std::sqrt(eig.eigenvalues().minCoeff());
  SpectralEstimate est = estimate_sigma_min(d);
  EXPECT_NEAR(est.sigma_min, sigma_oracle, 1e-10);
  EXPECT_NEAR(est.sigma_min, std::sqrt(2.0), 1e-10);
}

TEST(SpectralEstimate, DenseMatchesSvdOracle) {
  Eigen::MatrixXd a(2, 3);
  a << 1, 0, 0, 0, 2, 0;
  SpectralEstimate est = estimate_sigma_min(AffineMap::dense(a));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  EXPECT_NEAR(est.sigma_min, svd.singularValues().minCoeff(), 1e-12);
  EXPECT_NEAR(est.sigma_min, 1.0, 1e-12);
}

TEST(SpectralEstimate, RankDeficientMapsAreRejected) {
  // rows > cols: A A^T singular by construction.
  EXPECT_THROW(estimate_sigma_min(AffineMap::grad2d(3, 3)), Error);
  EXPECT_THROW(estimate_sigma_min(AffineMap::stacked(
                   {AffineMap::identity(3), AffineMap::identity(3)})),
               Error);
  // Numerically rank-deficient dense map.
  Eigen::MatrixXd a(2, 3);
  a << 1, 1, 0, 1, 1, 0;
  EXPECT_THROW(estimate_sigma_min(AffineMap::dense(a)), Error);
}

// || A^T c || >= sigma(A) ||c|| for full-row-rank maps.
TEST(SpectralEstimate, NormInequalityHolds) {
  std::mt19937_64 rng(23);
  std::vector<AffineMap> maps;
  maps.push_back(AffineMap::identity(8));
  maps.push_back(AffineMap::second_difference(10));
  {
    Eigen::MatrixXd a(4, 9);
    for (Eigen::Index i = 0; i < 4; ++i) {
      for (Eigen::Index j = 0; j < 9; ++j) {
        a(i, j) = std::normal_distribution<double>()(rng);
      }
    }
    maps.push_back(AffineMap::dense(a));
  }
  for (const AffineMap& map : maps) {
    const double sigma = estimate_sigma_min(map).sigma_min;
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd c = random_vector(map.rows(), rng);
      const double lhs = map.adjoint(c).norm();
      const double rhs = sigma * c.norm();
      EXPECT_GE(lhs, rhs * (1.0 - 1e-9));
    }
  }
}

TEST(AffineMap, OperatorNormMatchesDense) {
  std::mt19937_64 rng(5);
  Eigen::MatrixXd a(6, 4);
  for (Eigen::Index i = 0; i < 6; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      a(i, j) = std::normal_distribution<double>()(rng);
    }
  }
  AffineMap map = AffineMap::dense(a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  EXPECT_NEAR(map.operator_norm(), svd.singularValues().maxCoeff(), 1e-8);
}

}  // namespace
}  // namespace smp
