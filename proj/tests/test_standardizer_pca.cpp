#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nffs/pca.hpp"
#include "nffs/rng.hpp"
#include "nffs/standardizer.hpp"
#include "support/oracles.hpp"

namespace {

using namespace nffs;

Matrix random_matrix(Eigen::Index n, Eigen::Index m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix x(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) x(i, j) = normal(rng) * static_cast<double>(j + 1);
  // Correlate the columns a little so the spectrum is not flat.
  if (m > 1) x.col(1) += 0.8 * x.col(0);
  return x;
}

TEST(Standardizer, PopulationStatistics) {
  Matrix x(3, 1);
  x << 2, 4, 6;
  const auto s = fit_standardizer(x);
  EXPECT_DOUBLE_EQ(s.means(0), 4.0);
  EXPECT_NEAR(s.stds(0), 1.63299, 1e-5);
  const Matrix z = s.transform(x);
  EXPECT_NEAR(z(0, 0), -1.2247, 1e-4);
  EXPECT_NEAR(z(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(z(2, 0), 1.2247, 1e-4);
}

TEST(Standardizer, ConstantColumnMapsToZero) {
  Matrix x(4, 2);
  x << 1, 7, 2, 7, 3, 7, 4, 7;
  const auto s = fit_standardizer(x);
  EXPECT_EQ(s.stds(1), 1.0);
  EXPECT_TRUE(s.transform(x).col(1).isZero());
}

TEST(Standardizer, OutputHasZeroMeanUnitVarianceAndIsIdempotent) {
  const Matrix x = random_matrix(200, 5, 1);
  const Matrix z = fit_standardizer(x).transform(x);
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    EXPECT_NEAR(z.col(j).mean(), 0.0, 1e-12);
    EXPECT_NEAR(std::sqrt(z.col(j).squaredNorm() / static_cast<double>(z.rows())), 1.0, 1e-12);
  }
  const Matrix again = fit_standardizer(z).transform(z);
  EXPECT_LT((again - z).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Standardizer, WidthMismatchThrows) {
  const auto s = fit_standardizer(random_matrix(10, 3, 2));
  EXPECT_THROW(s.transform(random_matrix(10, 2, 2)), Error);
}

TEST(Pca, FullRankReconstructsInput) {
  const Matrix x = random_matrix(100, 6, 3);
  const auto p = fit_pca(x, 1.0);
  EXPECT_EQ(p.k, 6);
  EXPECT_LT((p.inverse_transform(p.transform(x)) - x).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Pca, PointsOnALineNeedOneComponent) {
  Matrix x(50, 3);
  for (Eigen::Index i = 0; i < 50; ++i) {
    const double t = static_cast<double>(i) - 25.0;
    x.row(i) << t, 2.0 * t, -t;
  }
  const auto p = fit_pca(x, 0.93);
  EXPECT_EQ(p.k, 1);
  EXPECT_NEAR(p.explained_variance_ratios(0), 1.0, 1e-12);
}

TEST(Pca, ComponentsOrthonormalAndProjectionIdempotent) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix x = random_matrix(80, 7, seed + 10);
    const auto p = fit_pca(x, 0.8);
    const Matrix gram = p.components * p.components.transpose();
    EXPECT_LT((gram - Matrix::Identity(p.k, p.k)).cwiseAbs().maxCoeff(), 1e-8);
    const Matrix projector = p.components.transpose() * p.components;
    EXPECT_LT((projector * projector - projector).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(p.explained_variance_ratios.sum(), 1.0, 1e-12);
    for (Eigen::Index i = 1; i < p.explained_variance.size(); ++i)
      EXPECT_GE(p.explained_variance(i - 1), p.explained_variance(i));
    for (Eigen::Index r = 0; r < p.k; ++r) {
      Eigen::Index arg;
      p.components.row(r).cwiseAbs().maxCoeff(&arg);
      EXPECT_GT(p.components(r, arg), 0.0);
    }
  }
}

TEST(Pca, EigenvaluesAgreeWithJacobiOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix x = random_matrix(60, 5, seed + 40);
    const auto p = fit_pca(x, 1.0);
    const Matrix centered = x.rowwise() - x.colwise().mean();
    const Matrix cov = centered.transpose() * centered / static_cast<double>(x.rows() - 1);
    const auto [values, vectors] = oracle::jacobi_eigen(cov);
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      EXPECT_NEAR(p.explained_variance(i), values(i), 1e-8 * std::max(1.0, values(0)));
      // Eigenvectors match up to sign.
      EXPECT_NEAR(std::abs(p.components.row(i).dot(vectors.col(i))), 1.0, 1e-6);
    }
  }
}

TEST(Pca, RetainedComponentsIsSmallestReachingTarget) {
  Vector ratios(4);
  ratios << 0.5, 0.3, 0.15, 0.05;
  EXPECT_EQ(retained_components(ratios, 0.5), 1);
  EXPECT_EQ(retained_components(ratios, 0.51), 2);
  EXPECT_EQ(retained_components(ratios, 0.8), 2);
  EXPECT_EQ(retained_components(ratios, 0.93), 3);
  EXPECT_EQ(retained_components(ratios, 1.0), 4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = fit_pca(random_matrix(40, 6, seed), 0.93);
    double before = 0.0;
    for (Eigen::Index i = 0; i + 1 < p.k; ++i) before += p.explained_variance_ratios(i);
    EXPECT_LT(before, 0.93);
    EXPECT_GE(before + p.explained_variance_ratios(p.k - 1), 0.93 - 1e-12);
  }
}

TEST(Pca, ZeroVarianceInputKeepsEveryComponent) {
  const Matrix x = Matrix::Constant(10, 3, 2.0);
  const auto p = fit_pca(x, 0.93);
  EXPECT_EQ(p.k, 3);
  EXPECT_TRUE(p.transform(x).isZero());
}

TEST(Pca, InvalidArgumentsThrow) {
  EXPECT_THROW(fit_pca(Matrix(1, 3), 0.9), Error);
  EXPECT_THROW(fit_pca(Matrix(5, 0), 0.9), Error);
  EXPECT_THROW(fit_pca(random_matrix(5, 2, 1), 0.0), Error);
  EXPECT_THROW(fit_pca(random_matrix(5, 2, 1), 1.5), Error);
  const auto p = fit_pca(random_matrix(5, 2, 1), 0.9);
  EXPECT_THROW(p.transform(random_matrix(5, 3, 1)), Error);
}

}  // namespace
