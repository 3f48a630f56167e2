#pragma once

#include "nffs/types.hpp"

namespace nffs {

struct PCAModel {
  Matrix components;                  // k x m, orthonormal rows, descending variance
  Vector mean;                        // length m
  Vector explained_variance;          // length m, descending
  Vector explained_variance_ratios;   // length m, sums to 1
  double target_ratio = 1.0;
  Eigen::Index k = 0;

  Eigen::Index input_width() const noexcept { return mean.size(); }

  // Centered data times components^T: n x k.
  Matrix transform(const Matrix& x) const;
  // Scores back to the input space: scores * components + mean.
  Matrix inverse_transform(const Matrix& scores) const;
};

// Smallest k whose cumulative ratio reaches target_ratio (k = m if rounding
// keeps the cumulative sum just below the target).
Eigen::Index retained_components(const Vector& ratios, double target_ratio);

// Eigendecomposition of the sample covariance. Component signs are fixed so
// the largest-magnitude loading of each component is positive.
PCAModel fit_pca(const Matrix& x, double target_ratio);

inline Matrix pca_transform(const PCAModel& p, const Matrix& x) { return p.transform(x); }

}  // namespace nffs
