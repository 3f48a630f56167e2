#include "nffs/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nffs {

Eigen::Index retained_components(const Vector& ratios, double target_ratio) {
  constexpr double kSlack = 1e-12;
  double cumulative = 0.0;
  for (Eigen::Index i = 0; i < ratios.size(); ++i) {
    cumulative += ratios(i);
    if (cumulative >= target_ratio - kSlack) return i + 1;
  }
  return ratios.size();
}

PCAModel fit_pca(const Matrix& x, double target_ratio) {
  if (x.cols() == 0) throw Error("fit_pca: no columns");
  if (x.rows() < 2) throw Error("fit_pca: need at least two rows");
  if (!(target_ratio > 0.0 && target_ratio <= 1.0)) throw Error("fit_pca: target ratio must lie in (0, 1]");

  const Eigen::Index m = x.cols();
  PCAModel model;
  model.target_ratio = target_ratio;
  model.mean = x.colwise().mean().transpose();
  const Matrix centered = x.rowwise() - model.mean.transpose();
  const Matrix cov = (centered.transpose() * centered) / static_cast<double>(x.rows() - 1);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
  if (solver.info() != Eigen::Success) throw Error("fit_pca: eigendecomposition failed");

  // Eigen returns ascending eigenvalues.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  const Vector& values = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });

  model.explained_variance.resize(m);
  Matrix basis(m, m);  // rows are components
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto src = order[static_cast<std::size_t>(r)];
    model.explained_variance(r) = std::max(0.0, values(src));
    Vector v = solver.eigenvectors().col(src);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < 0) v = -v;
    basis.row(r) = v.transpose();
  }

  const double total = model.explained_variance.sum();
  if (total > 0.0)
    model.explained_variance_ratios = model.explained_variance / total;
  else
    model.explained_variance_ratios = Vector::Constant(m, 1.0 / static_cast<double>(m));

  model.k = retained_components(model.explained_variance_ratios, target_ratio);
  model.components = basis.topRows(model.k);
  return model;
}

Matrix PCAModel::transform(const Matrix& x) const {
  if (x.cols() != mean.size())
    throw Error("PCA expects " + std::to_string(mean.size()) + " columns, got " + std::to_string(x.cols()));
  return (x.rowwise() - mean.transpose()) * components.transpose();
}

Matrix PCAModel::inverse_transform(const Matrix& scores) const {
  if (scores.cols() != k) throw Error("PCA inverse expects " + std::to_string(k) + " score columns");
  return (scores * components).rowwise() + mean.transpose();
}

}  // namespace nffs
