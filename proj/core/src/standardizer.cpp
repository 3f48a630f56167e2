#include "nffs/standardizer.hpp"

#include <cmath>

namespace nffs {

Standardizer fit_standardizer(const Matrix& x) {
  if (x.rows() == 0 || x.cols() == 0) throw Error("fit_standardizer: empty matrix");
  Standardizer s;
  const double n = static_cast<double>(x.rows());
  s.means = x.colwise().mean().transpose();
  s.stds.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double var = (x.col(j).array() - s.means(j)).square().sum() / n;
    const double sd = std::sqrt(var);
    // Relative cutoff so columns that differ only by rounding count as constant.
    const double scale = std::max(1.0, std::abs(s.means(j)));
    s.stds(j) = sd > 1e-12 * scale ? sd : 1.0;
  }
  return s;
}

Matrix Standardizer::transform(const Matrix& x) const {
  if (x.cols() != means.size())
    throw Error("standardizer expects " + std::to_string(means.size()) + " columns, got " + std::to_string(x.cols()));
  Matrix out = x;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    out.col(j).array() -= means(j);
    out.col(j).array() /= stds(j);
  }
  return out;
}

}  // namespace nffs
