#pragma once

#include "nffs/types.hpp"

namespace nffs {

// Per-column z-scores with population statistics. Constant columns keep
// std = 1 and therefore map to zeros.
struct Standardizer {
  Vector means;
  Vector stds;

  Matrix transform(const Matrix& x) const;
};

Standardizer fit_standardizer(const Matrix& x);

inline Matrix apply_standardizer(const Standardizer& s, const Matrix& x) { return s.transform(x); }

}  // namespace nffs
