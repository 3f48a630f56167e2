#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nffs/data_model.hpp"

namespace nffs::synthetic {

// Two Gaussian blobs in 2-D, far enough apart to be linearly separable.
struct Blobs {
  Matrix x;
  Labels y;
};
Blobs separable_blobs(std::size_t n, std::uint64_t seed, double gap = 6.0);

// Planted-signal classification data. The label is the sign of a weighted
// sum of the informative numeric features, one categorical feature's
// per-category offset and Gaussian noise; the noise features are
// independent of everything.
struct PlantedSpec {
  std::size_t train_rows = 5000;
  std::size_t test_rows = 2000;
  std::size_t informative_numeric = 9;
  std::size_t noise = 40;
  std::size_t categories = 6;  // 0 disables the categorical feature
  double weight_first = 1.2;   // weight of the strongest numeric feature
  double weight_step = 0.04;   // decrease per further feature
  double category_spread = 1.5;  // offsets run from -spread to +spread
  double label_noise = 0.3;
  std::uint64_t seed = 2024;
};

struct Planted {
  RawDataset train;
  RawDataset test;
  std::vector<std::string> informative;  // raw names of planted features
};

Planted planted_dataset(const PlantedSpec& spec);

void write_csv(const RawDataset& data, const std::string& path);

}  // namespace nffs::synthetic
