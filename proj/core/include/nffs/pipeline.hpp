#pragma once

#include <cstdint>

#include "nffs/data_model.hpp"
#include "nffs/pca.hpp"
#include "nffs/random_forest.hpp"
#include "nffs/standardizer.hpp"

namespace nffs {

// mask -> standardize -> PCA -> random forest, fitted as one classifier.
// Dimensions chain: encoded width d -> mask count m -> retained k.
struct TrainedPipeline {
  FeatureMask mask;
  Standardizer standardizer;
  PCAModel pca;
  RandomForestModel forest;
};

TrainedPipeline fit_pipeline(const EncodedDataset& train, const FeatureMask& mask, const HyperParamGroup& params,
                             double pca_ratio, std::uint64_t seed);

struct PipelinePrediction {
  Labels labels;               // scores >= 0.5
  std::vector<double> scores;  // fraction of trees voting attack
};

// `test` is in the full encoded space; the pipeline applies its own mask.
PipelinePrediction predict_pipeline(const TrainedPipeline& pipeline, const EncodedDataset& test);

}  // namespace nffs
