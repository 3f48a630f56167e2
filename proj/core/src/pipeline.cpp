#include "nffs/pipeline.hpp"

namespace nffs {

TrainedPipeline fit_pipeline(const EncodedDataset& train, const FeatureMask& mask, const HyperParamGroup& params,
                             double pca_ratio, std::uint64_t seed) {
  const EncodedDataset view = apply_mask(train, mask);
  TrainedPipeline p;
  p.mask = mask;
  p.standardizer = fit_standardizer(view.x);
  const Matrix standardized = p.standardizer.transform(view.x);
  p.pca = fit_pca(standardized, pca_ratio);
  p.forest = fit_forest(p.pca.transform(standardized), view.y, params, seed);
  return p;
}

PipelinePrediction predict_pipeline(const TrainedPipeline& pipeline, const EncodedDataset& test) {
  if (test.width() != pipeline.mask.size())
    throw Error("test data has width " + std::to_string(test.width()) + ", pipeline expects " +
                std::to_string(pipeline.mask.size()));
  const EncodedDataset view = apply_mask(test, pipeline.mask);
  const Matrix scores = pipeline.pca.transform(pipeline.standardizer.transform(view.x));
  PipelinePrediction out;
  out.scores = predict_proba(pipeline.forest, scores);
  out.labels.reserve(out.scores.size());
  for (double s : out.scores) out.labels.push_back(s >= 0.5 ? 1 : 0);
  return out;
}

}  // namespace nffs
