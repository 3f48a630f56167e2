#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nffs/pipeline.hpp"

namespace nffs {

// Positive = attack (label 1), negative = normal (label 0).
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + tn + fp + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(const Labels& truth, const Labels& predicted);

// A zero denominator yields value 0 with `degenerate` set.
struct Metric {
  double value = 0.0;
  bool degenerate = false;
};

Metric accuracy(const ConfusionMatrix& cm);
Metric recall(const ConfusionMatrix& cm);
Metric precision(const ConfusionMatrix& cm);
Metric f_score(const ConfusionMatrix& cm);

// Mann-Whitney statistic with ties counted one half. Throws when `truth`
// holds a single class.
double auc(const Labels& truth, std::span<const double> scores);

struct IndicatorReport {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  double auc = 0.0;
  ConfusionMatrix confusion;
  std::vector<std::string> degenerate;  // names of zero-denominator indicators
};

IndicatorReport indicators(const Labels& truth, const PipelinePrediction& prediction);

struct AggregateReport {
  std::size_t runs = 0;
  IndicatorReport mean;
  IndicatorReport std;  // population standard deviation across runs
};

AggregateReport aggregate(const std::vector<IndicatorReport>& runs);

nlohmann::json to_json(const ConfusionMatrix& cm);
nlohmann::json to_json(const IndicatorReport& report);
nlohmann::json to_json(const AggregateReport& report);

// Mean test F-score over the parameter groups; group g trains with seed
// base_seed + g.seed_offset. Subset size is not penalized.
double fitness(const FeatureMask& mask, const EncodedDataset& train, const EncodedDataset& test,
               const std::vector<HyperParamGroup>& groups, double pca_ratio, std::uint64_t base_seed,
               unsigned threads = 1);

}  // namespace nffs
