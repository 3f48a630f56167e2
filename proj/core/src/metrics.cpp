#include "nffs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "nffs/parallel.hpp"

namespace nffs {

ConfusionMatrix confusion(const Labels& truth, const Labels& predicted) {
  if (truth.size() != predicted.size()) throw Error("confusion: length mismatch");
  if (truth.empty()) throw Error("confusion: empty input");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth[i] != 0;
    const bool guess = predicted[i] != 0;
    if (actual && guess)
      ++cm.tp;
    else if (actual)
      ++cm.fn;
    else if (guess)
      ++cm.fp;
    else
      ++cm.tn;
  }
  return cm;
}

namespace {

Metric ratio(std::size_t num, std::size_t den) {
  if (den == 0) return {0.0, true};
  return {static_cast<double>(num) / static_cast<double>(den), false};
}

double mean_of(const std::vector<IndicatorReport>& runs, double IndicatorReport::*field) {
  double sum = 0.0;
  for (const auto& r : runs) sum += r.*field;
  return sum / static_cast<double>(runs.size());
}

double std_of(const std::vector<IndicatorReport>& runs, double IndicatorReport::*field, double mean) {
  double sum = 0.0;
  for (const auto& r : runs) sum += (r.*field - mean) * (r.*field - mean);
  return std::sqrt(sum / static_cast<double>(runs.size()));
}

}  // namespace

Metric accuracy(const ConfusionMatrix& cm) { return ratio(cm.tp + cm.tn, cm.total()); }
Metric recall(const ConfusionMatrix& cm) { return ratio(cm.tp, cm.tp + cm.fn); }
Metric precision(const ConfusionMatrix& cm) { return ratio(cm.tp, cm.tp + cm.fp); }

Metric f_score(const ConfusionMatrix& cm) {
  const Metric p = precision(cm);
  const Metric r = recall(cm);
  if (p.value + r.value == 0.0) return {0.0, true};
  return {2.0 * p.value * r.value / (p.value + r.value), p.degenerate || r.degenerate};
}

double auc(const Labels& truth, std::span<const double> scores) {
  if (truth.size() != scores.size()) throw Error("auc: length mismatch");
  const auto positives = static_cast<std::size_t>(std::count(truth.begin(), truth.end(), 1));
  const std::size_t negatives = truth.size() - positives;
  if (positives == 0 || negatives == 0) throw Error("AUC undefined: truth holds a single class");

  std::vector<std::size_t> order(truth.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of mid-ranks (1-based) of the positives.
  double positive_rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t)
      if (truth[order[t]] == 1) positive_rank_sum += mid_rank;
    i = j;
  }
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

IndicatorReport indicators(const Labels& truth, const PipelinePrediction& prediction) {
  IndicatorReport report;
  report.confusion = confusion(truth, prediction.labels);
  const auto take = [&](const char* name, Metric m) {
    if (m.degenerate) report.degenerate.emplace_back(name);
    return m.value;
  };
  report.accuracy = take("accuracy", accuracy(report.confusion));
  report.precision = take("precision", precision(report.confusion));
  report.recall = take("recall", recall(report.confusion));
  report.f_score = take("f_score", f_score(report.confusion));
  report.auc = auc(truth, prediction.scores);
  return report;
}

AggregateReport aggregate(const std::vector<IndicatorReport>& runs) {
  if (runs.empty()) throw Error("aggregate: no runs");
  AggregateReport out;
  out.runs = runs.size();
  for (auto field : {&IndicatorReport::accuracy, &IndicatorReport::precision, &IndicatorReport::recall,
                     &IndicatorReport::f_score, &IndicatorReport::auc}) {
    out.mean.*field = mean_of(runs, field);
    out.std.*field = std_of(runs, field, out.mean.*field);
  }
  for (const auto& r : runs)
    for (const auto& name : r.degenerate)
      if (std::find(out.mean.degenerate.begin(), out.mean.degenerate.end(), name) == out.mean.degenerate.end())
        out.mean.degenerate.push_back(name);
  return out;
}

nlohmann::json to_json(const ConfusionMatrix& cm) {
  return {{"tp", cm.tp}, {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}};
}

nlohmann::json to_json(const IndicatorReport& r) {
  return {{"accuracy", r.accuracy}, {"precision", r.precision}, {"recall", r.recall}, {"f_score", r.f_score},
          {"auc", r.auc},           {"confusion", to_json(r.confusion)}, {"degenerate", r.degenerate}};
}

nlohmann::json to_json(const AggregateReport& r) {
  nlohmann::json doc = {{"runs", r.runs}};
  const std::pair<const char*, double IndicatorReport::*> fields[] = {{"accuracy", &IndicatorReport::accuracy},
                                                                      {"precision", &IndicatorReport::precision},
                                                                      {"recall", &IndicatorReport::recall},
                                                                      {"f_score", &IndicatorReport::f_score},
                                                                      {"auc", &IndicatorReport::auc}};
  for (const auto& [name, field] : fields) doc[name] = {{"mean", r.mean.*field}, {"std", r.std.*field}};
  doc["degenerate"] = r.mean.degenerate;
  return doc;
}

double fitness(const FeatureMask& mask, const EncodedDataset& train, const EncodedDataset& test,
               const std::vector<HyperParamGroup>& groups, double pca_ratio, std::uint64_t base_seed,
               unsigned threads) {
  if (groups.empty()) throw Error("fitness: no parameter groups");
  if (mask.count() == 0) throw Error("empty feature subset");
  std::vector<double> scores(groups.size(), 0.0);
  parallel_for(groups.size(), threads, [&](std::size_t g) {
    const auto seed = base_seed + static_cast<std::uint64_t>(static_cast<std::int64_t>(groups[g].seed_offset));
    const TrainedPipeline pipeline = fit_pipeline(train, mask, groups[g], pca_ratio, seed);
    const PipelinePrediction prediction = predict_pipeline(pipeline, test);
    scores[g] = f_score(confusion(test.y, prediction.labels)).value;
  });
  return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
}

}  // namespace nffs
