#include "nffs/nffs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nffs/metrics.hpp"
#include "nffs/parallel.hpp"
#include "nffs/rng.hpp"

namespace nffs {
namespace {

constexpr double kBaseWeight = 0.5;
constexpr double kWeightRange = 0.4;
constexpr std::uint64_t kPhaseOne = 1;
constexpr std::size_t kMaxRedraws = 10000;

}  // namespace

std::vector<HyperParamGroup> default_param_groups() {
  HyperParamGroup shallow;
  shallow.n_trees = 50;
  shallow.max_depth = 12;
  shallow.seed_offset = 0;
  HyperParamGroup medium;
  medium.n_trees = 100;
  medium.max_depth = 16;
  medium.seed_offset = 1;
  HyperParamGroup deep;
  deep.n_trees = 100;
  deep.seed_offset = 2;
  return {shallow, medium, deep};
}

void NFFSConfig::validate(std::size_t width) const {
  if (afs1_size < 1 || top_count < 1 || bottom_count < 1 || afs2_size < 1)
    throw Error("afs1_size, top_count, bottom_count and afs2_size must all be at least 1");
  if (top_count + bottom_count >= afs1_size)
    throw Error("top_count + bottom_count (" + std::to_string(top_count + bottom_count) +
                ") must be less than afs1_size (" + std::to_string(afs1_size) + ")");
  if (width > 0 && afs2_size >= width)
    throw Error("afs2_size (" + std::to_string(afs2_size) + ") must be less than the number of encoded features (" +
                std::to_string(width) + ")");
  if (mi_bins < 2) throw Error("mi_bins must be at least 2");
  if (!(pca_ratio > 0.0 && pca_ratio <= 1.0)) throw Error("pca_ratio must lie in (0, 1]");
  if (!std::isfinite(threshold)) throw Error("threshold must be finite");
  if (param_groups.empty()) throw Error("at least one parameter group is required");
  for (const auto& g : param_groups) g.validate();
}

WeightVector compute_wv1(const MIScores& scores, double threshold, bool* collapsed) {
  WeightVector wv;
  wv.values.assign(scores.size(), kBaseWeight);
  if (scores.size() == 0) {
    if (collapsed) *collapsed = true;
    return wv;
  }
  const double top = scores.max();
  const bool flat = !(top > threshold);
  if (collapsed) *collapsed = flat;
  if (flat) return wv;
  const double slope = kWeightRange / (top - threshold);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double v = scores.values[i];
    if (v > threshold) wv.values[i] = std::min(kBaseWeight + kWeightRange, (v - threshold) * slope + kBaseWeight);
  }
  return wv;
}

double afs1_draw(std::uint64_t seed, std::size_t subset, std::size_t attempt, std::size_t feature, std::size_t width) {
  const auto counter = static_cast<std::uint64_t>(attempt) * static_cast<std::uint64_t>(width) + feature;
  return to_unit(stream_key(seed, kPhaseOne, static_cast<std::uint64_t>(subset), counter));
}

std::vector<FeatureMask> generate_afs1(const WeightVector& wv1, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw Error("generate_afs1: count must be positive");
  const std::size_t d = wv1.size();
  if (d == 0) throw Error("generate_afs1: empty weight vector");
  std::vector<FeatureMask> masks;
  masks.reserve(count);
  for (std::size_t l = 0; l < count; ++l) {
    FeatureMask mask(d);
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt == kMaxRedraws) throw Error("generate_afs1: weights never select a feature");
      for (std::size_t i = 0; i < d; ++i) mask.set(i, afs1_bit(wv1[i], afs1_draw(seed, l, attempt, i, d)));
      if (mask.count() > 0) break;
    }
    masks.push_back(std::move(mask));
  }
  return masks;
}

std::vector<EvaluatedSubset> evaluate_subsets(const std::vector<FeatureMask>& masks, const EncodedDataset& train,
                                              const EncodedDataset& test, const NFFSConfig& config,
                                              unsigned threads) {
  if (masks.empty()) throw Error("evaluate_subsets: no subsets");
  std::vector<EvaluatedSubset> out(masks.size());
  parallel_for(masks.size(), threads, [&](std::size_t i) {
    out[i].mask = masks[i];
    out[i].fitness = fitness(masks[i], train, test, config.param_groups, config.pca_ratio, config.base_seed);
  });
  return out;
}

std::vector<std::size_t> rank_by_fitness(const std::vector<EvaluatedSubset>& evaluated) {
  std::vector<std::size_t> order(evaluated.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (evaluated[a].fitness != evaluated[b].fitness) return evaluated[a].fitness > evaluated[b].fitness;
    return evaluated[a].mask.count() < evaluated[b].mask.count();
  });
  return order;
}

FrequencyVectors count_frequencies(const std::vector<EvaluatedSubset>& evaluated, std::size_t top_count,
                                   std::size_t bottom_count) {
  if (top_count + bottom_count > evaluated.size())
    throw Error("count_frequencies: top_count + bottom_count exceeds the number of subsets");
  if (evaluated.empty()) throw Error("count_frequencies: no subsets");
  const std::size_t d = evaluated.front().mask.size();
  FrequencyVectors f;
  f.top.assign(d, 0);
  f.bottom.assign(d, 0);
  const auto order = rank_by_fitness(evaluated);
  const auto tally = [&](std::vector<std::size_t>& counts, std::size_t pos) {
    const auto& mask = evaluated[order[pos]].mask;
    if (mask.size() != d) throw Error("count_frequencies: masks differ in width");
    for (std::size_t i = 0; i < d; ++i) counts[i] += mask[i] ? 1 : 0;
  };
  for (std::size_t pos = 0; pos < top_count; ++pos) tally(f.top, pos);
  for (std::size_t pos = order.size() - bottom_count; pos < order.size(); ++pos) tally(f.bottom, pos);
  return f;
}

WeightVector compute_wv2(const FrequencyVectors& freqs) {
  if (freqs.top.size() != freqs.bottom.size()) throw Error("compute_wv2: frequency vectors differ in length");
  const auto norm = [](const std::vector<std::size_t>& v) {
    double sum = 0.0;
    for (auto c : v) sum += static_cast<double>(c) * static_cast<double>(c);
    return std::sqrt(sum);
  };
  const double top_norm = norm(freqs.top);
  const double bottom_norm = norm(freqs.bottom);
  WeightVector wv;
  wv.values.resize(freqs.top.size());
  for (std::size_t i = 0; i < freqs.top.size(); ++i) {
    const double t = top_norm > 0.0 ? static_cast<double>(freqs.top[i]) / top_norm : 0.0;
    const double b = bottom_norm > 0.0 ? static_cast<double>(freqs.bottom[i]) / bottom_norm : 0.0;
    wv.values[i] = t - b;
  }
  return wv;
}

std::vector<std::size_t> rank_features(const WeightVector& weights, const MIScores* tie_break) {
  if (tie_break && tie_break->size() != weights.size()) throw Error("rank_features: MI scores differ in length");
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    if (tie_break && tie_break->values[a] != tie_break->values[b]) return tie_break->values[a] > tie_break->values[b];
    return false;
  });
  return order;
}

std::vector<FeatureMask> generate_afs2(const WeightVector& wv2, std::size_t count, const MIScores* tie_break) {
  const std::size_t d = wv2.size();
  if (count < 1 || count >= d)
    throw Error("generate_afs2: count must satisfy 1 <= count < " + std::to_string(d));
  const auto order = rank_features(wv2, tie_break);
  std::vector<FeatureMask> masks;
  masks.reserve(count);
  FeatureMask mask(d);
  for (std::size_t j = 0; j < count; ++j) {
    mask.set(order[j]);
    masks.push_back(mask);
  }
  return masks;
}

NFFSResult run_nffs(const EncodedDataset& train, const EncodedDataset& test, const NFFSConfig& config,
                    unsigned threads, const ProgressLog& log) {
  const std::size_t d = train.width();
  if (test.width() != d) throw Error("train and test differ in encoded width");
  config.validate(d);
  const auto say = [&](const std::string& msg) {
    if (log) log(msg);
  };

  NFFSResult r;
  r.mi_scores = score_all(train, config.mi_bins, threads);
  say("scored " + std::to_string(d) + " features, max MI " + std::to_string(r.mi_scores.max()));

  bool collapsed = false;
  r.wv1 = compute_wv1(r.mi_scores, config.threshold, &collapsed);
  if (collapsed)
    r.warnings.push_back("threshold " + std::to_string(config.threshold) +
                         " is not below the maximum MI score; all phase-one weights are 0.5");

  const auto afs1_masks = generate_afs1(r.wv1, config.afs1_size, config.base_seed);
  say("evaluating " + std::to_string(afs1_masks.size()) + " phase-one subsets");
  r.afs1 = evaluate_subsets(afs1_masks, train, test, config, threads);

  r.frequencies = count_frequencies(r.afs1, config.top_count, config.bottom_count);
  r.wv2 = compute_wv2(r.frequencies);
  r.wv2_ranking = rank_features(r.wv2, &r.mi_scores);

  const auto afs2_masks = generate_afs2(r.wv2, config.afs2_size, &r.mi_scores);
  say("evaluating " + std::to_string(afs2_masks.size()) + " phase-two subsets");
  r.afs2 = evaluate_subsets(afs2_masks, train, test, config, threads);
  r.evaluations = r.afs1.size() + r.afs2.size();

  // Masks are nested, so the first maximum is also the smallest.
  r.best_index = 0;
  for (std::size_t j = 1; j < r.afs2.size(); ++j)
    if (r.afs2[j].fitness > r.afs2[r.best_index].fitness) r.best_index = j;
  say("best subset: " + std::to_string(r.best().mask.count()) + " features, fitness " +
      std::to_string(r.best().fitness));
  return r;
}

}  // namespace nffs
