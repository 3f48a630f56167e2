#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nffs/data_model.hpp"
#include "nffs/mutual_information.hpp"
#include "nffs/random_forest.hpp"

namespace nffs {

// Per-feature weights over the encoded space. Phase-one weights lie in
// [0.5, 0.9]; phase-two weights in [-1, 1].
struct WeightVector {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

struct EvaluatedSubset {
  FeatureMask mask;
  double fitness = 0.0;

  friend bool operator==(const EvaluatedSubset&, const EvaluatedSubset&) = default;
};

struct FrequencyVectors {
  std::vector<std::size_t> top;
  std::vector<std::size_t> bottom;
};

std::vector<HyperParamGroup> default_param_groups();

struct NFFSConfig {
  std::size_t afs1_size = 180;    // subsets generated in phase one
  std::size_t top_count = 45;     // best phase-one subsets counted
  std::size_t bottom_count = 45;  // worst phase-one subsets counted
  std::size_t afs2_size = 70;     // nested subsets generated in phase two
  double threshold = 0.05;        // MI scores at or below get the base weight
  int mi_bins = 10;
  std::vector<HyperParamGroup> param_groups = default_param_groups();
  double pca_ratio = 0.93;
  std::uint64_t base_seed = 7;

  // Throws unless top + bottom < afs1_size, 1 <= afs2_size < width and the
  // remaining fields are in range.
  void validate(std::size_t width) const;
};

nlohmann::json to_json(const NFFSConfig& config);
NFFSConfig nffs_config_from_json(const nlohmann::json& doc);

// Base weight 0.5 for scores at or below the threshold; above it, a linear
// ramp reaching 0.9 at the maximum score. If no score exceeds the threshold
// every weight is 0.5 and `collapsed` (when given) is set.
WeightVector compute_wv1(const MIScores& scores, double threshold, bool* collapsed = nullptr);

// Selection rule for one feature: selected iff weight - draw > 0.
constexpr bool afs1_bit(double weight, double draw) noexcept { return weight - draw > 0.0; }

// Uniform draw for bit `feature` of subset `subset`, attempt `attempt`.
double afs1_draw(std::uint64_t seed, std::size_t subset, std::size_t attempt, std::size_t feature, std::size_t width);

// `count` masks; an all-zero mask is redrawn from the next attempt's draws.
std::vector<FeatureMask> generate_afs1(const WeightVector& wv1, std::size_t count, std::uint64_t seed);

// Pairs each mask with its fitness, preserving order. Every subset trains
// with the same seeds, so results do not depend on scheduling.
std::vector<EvaluatedSubset> evaluate_subsets(const std::vector<FeatureMask>& masks, const EncodedDataset& train,
                                              const EncodedDataset& test, const NFFSConfig& config,
                                              unsigned threads = 1);

// Indices ordered best first: fitness descending, then fewer selected
// features, then lower index.
std::vector<std::size_t> rank_by_fitness(const std::vector<EvaluatedSubset>& evaluated);

FrequencyVectors count_frequencies(const std::vector<EvaluatedSubset>& evaluated, std::size_t top_count,
                                   std::size_t bottom_count);

// top/|top| - bottom/|bottom| with Euclidean norms; a zero vector stays zero.
WeightVector compute_wv2(const FrequencyVectors& freqs);

// Feature order by weight descending; ties by MI score descending (when
// given), then by index.
std::vector<std::size_t> rank_features(const WeightVector& weights, const MIScores* tie_break = nullptr);

// Mask j (0-based) selects the j + 1 highest-ranked features.
std::vector<FeatureMask> generate_afs2(const WeightVector& wv2, std::size_t count,
                                       const MIScores* tie_break = nullptr);

struct NFFSResult {
  MIScores mi_scores;
  WeightVector wv1;
  std::vector<EvaluatedSubset> afs1;
  FrequencyVectors frequencies;
  WeightVector wv2;
  std::vector<std::size_t> wv2_ranking;
  std::vector<EvaluatedSubset> afs2;
  std::size_t best_index = 0;  // into afs2
  std::size_t evaluations = 0;
  std::vector<std::string> warnings;

  const EvaluatedSubset& best() const { return afs2.at(best_index); }
};

using ProgressLog = std::function<void(std::string_view)>;

NFFSResult run_nffs(const EncodedDataset& train, const EncodedDataset& test, const NFFSConfig& config,
                    unsigned threads = 1, const ProgressLog& log = {});

nlohmann::json mask_to_json(const FeatureMask& mask, const std::vector<std::string>& names);
nlohmann::json report_to_json(const NFFSResult& result, const NFFSConfig& config,
                              const std::vector<std::string>& names);

}  // namespace nffs
