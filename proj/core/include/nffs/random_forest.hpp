#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nffs/types.hpp"

namespace nffs {

enum class SplitRule { sqrt, log2, all };

std::string to_string(SplitRule rule);
SplitRule parse_split_rule(const std::string& text);

// Number of candidate features examined per node for a k-wide input.
std::size_t features_per_split(SplitRule rule, std::size_t k);

struct HyperParamGroup {
  int n_trees = 100;
  std::optional<int> max_depth;  // nullopt = grow until pure
  int min_samples_split = 2;
  SplitRule features_per_split = SplitRule::sqrt;
  int seed_offset = 0;

  void validate() const;
  friend bool operator==(const HyperParamGroup&, const HyperParamGroup&) = default;
};

nlohmann::json to_json(const HyperParamGroup& group);
HyperParamGroup hyper_param_group_from_json(const nlohmann::json& doc);

// Flat CART node. Internal nodes have feature >= 0; samples with
// x[feature] <= threshold go left. Class counts include bootstrap
// multiplicity and are kept on every node.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::uint32_t count0 = 0;
  std::uint32_t count1 = 0;

  bool is_leaf() const noexcept { return feature < 0; }
  // Majority class; ties go to class 1.
  int vote() const noexcept { return count1 >= count0 ? 1 : 0; }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class DecisionTree {
 public:
  DecisionTree() = default;
  explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t depth() const;
  int predict(const Matrix& x, Eigen::Index row) const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  std::vector<TreeNode> nodes_;
};

struct RandomForestModel {
  std::vector<DecisionTree> trees;
  HyperParamGroup params;
  std::uint64_t seed = 0;
  Eigen::Index input_width = 0;

  friend bool operator==(const RandomForestModel&, const RandomForestModel&) = default;
};

// Each tree sees a bootstrap sample of n draws with replacement taken from a
// stream keyed by (seed, tree index); splits minimize weighted Gini impurity
// over a fresh random feature subset at every node.
RandomForestModel fit_forest(const Matrix& x, const Labels& y, const HyperParamGroup& params, std::uint64_t seed);

// Fraction of trees whose leaf votes class 1.
std::vector<double> predict_proba(const RandomForestModel& model, const Matrix& x);

}  // namespace nffs
