#include "nffs/random_forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "nffs/rng.hpp"

namespace nffs {

std::string to_string(SplitRule rule) {
  switch (rule) {
    case SplitRule::sqrt: return "sqrt";
    case SplitRule::log2: return "log2";
    case SplitRule::all: return "all";
  }
  return "sqrt";
}

SplitRule parse_split_rule(const std::string& text) {
  if (text == "sqrt") return SplitRule::sqrt;
  if (text == "log2") return SplitRule::log2;
  if (text == "all") return SplitRule::all;
  throw Error("unknown features_per_split rule '" + text + "' (expected sqrt, log2 or all)");
}

std::size_t features_per_split(SplitRule rule, std::size_t k) {
  if (k == 0) return 0;
  const double kd = static_cast<double>(k);
  std::size_t m = k;
  switch (rule) {
    case SplitRule::sqrt: m = static_cast<std::size_t>(std::floor(std::sqrt(kd))); break;
    case SplitRule::log2: m = static_cast<std::size_t>(std::floor(std::log2(kd))); break;
    case SplitRule::all: m = k; break;
  }
  return std::clamp<std::size_t>(m, 1, k);
}

void HyperParamGroup::validate() const {
  if (n_trees < 1) throw Error("n_trees must be positive");
  if (max_depth && *max_depth < 1) throw Error("max_depth must be positive or unlimited");
  if (min_samples_split < 2) throw Error("min_samples_split must be at least 2");
}

nlohmann::json to_json(const HyperParamGroup& g) {
  return {{"n_trees", g.n_trees},
          {"max_depth", g.max_depth ? nlohmann::json(*g.max_depth) : nlohmann::json(nullptr)},
          {"min_samples_split", g.min_samples_split},
          {"features_per_split", to_string(g.features_per_split)},
          {"seed_offset", g.seed_offset}};
}

HyperParamGroup hyper_param_group_from_json(const nlohmann::json& doc) {
  HyperParamGroup g;
  try {
    g.n_trees = doc.value("n_trees", g.n_trees);
    if (doc.contains("max_depth") && !doc.at("max_depth").is_null()) {
      const auto& depth = doc.at("max_depth");
      if (depth.is_string()) {
        if (depth.get<std::string>() != "unlimited") throw Error("max_depth must be an integer, null or \"unlimited\"");
      } else {
        g.max_depth = depth.get<int>();
      }
    }
    g.min_samples_split = doc.value("min_samples_split", g.min_samples_split);
    if (doc.contains("features_per_split")) g.features_per_split = parse_split_rule(doc.at("features_per_split").get<std::string>());
    g.seed_offset = doc.value("seed_offset", g.seed_offset);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed parameter group: ") + e.what());
  }
  g.validate();
  return g;
}

std::size_t DecisionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  std::size_t deepest = 0;
  while (!stack.empty()) {
    const auto [id, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    const auto& node = nodes_[static_cast<std::size_t>(id)];
    if (!node.is_leaf()) {
      stack.emplace_back(node.left, d + 1);
      stack.emplace_back(node.right, d + 1);
    }
  }
  return deepest;
}

int DecisionTree::predict(const Matrix& x, Eigen::Index row) const {
  int id = 0;
  for (;;) {
    const auto& node = nodes_[static_cast<std::size_t>(id)];
    if (node.is_leaf()) return node.vote();
    id = x(row, node.feature) <= node.threshold ? node.left : node.right;
  }
}

namespace {

struct Sample {
  std::uint32_t row;
  std::uint32_t weight;
};

struct SortedEntry {
  double value;
  std::uint32_t weight;
  int label;
};

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;  // n_L * gini_L + n_R * gini_R
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, const Labels& y, const HyperParamGroup& params, std::uint64_t seed)
      : x_(x), y_(y), params_(params), rng_(seed) {
    mtry_ = features_per_split(params.features_per_split, static_cast<std::size_t>(x.cols()));
    features_.resize(static_cast<std::size_t>(x.cols()));
  }

  DecisionTree build() {
    const auto n = static_cast<std::uint32_t>(x_.rows());
    std::vector<std::uint32_t> multiplicity(n, 0);
    for (std::uint32_t draw = 0; draw < n; ++draw) ++multiplicity[rng_.below(n)];
    samples_.clear();
    for (std::uint32_t i = 0; i < n; ++i)
      if (multiplicity[i]) samples_.push_back({i, multiplicity[i]});

    nodes_.clear();
    nodes_.emplace_back();
    struct Work {
      int node;
      std::size_t begin, end;
      int depth;
    };
    std::vector<Work> stack{{0, 0, samples_.size(), 0}};
    while (!stack.empty()) {
      const Work w = stack.back();
      stack.pop_back();

      std::uint32_t c0 = 0, c1 = 0;
      for (std::size_t i = w.begin; i < w.end; ++i) (y_[samples_[i].row] ? c1 : c0) += samples_[i].weight;
      nodes_[static_cast<std::size_t>(w.node)].count0 = c0;
      nodes_[static_cast<std::size_t>(w.node)].count1 = c1;

      const bool pure = c0 == 0 || c1 == 0;
      const bool too_deep = params_.max_depth && w.depth >= *params_.max_depth;
      const bool too_small = c0 + c1 < static_cast<std::uint32_t>(params_.min_samples_split);
      if (pure || too_deep || too_small) continue;

      const Split split = best_split(w.begin, w.end);
      if (split.feature < 0) continue;

      const auto mid_it = std::partition(samples_.begin() + static_cast<std::ptrdiff_t>(w.begin),
                                         samples_.begin() + static_cast<std::ptrdiff_t>(w.end),
                                         [&](const Sample& s) { return x_(s.row, split.feature) <= split.threshold; });
      const auto mid = static_cast<std::size_t>(mid_it - samples_.begin());

      const int left = static_cast<int>(nodes_.size());
      nodes_.emplace_back();
      nodes_.emplace_back();
      auto& node = nodes_[static_cast<std::size_t>(w.node)];
      node.feature = split.feature;
      node.threshold = split.threshold;
      node.left = left;
      node.right = left + 1;
      stack.push_back({left + 1, mid, w.end, w.depth + 1});
      stack.push_back({left, w.begin, mid, w.depth + 1});
    }
    return DecisionTree(std::move(nodes_));
  }

 private:
  Split best_split(std::size_t begin, std::size_t end) {
    std::iota(features_.begin(), features_.end(), 0);
    Split best;
    std::size_t informative_seen = 0;
    // Visit features in random order until mtry non-constant ones were tried.
    for (std::size_t f = 0; f < features_.size() && informative_seen < mtry_; ++f) {
      const std::size_t pick = f + static_cast<std::size_t>(rng_.below(features_.size() - f));
      std::swap(features_[f], features_[pick]);
      const int feature = features_[f];

      buffer_.clear();
      for (std::size_t i = begin; i < end; ++i) {
        const auto& s = samples_[i];
        buffer_.push_back({x_(s.row, feature), s.weight, y_[s.row]});
      }
      std::sort(buffer_.begin(), buffer_.end(),
                [](const SortedEntry& a, const SortedEntry& b) { return a.value < b.value; });
      if (buffer_.front().value == buffer_.back().value) continue;
      ++informative_seen;

      double total0 = 0, total1 = 0;
      for (const auto& e : buffer_) (e.label ? total1 : total0) += e.weight;
      double left0 = 0, left1 = 0;
      for (std::size_t i = 0; i + 1 < buffer_.size(); ++i) {
        (buffer_[i].label ? left1 : left0) += buffer_[i].weight;
        if (buffer_[i].value == buffer_[i + 1].value) continue;
        const double nl = left0 + left1;
        const double r0 = total0 - left0, r1 = total1 - left1;
        const double nr = r0 + r1;
        const double impurity = (nl - (left0 * left0 + left1 * left1) / nl) + (nr - (r0 * r0 + r1 * r1) / nr);
        if (best.feature < 0 || impurity < best.impurity) {
          double threshold = 0.5 * (buffer_[i].value + buffer_[i + 1].value);
          if (!(threshold < buffer_[i + 1].value)) threshold = buffer_[i].value;
          best = {feature, threshold, impurity};
        }
      }
    }
    return best;
  }

  const Matrix& x_;
  const Labels& y_;
  const HyperParamGroup& params_;
  SplitMix64 rng_;
  std::size_t mtry_ = 1;
  std::vector<int> features_;
  std::vector<Sample> samples_;
  std::vector<SortedEntry> buffer_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

RandomForestModel fit_forest(const Matrix& x, const Labels& y, const HyperParamGroup& params, std::uint64_t seed) {
  params.validate();
  if (x.rows() == 0 || x.cols() == 0) throw Error("fit_forest: empty input");
  if (static_cast<std::size_t>(x.rows()) != y.size()) throw Error("fit_forest: label count does not match rows");
  for (int label : y)
    if (label != 0 && label != 1) throw Error("fit_forest: labels must be 0 or 1");

  RandomForestModel model;
  model.params = params;
  model.seed = seed;
  model.input_width = x.cols();
  model.trees.reserve(static_cast<std::size_t>(params.n_trees));
  for (int t = 0; t < params.n_trees; ++t) {
    TreeBuilder builder(x, y, params, stream_key(seed, static_cast<std::uint64_t>(t)));
    model.trees.push_back(builder.build());
  }
  return model;
}

std::vector<double> predict_proba(const RandomForestModel& model, const Matrix& x) {
  if (x.cols() != model.input_width)
    throw Error("forest expects " + std::to_string(model.input_width) + " columns, got " + std::to_string(x.cols()));
  if (model.trees.empty()) throw Error("forest has no trees");
  std::vector<double> proba(static_cast<std::size_t>(x.rows()), 0.0);
  const auto n_trees = static_cast<double>(model.trees.size());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    int votes = 0;
    for (const auto& tree : model.trees) votes += tree.predict(x, r);
    proba[static_cast<std::size_t>(r)] = static_cast<double>(votes) / n_trees;
  }
  return proba;
}

}  // namespace nffs
