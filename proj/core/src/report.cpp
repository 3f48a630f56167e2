#include <nlohmann/json.hpp>

#include "nffs/nffs.hpp"

namespace nffs {

nlohmann::json to_json(const NFFSConfig& c) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : c.param_groups) groups.push_back(to_json(g));
  return {{"afs1_size", c.afs1_size}, {"top_count", c.top_count},   {"bottom_count", c.bottom_count},
          {"afs2_size", c.afs2_size}, {"threshold", c.threshold},   {"mi_bins", c.mi_bins},
          {"pca_ratio", c.pca_ratio}, {"base_seed", c.base_seed},   {"param_groups", std::move(groups)}};
}

NFFSConfig nffs_config_from_json(const nlohmann::json& doc) {
  NFFSConfig c;
  try {
    c.afs1_size = doc.value("afs1_size", c.afs1_size);
    c.top_count = doc.value("top_count", c.top_count);
    c.bottom_count = doc.value("bottom_count", c.bottom_count);
    c.afs2_size = doc.value("afs2_size", c.afs2_size);
    c.threshold = doc.value("threshold", c.threshold);
    c.mi_bins = doc.value("mi_bins", c.mi_bins);
    c.pca_ratio = doc.value("pca_ratio", c.pca_ratio);
    c.base_seed = doc.value("base_seed", c.base_seed);
    if (doc.contains("param_groups")) {
      c.param_groups.clear();
      for (const auto& g : doc.at("param_groups")) c.param_groups.push_back(hyper_param_group_from_json(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed selection config: ") + e.what());
  }
  c.validate(0);
  return c;
}

nlohmann::json mask_to_json(const FeatureMask& mask, const std::vector<std::string>& names) {
  if (names.size() != mask.size()) throw Error("mask_to_json: name count does not match mask width");
  std::vector<int> bits(mask.size());
  std::vector<std::string> selected;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    bits[i] = mask[i] ? 1 : 0;
    if (mask[i]) selected.push_back(names[i]);
  }
  return {{"bits", std::move(bits)}, {"features", std::move(selected)}};
}

nlohmann::json report_to_json(const NFFSResult& r, const NFFSConfig& config, const std::vector<std::string>& names) {
  const auto subsets = [&](const std::vector<EvaluatedSubset>& list) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : list) {
      auto entry = mask_to_json(s.mask, names);
      entry["size"] = s.mask.count();
      entry["fitness"] = s.fitness;
      out.push_back(std::move(entry));
    }
    return out;
  };
  std::vector<std::string> ranking;
  ranking.reserve(r.wv2_ranking.size());
  for (auto i : r.wv2_ranking) ranking.push_back(names.at(i));

  const auto& best = r.best();
  return {{"config", to_json(config)},
          {"feature_names", names},
          {"mi_scores", r.mi_scores.values},
          {"wv1", r.wv1.values},
          {"afs1", subsets(r.afs1)},
          {"f_top", r.frequencies.top},
          {"f_bottom", r.frequencies.bottom},
          {"wv2", r.wv2.values},
          {"wv2_ranking", std::move(ranking)},
          {"afs2", subsets(r.afs2)},
          {"best",
           {{"index", r.best_index},
            {"size", best.mask.count()},
            {"fitness", best.fitness},
            {"feature_names", mask_to_json(best.mask, names).at("features")},
            {"bits", mask_to_json(best.mask, names).at("bits")}}},
          {"evaluations", r.evaluations},
          {"warnings", r.warnings}};
}

}  // namespace nffs
