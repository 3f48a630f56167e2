#include "run_config.hpp"

#include <fstream>

namespace nffs::cli {
namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

EncoderFit parse_encoder_fit(const std::string& text) {
  if (text == "train") return EncoderFit::train;
  if (text == "union") return EncoderFit::union_of_train_and_test;
  throw Error("fit_encoder_on must be 'train' or 'union', got '" + text + "'");
}

std::string to_string(EncoderFit fit) { return fit == EncoderFit::train ? "train" : "union"; }

nlohmann::json RunConfig::to_json() const {
  nlohmann::json overrides = nlohmann::json::object();
  for (const auto& [name, kind] : schema_options.kind_overrides) overrides[name] = nffs::to_string(kind);
  nlohmann::json doc = {
      {"train", train.generic_string()},
      {"test", test.generic_string()},
      {"schema", schema ? nlohmann::json(schema->generic_string()) : nlohmann::json(nullptr)},
      {"has_header", csv.has_header},
      {"label_column", csv.label_column},
      {"ignore_columns", csv.ignore_columns},
      {"positive_labels", schema_options.positive_labels},
      {"negative_labels", schema_options.negative_labels},
      {"kind_overrides", std::move(overrides)},
      {"fit_encoder_on", to_string(fit_encoder_on)},
      {"histogram_bins", histogram_bins},
      {"selection", nffs::to_json(selection)},
      {"evaluation",
       {{"n_final_seeds", evaluation.n_final_seeds},
        {"seed_start", evaluation.seed_start},
        {"param_group", nffs::to_json(evaluation.param_group)}}}};
  return doc;
}

RunConfig run_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  RunConfig c;
  try {
    c.train = resolve(base_dir, doc.at("train").get<std::string>());
    if (doc.contains("test") && !doc.at("test").is_null()) c.test = resolve(base_dir, doc.at("test").get<std::string>());
    if (doc.contains("schema") && !doc.at("schema").is_null())
      c.schema = resolve(base_dir, doc.at("schema").get<std::string>());
    c.csv.has_header = doc.value("has_header", c.csv.has_header);
    c.csv.label_column = doc.value("label_column", c.csv.label_column);
    c.csv.ignore_columns = doc.value("ignore_columns", c.csv.ignore_columns);
    c.schema_options.positive_labels = doc.value("positive_labels", std::vector<std::string>{});
    c.schema_options.negative_labels = doc.value("negative_labels", std::vector<std::string>{});
    if (doc.contains("kind_overrides"))
      for (const auto& [name, kind] : doc.at("kind_overrides").items())
        c.schema_options.kind_overrides[name] = parse_feature_kind(kind.get<std::string>());
    if (doc.contains("fit_encoder_on")) c.fit_encoder_on = parse_encoder_fit(doc.at("fit_encoder_on").get<std::string>());
    c.histogram_bins = doc.value("histogram_bins", c.histogram_bins);
    if (doc.contains("selection")) c.selection = nffs_config_from_json(doc.at("selection"));
    if (doc.contains("evaluation")) {
      const auto& e = doc.at("evaluation");
      c.evaluation.n_final_seeds = e.value("n_final_seeds", c.evaluation.n_final_seeds);
      c.evaluation.seed_start = e.value("seed_start", c.evaluation.seed_start);
      if (e.contains("param_group")) c.evaluation.param_group = hyper_param_group_from_json(e.at("param_group"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed run config: ") + e.what());
  }
  if (c.histogram_bins < 1) throw Error("histogram_bins must be positive");
  if (c.evaluation.n_final_seeds < 1) throw Error("evaluation.n_final_seeds must be at least 1");
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return run_config_from_json(doc, path.parent_path());
}

}  // namespace nffs::cli
