#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nffs/data_model.hpp"
#include "nffs/nffs.hpp"

namespace nffs::cli {

enum class EncoderFit { train, union_of_train_and_test };

struct EvaluationConfig {
  int n_final_seeds = 30;
  std::uint64_t seed_start = 7;
  HyperParamGroup param_group;  // defaults: 100 trees, unlimited depth
};

// Everything a command needs, read from one JSON file. Relative paths are
// resolved against the directory holding the config file.
struct RunConfig {
  std::filesystem::path train;
  std::filesystem::path test;
  std::optional<std::filesystem::path> schema;
  CsvOptions csv;
  SchemaOptions schema_options;
  EncoderFit fit_encoder_on = EncoderFit::train;
  int histogram_bins = 20;
  NFFSConfig selection;
  EvaluationConfig evaluation;

  nlohmann::json to_json() const;
};

EncoderFit parse_encoder_fit(const std::string& text);
std::string to_string(EncoderFit fit);

RunConfig run_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace nffs::cli
