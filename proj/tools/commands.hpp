#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "nffs/metrics.hpp"
#include "run_config.hpp"

namespace nffs::cli {

struct CommandOptions {
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
};

struct PreparedData {
  FeatureSchema schema;
  RawDataset raw_train;
  EncodedDataset train;
  std::optional<EncodedDataset> test;
};

// Loads the CSVs, loads or fits the schema, and encodes both splits.
PreparedData prepare(const RunConfig& config, bool need_test);

struct EncodeSummary {
  std::size_t raw_width = 0;
  std::size_t encoded_width = 0;
};

// Writes schema.json and encode_summary.json.
EncodeSummary cmd_encode(const RunConfig& config, const CommandOptions& options, std::ostream& log);

// Writes mi_histogram.json, mi_histogram.csv and mi_scores.csv.
MIHistogram cmd_mi_hist(const RunConfig& config, const CommandOptions& options, std::ostream& log);

// Writes report.json and best_subset.txt.
NFFSResult cmd_select(const RunConfig& config, const CommandOptions& options, std::ostream& log);

// Writes evaluation.json: per-seed indicators plus mean and std.
AggregateReport cmd_evaluate(const RunConfig& config, const std::filesystem::path& mask_file,
                             const CommandOptions& options, std::ostream& log);

}  // namespace nffs::cli
