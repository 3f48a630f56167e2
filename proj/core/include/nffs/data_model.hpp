#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nffs/types.hpp"

namespace nffs {

// Cells exactly as read; no type coercion. `rows[r]` holds the feature cells
// of record r (label column removed); `labels[r]` its raw label string.
struct RawDataset {
  std::vector<std::string> feature_names;
  std::string label_name;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return rows.size(); }
  std::size_t width() const noexcept { return feature_names.size(); }
};

struct CsvOptions {
  bool has_header = true;
  // Column holding the class label; negative values count from the end
  // (-1 = last column).
  int label_column = -1;
  // Columns dropped on load (same indexing rule as label_column).
  std::vector<int> ignore_columns;
};

// Without a header, features are named f1, f2, ... after their 1-based
// column position in the file.
RawDataset load_csv(const std::string& path, const CsvOptions& options = {});
RawDataset parse_csv(std::istream& in, const CsvOptions& options = {});

enum class FeatureKind { numeric, binary, categorical };

std::string to_string(FeatureKind kind);
FeatureKind parse_feature_kind(const std::string& text);

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::numeric;
  std::vector<std::string> categories;  // categorical only, sorted

  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

struct FeatureSchema {
  std::vector<FeatureSpec> features;
  // A label maps to 1 iff it is in positive_labels. When negative_labels is
  // non-empty the rule flips: a label maps to 0 iff it is in
  // negative_labels, which keeps attack types that only occur in test data
  // on the attack side.
  std::vector<std::string> positive_labels;
  std::vector<std::string> negative_labels;

  std::size_t raw_width() const noexcept { return features.size(); }
  std::size_t encoded_width() const noexcept;
  std::vector<std::string> encoded_names() const;
  int label_value(const std::string& raw_label) const;

  // Encoded column range [first, first + count) produced by raw feature i.
  std::pair<std::size_t, std::size_t> encoded_span(std::size_t feature) const;

  friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;
};

struct SchemaOptions {
  std::map<std::string, FeatureKind> kind_overrides;
  std::vector<std::string> positive_labels;
  std::vector<std::string> negative_labels;
};

// Infers feature kinds and learns categorical vocabularies from `train`.
// `extra_vocabulary`, when given, contributes additional category values
// (used for fitting the encoder on the union of train and test).
FeatureSchema fit_schema(const RawDataset& train, const SchemaOptions& options,
                         const RawDataset* extra_vocabulary = nullptr);

nlohmann::json schema_to_json(const FeatureSchema& schema);
FeatureSchema schema_from_json(const nlohmann::json& doc);
FeatureSchema load_schema(const std::string& path);
void save_schema(const FeatureSchema& schema, const std::string& path);

struct EncodedDataset {
  Matrix x;  // rows x encoded features
  Labels y;
  std::vector<std::string> names;

  std::size_t size() const noexcept { return static_cast<std::size_t>(x.rows()); }
  std::size_t width() const noexcept { return static_cast<std::size_t>(x.cols()); }
};

inline constexpr char kOneHotSeparator = '_';

EncodedDataset encode(const RawDataset& data, const FeatureSchema& schema);

// Keeps the selected columns in their original order.
EncodedDataset apply_mask(const EncodedDataset& data, const FeatureMask& mask);

// Resolves feature names to a mask over the encoded space. Exact encoded
// names win; a raw feature name selects every encoded column it produced.
// Throws listing every name that matches neither.
FeatureMask mask_from_names(const FeatureSchema& schema, const std::vector<std::string>& names);

// Reads a mask file: one feature name per line, '#' starts a comment.
std::vector<std::string> read_name_list(const std::string& path);

}  // namespace nffs
