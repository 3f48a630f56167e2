#include "nffs/data_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "nffs/csv.hpp"

namespace nffs {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::size_t resolve_column(int index, std::size_t arity, const char* what) {
  const long long resolved = index < 0 ? static_cast<long long>(arity) + index : index;
  if (resolved < 0 || resolved >= static_cast<long long>(arity))
    throw Error(std::string(what) + " index " + std::to_string(index) + " out of range for " +
                std::to_string(arity) + " columns");
  return static_cast<std::size_t>(resolved);
}

std::string join(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

RawDataset parse_csv(std::istream& in, const CsvOptions& options) {
  const csv::Document doc = csv::parse(in);
  const std::size_t first_data = options.has_header ? 1 : 0;
  if (doc.records.size() <= first_data) throw Error("empty dataset");

  const std::size_t arity = doc.records.front().size();
  const std::size_t label_col = resolve_column(options.label_column, arity, "label column");
  std::vector<bool> keep(arity, true);
  keep[label_col] = false;
  for (int c : options.ignore_columns) {
    const std::size_t col = resolve_column(c, arity, "ignored column");
    if (col == label_col) throw Error("label column cannot be ignored");
    keep[col] = false;
  }

  RawDataset out;
  for (std::size_t c = 0; c < arity; ++c) {
    std::string name =
        options.has_header ? std::string(trim(doc.records.front()[c])) : "f" + std::to_string(c + 1);
    if (c == label_col)
      out.label_name = std::move(name);
    else if (keep[c])
      out.feature_names.push_back(std::move(name));
  }
  {
    auto sorted = out.feature_names;
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw Error("duplicate feature name '" + *dup + "'");
  }

  out.rows.reserve(doc.records.size() - first_data);
  out.labels.reserve(doc.records.size() - first_data);
  for (std::size_t r = first_data; r < doc.records.size(); ++r) {
    const auto& record = doc.records[r];
    const std::size_t row_number = r - first_data + 1;
    if (record.size() != arity)
      throw Error("row " + std::to_string(row_number) + " (line " + std::to_string(doc.line_numbers[r]) +
                  ") has " + std::to_string(record.size()) + " cells, expected " + std::to_string(arity));
    std::vector<std::string> cells;
    cells.reserve(out.feature_names.size());
    for (std::size_t c = 0; c < arity; ++c) {
      if (!keep[c] && c != label_col) continue;
      std::string value(trim(record[c]));
      if (value.empty())
        throw Error("missing value at row " + std::to_string(row_number) + ", column " + std::to_string(c + 1));
      if (c == label_col)
        out.labels.push_back(std::move(value));
      else
        cells.push_back(std::move(value));
    }
    out.rows.push_back(std::move(cells));
  }
  return out;
}

RawDataset load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return parse_csv(in, options);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::numeric: return "numeric";
    case FeatureKind::binary: return "binary";
    case FeatureKind::categorical: return "categorical";
  }
  return "numeric";
}

FeatureKind parse_feature_kind(const std::string& text) {
  if (text == "numeric") return FeatureKind::numeric;
  if (text == "binary") return FeatureKind::binary;
  if (text == "categorical") return FeatureKind::categorical;
  throw Error("unknown feature kind '" + text + "' (expected numeric, binary or categorical)");
}

std::size_t FeatureSchema::encoded_width() const noexcept {
  std::size_t d = 0;
  for (const auto& f : features) d += f.kind == FeatureKind::categorical ? f.categories.size() : 1;
  return d;
}

std::vector<std::string> FeatureSchema::encoded_names() const {
  std::vector<std::string> names;
  names.reserve(encoded_width());
  for (const auto& f : features) {
    if (f.kind != FeatureKind::categorical) {
      names.push_back(f.name);
      continue;
    }
    for (const auto& cat : f.categories) names.push_back(f.name + kOneHotSeparator + cat);
  }
  return names;
}

std::pair<std::size_t, std::size_t> FeatureSchema::encoded_span(std::size_t feature) const {
  std::size_t first = 0;
  for (std::size_t i = 0; i < feature; ++i)
    first += features[i].kind == FeatureKind::categorical ? features[i].categories.size() : 1;
  const auto& f = features.at(feature);
  return {first, f.kind == FeatureKind::categorical ? f.categories.size() : 1};
}

int FeatureSchema::label_value(const std::string& raw_label) const {
  if (!negative_labels.empty())
    return std::find(negative_labels.begin(), negative_labels.end(), raw_label) == negative_labels.end() ? 1 : 0;
  return std::find(positive_labels.begin(), positive_labels.end(), raw_label) != positive_labels.end() ? 1 : 0;
}

FeatureSchema fit_schema(const RawDataset& train, const SchemaOptions& options,
                         const RawDataset* extra_vocabulary) {
  if (train.size() == 0) throw Error("empty dataset");
  const std::size_t width = train.width();

  for (const auto& [name, kind] : options.kind_overrides) {
    if (std::find(train.feature_names.begin(), train.feature_names.end(), name) == train.feature_names.end())
      throw Error("kind override names unknown feature '" + name + "'");
  }

  if (options.positive_labels.empty() == options.negative_labels.empty())
    throw Error("exactly one of positive_labels or negative_labels must be given");
  const auto& label_set = options.negative_labels.empty() ? options.positive_labels : options.negative_labels;
  const bool matched = std::any_of(train.labels.begin(), train.labels.end(), [&](const std::string& l) {
    return std::find(label_set.begin(), label_set.end(), l) != label_set.end();
  });
  if (!matched)
    throw Error(std::string(options.negative_labels.empty() ? "positive" : "negative") +
                " labels [" + join(label_set) + "] match no training label");

  std::vector<std::size_t> extra_column(width, width);
  if (extra_vocabulary) {
    for (std::size_t c = 0; c < width; ++c) {
      const auto& names = extra_vocabulary->feature_names;
      const auto it = std::find(names.begin(), names.end(), train.feature_names[c]);
      if (it == names.end())
        throw Error("feature '" + train.feature_names[c] + "' missing from vocabulary dataset");
      extra_column[c] = static_cast<std::size_t>(it - names.begin());
    }
  }

  FeatureSchema schema;
  schema.positive_labels = options.positive_labels;
  schema.negative_labels = options.negative_labels;
  for (auto* labels : {&schema.positive_labels, &schema.negative_labels}) {
    std::sort(labels->begin(), labels->end());
    labels->erase(std::unique(labels->begin(), labels->end()), labels->end());
  }

  for (std::size_t c = 0; c < width; ++c) {
    FeatureSpec spec;
    spec.name = train.feature_names[c];
    bool all_numeric = true;
    bool all_binary = true;
    for (const auto& row : train.rows) {
      const auto v = parse_number(row[c]);
      if (!v) {
        all_numeric = all_binary = false;
        break;
      }
      if (*v != 0.0 && *v != 1.0) all_binary = false;
    }

    const auto override_it = options.kind_overrides.find(spec.name);
    if (override_it != options.kind_overrides.end()) {
      spec.kind = override_it->second;
      if (spec.kind == FeatureKind::numeric && !all_numeric)
        throw Error("feature '" + spec.name + "' overridden as numeric but has non-numeric values");
      if (spec.kind == FeatureKind::binary && !all_binary)
        throw Error("feature '" + spec.name + "' overridden as binary but has values outside {0,1}");
    } else {
      spec.kind = all_binary ? FeatureKind::binary : all_numeric ? FeatureKind::numeric : FeatureKind::categorical;
    }

    if (spec.kind == FeatureKind::categorical) {
      std::vector<std::string> vocab;
      vocab.reserve(train.size());
      for (const auto& row : train.rows) vocab.push_back(row[c]);
      if (extra_vocabulary)
        for (const auto& row : extra_vocabulary->rows) vocab.push_back(row[extra_column[c]]);
      std::sort(vocab.begin(), vocab.end());
      vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
      spec.categories = std::move(vocab);
    }
    schema.features.push_back(std::move(spec));
  }
  return schema;
}

nlohmann::json schema_to_json(const FeatureSchema& schema) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& f : schema.features) {
    nlohmann::json entry = {{"name", f.name}, {"kind", to_string(f.kind)}};
    if (f.kind == FeatureKind::categorical) entry["categories"] = f.categories;
    features.push_back(std::move(entry));
  }
  nlohmann::json doc = {{"features", std::move(features)}, {"positive_labels", schema.positive_labels}};
  if (!schema.negative_labels.empty()) doc["negative_labels"] = schema.negative_labels;
  return doc;
}

FeatureSchema schema_from_json(const nlohmann::json& doc) {
  FeatureSchema schema;
  try {
    for (const auto& entry : doc.at("features")) {
      FeatureSpec spec;
      spec.name = entry.at("name").get<std::string>();
      spec.kind = parse_feature_kind(entry.at("kind").get<std::string>());
      if (spec.kind == FeatureKind::categorical) {
        spec.categories = entry.at("categories").get<std::vector<std::string>>();
        if (spec.categories.empty()) throw Error("feature '" + spec.name + "' has an empty vocabulary");
        if (!std::is_sorted(spec.categories.begin(), spec.categories.end()) ||
            std::adjacent_find(spec.categories.begin(), spec.categories.end()) != spec.categories.end())
          throw Error("vocabulary of feature '" + spec.name + "' must be sorted and duplicate-free");
      } else if (entry.contains("categories")) {
        throw Error("non-categorical feature '" + spec.name + "' carries categories");
      }
      schema.features.push_back(std::move(spec));
    }
    schema.positive_labels = doc.value("positive_labels", std::vector<std::string>{});
    schema.negative_labels = doc.value("negative_labels", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed schema: ") + e.what());
  }
  if (schema.positive_labels.empty() && schema.negative_labels.empty())
    throw Error("malformed schema: no positive or negative labels");
  return schema;
}

FeatureSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open schema '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error("schema '" + path + "' is not valid JSON: " + e.what());
  }
  return schema_from_json(doc);
}

void save_schema(const FeatureSchema& schema, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write schema '" + path + "'");
  out << schema_to_json(schema).dump(2) << '\n';
}

EncodedDataset encode(const RawDataset& data, const FeatureSchema& schema) {
  if (data.feature_names.size() != schema.features.size())
    throw Error("dataset has " + std::to_string(data.width()) + " features, schema expects " +
                std::to_string(schema.raw_width()));
  for (std::size_t c = 0; c < schema.features.size(); ++c)
    if (data.feature_names[c] != schema.features[c].name)
      throw Error("column " + std::to_string(c + 1) + " is '" + data.feature_names[c] + "', schema expects '" +
                  schema.features[c].name + "'");

  EncodedDataset out;
  out.names = schema.encoded_names();
  out.x = Matrix::Zero(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(out.names.size()));
  out.y.resize(data.size());

  std::vector<std::unordered_map<std::string, std::size_t>> lookup(schema.features.size());
  for (std::size_t c = 0; c < schema.features.size(); ++c)
    for (std::size_t k = 0; k < schema.features[c].categories.size(); ++k)
      lookup[c].emplace(schema.features[c].categories[k], k);

  for (std::size_t r = 0; r < data.size(); ++r) {
    const auto& row = data.rows[r];
    const auto ri = static_cast<Eigen::Index>(r);
    Eigen::Index col = 0;
    for (std::size_t c = 0; c < schema.features.size(); ++c) {
      const auto& spec = schema.features[c];
      if (spec.kind == FeatureKind::categorical) {
        const auto it = lookup[c].find(row[c]);
        if (it != lookup[c].end()) out.x(ri, col + static_cast<Eigen::Index>(it->second)) = 1.0;
        col += static_cast<Eigen::Index>(spec.categories.size());
        continue;
      }
      const auto v = parse_number(row[c]);
      if (!v)
        throw Error("row " + std::to_string(r + 1) + ", column '" + spec.name + "': cannot parse '" + row[c] +
                    "' as a number");
      out.x(ri, col++) = *v;
    }
    out.y[r] = schema.label_value(data.labels[r]);
  }
  return out;
}

EncodedDataset apply_mask(const EncodedDataset& data, const FeatureMask& mask) {
  if (mask.size() != data.width())
    throw Error("mask width " + std::to_string(mask.size()) + " does not match dataset width " +
                std::to_string(data.width()));
  const auto selected = mask.indices();
  if (selected.empty()) throw Error("empty feature subset");
  EncodedDataset out;
  out.x.resize(data.x.rows(), static_cast<Eigen::Index>(selected.size()));
  out.names.reserve(selected.size());
  for (std::size_t j = 0; j < selected.size(); ++j) {
    out.x.col(static_cast<Eigen::Index>(j)) = data.x.col(static_cast<Eigen::Index>(selected[j]));
    out.names.push_back(data.names[selected[j]]);
  }
  out.y = data.y;
  return out;
}

FeatureMask mask_from_names(const FeatureSchema& schema, const std::vector<std::string>& names) {
  if (names.empty()) throw Error("empty feature subset");
  const auto encoded = schema.encoded_names();
  std::unordered_map<std::string, std::size_t> encoded_index;
  for (std::size_t i = 0; i < encoded.size(); ++i) encoded_index.emplace(encoded[i], i);

  FeatureMask mask(encoded.size());
  std::vector<std::string> unknown;
  for (const auto& name : names) {
    if (const auto it = encoded_index.find(name); it != encoded_index.end()) {
      mask.set(it->second);
      continue;
    }
    const auto raw = std::find_if(schema.features.begin(), schema.features.end(),
                                  [&](const FeatureSpec& f) { return f.name == name; });
    if (raw == schema.features.end()) {
      unknown.push_back(name);
      continue;
    }
    const auto [first, count] = schema.encoded_span(static_cast<std::size_t>(raw - schema.features.begin()));
    for (std::size_t i = first; i < first + count; ++i) mask.set(i);
  }
  if (!unknown.empty()) throw Error("unknown feature names: " + join(unknown));
  return mask;
}

std::vector<std::string> read_name_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mask file '" + path + "'");
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto name = trim(line);
    if (!name.empty()) names.emplace_back(name);
  }
  return names;
}

}  // namespace nffs
