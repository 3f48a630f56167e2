#include "commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "nffs/parallel.hpp"

namespace nffs::cli {
namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) { write_text(path, doc.dump(2) + "\n"); }

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

PreparedData prepare(const RunConfig& config, bool need_test) {
  if (need_test && config.test.empty()) throw Error("config names no test dataset");
  PreparedData data;
  data.raw_train = load_csv(config.train.string(), config.csv);
  std::optional<RawDataset> raw_test;
  if (!config.test.empty()) raw_test = load_csv(config.test.string(), config.csv);

  if (config.schema) {
    data.schema = load_schema(config.schema->string());
  } else {
    const bool use_union = config.fit_encoder_on == EncoderFit::union_of_train_and_test;
    if (use_union && !raw_test) throw Error("fit_encoder_on=union requires a test dataset");
    data.schema = fit_schema(data.raw_train, config.schema_options, use_union ? &*raw_test : nullptr);
  }
  data.train = encode(data.raw_train, data.schema);
  if (raw_test) data.test = encode(*raw_test, data.schema);
  return data;
}

EncodeSummary cmd_encode(const RunConfig& config, const CommandOptions& options, std::ostream& log) {
  const PreparedData data = prepare(config, false);
  ensure_dir(options.out_dir);
  save_schema(data.schema, (options.out_dir / "schema.json").string());

  std::map<std::string, std::size_t> kinds;
  for (const auto& f : data.schema.features) ++kinds[to_string(f.kind)];
  EncodeSummary summary{data.schema.raw_width(), data.schema.encoded_width()};
  nlohmann::json doc = {{"raw_width", summary.raw_width},
                        {"encoded_width", summary.encoded_width},
                        {"feature_kinds", kinds},
                        {"train_rows", data.train.size()},
                        {"train_positive", std::count(data.train.y.begin(), data.train.y.end(), 1)},
                        {"encoded_names", data.train.names},
                        {"config", config.to_json()}};
  if (data.test) {
    doc["test_rows"] = data.test->size();
    doc["test_positive"] = std::count(data.test->y.begin(), data.test->y.end(), 1);
  }
  write_json(options.out_dir / "encode_summary.json", doc);
  log << "raw features: " << summary.raw_width << " -> encoded features: " << summary.encoded_width << '\n';
  return summary;
}

MIHistogram cmd_mi_hist(const RunConfig& config, const CommandOptions& options, std::ostream& log) {
  const PreparedData data = prepare(config, false);
  const MIScores scores = score_all(data.train, config.selection.mi_bins, options.threads);
  const MIHistogram hist = mi_histogram(scores, config.histogram_bins, config.selection.threshold);

  ensure_dir(options.out_dir);
  write_json(options.out_dir / "mi_histogram.json", histogram_to_json(hist));
  write_text(options.out_dir / "mi_histogram.csv", histogram_to_csv(hist));
  std::ostringstream scores_csv;
  scores_csv.precision(17);
  scores_csv << "feature,mi\n";
  for (std::size_t i = 0; i < scores.size(); ++i) scores_csv << data.train.names[i] << ',' << scores.values[i] << '\n';
  write_text(options.out_dir / "mi_scores.csv", scores_csv.str());

  const auto above = std::count_if(scores.values.begin(), scores.values.end(),
                                   [&](double v) { return v > config.selection.threshold; });
  log << "scored " << scores.size() << " features; max MI " << scores.max() << "; " << above
      << " above threshold " << config.selection.threshold << '\n';
  return hist;
}

NFFSResult cmd_select(const RunConfig& config, const CommandOptions& options, std::ostream& log) {
  const PreparedData data = prepare(config, true);
  NFFSResult result =
      run_nffs(data.train, *data.test, config.selection, options.threads, [&](std::string_view m) { log << m << '\n'; });
  for (const auto& w : result.warnings) log << "warning: " << w << '\n';

  auto report = report_to_json(result, config.selection, data.train.names);
  report["run_config"] = config.to_json();
  ensure_dir(options.out_dir);
  write_json(options.out_dir / "report.json", report);

  std::ostringstream names;
  names << "# best subset: " << result.best().mask.count() << " features, fitness " << result.best().fitness << '\n';
  for (auto i : result.best().mask.indices()) names << data.train.names[i] << '\n';
  write_text(options.out_dir / "best_subset.txt", names.str());

  log << "evaluations: " << result.evaluations << " (" << config.selection.afs1_size << " + "
      << config.selection.afs2_size << ")\n";
  return result;
}

AggregateReport cmd_evaluate(const RunConfig& config, const std::filesystem::path& mask_file,
                             const CommandOptions& options, std::ostream& log) {
  const PreparedData data = prepare(config, true);
  const FeatureMask mask = mask_from_names(data.schema, read_name_list(mask_file.string()));

  const auto& eval = config.evaluation;
  const auto n = static_cast<std::size_t>(eval.n_final_seeds);
  std::vector<std::uint64_t> seeds(n);
  for (std::size_t i = 0; i < n; ++i) seeds[i] = eval.seed_start + i;

  std::vector<IndicatorReport> runs(n);
  parallel_for(n, options.threads, [&](std::size_t i) {
    const auto seed = seeds[i] + static_cast<std::uint64_t>(static_cast<std::int64_t>(eval.param_group.seed_offset));
    const auto pipeline = fit_pipeline(data.train, mask, eval.param_group, config.selection.pca_ratio, seed);
    runs[i] = indicators(data.test->y, predict_pipeline(pipeline, *data.test));
  });
  const AggregateReport summary = aggregate(runs);

  nlohmann::json per_run = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    auto entry = to_json(runs[i]);
    entry["seed"] = seeds[i];
    per_run.push_back(std::move(entry));
  }
  nlohmann::json doc = {{"mask", mask_to_json(mask, data.train.names)},
                        {"mask_size", mask.count()},
                        {"seeds", seeds},
                        {"summary", to_json(summary)},
                        {"runs", std::move(per_run)},
                        {"run_config", config.to_json()}};
  ensure_dir(options.out_dir);
  write_json(options.out_dir / "evaluation.json", doc);

  log << "evaluated " << mask.count() << " encoded features over " << n << " seeds (" << seeds.front() << ".."
      << seeds.back() << ")\n";
  log << "  f_score " << summary.mean.f_score << " +- " << summary.std.f_score << ", auc " << summary.mean.auc
      << " +- " << summary.std.auc << '\n';
  return summary;
}

}  // namespace nffs::cli
