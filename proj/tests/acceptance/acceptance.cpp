// Acceptance suite: one PASS/FAIL line per criterion with its runtime.
// Exit status is non-zero if any criterion fails. The full-scale NSL-KDD
// check runs only when NFFS_NSLKDD_DIR points at KDDTrain+.txt and
// KDDTest+.txt; otherwise it reports SKIP.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "nffs/metrics.hpp"
#include "nffs/nffs.hpp"
#include "nffs/pca.hpp"
#include "nffs/rng.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

namespace {

using namespace nffs;
namespace fs = std::filesystem;

// Collects failed checks for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void near(double actual, double expected, double tol, const std::string& what) {
    if (!(std::abs(actual - expected) <= tol)) {
      std::ostringstream msg;
      msg.precision(12);
      msg << what << ": got " << actual << ", expected " << expected << " +- " << tol;
      failures_.push_back(msg.str());
    }
  }
  void note(const std::string& text) { notes_.push_back(text); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

enum class Outcome { pass, fail, skip };

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Outcome(Checks&)> body;
};

// Criterion 1: closed-form weight, normalization and indicator examples.
Outcome formula_suite(Checks& c) {
  const auto wv1 = compute_wv1(MIScores{{0.90, 0.05, 0.475, 0.02}}, 0.05);
  c.near(wv1[0], 0.9, 1e-9, "wv1 at max score");
  c.near(wv1[1], 0.5, 1e-9, "wv1 at threshold");
  c.near(wv1[3], 0.5, 1e-9, "wv1 below threshold");
  c.near(wv1[2], 0.70, 1e-9, "wv1 interpolation");

  const auto wv2 = compute_wv2({{3, 4}, {4, 3}});
  c.near(wv2[0], -0.2, 1e-9, "wv2[0]");
  c.near(wv2[1], 0.2, 1e-9, "wv2[1]");

  ConfusionMatrix cm;
  cm.tp = 50;
  cm.tn = 40;
  cm.fp = 10;
  cm.fn = 0;
  c.near(accuracy(cm).value, 0.90, 1e-9, "accuracy");
  c.near(recall(cm).value, 1.0, 1e-9, "recall");
  c.near(precision(cm).value, 5.0 / 6.0, 1e-9, "precision");
  c.near(f_score(cm).value, 10.0 / 11.0, 1e-9, "f_score");
  c.near(precision(cm).value, 0.8333, 5e-5, "precision (4 d.p.)");
  c.near(f_score(cm).value, 0.9091, 5e-5, "f_score (4 d.p.)");
  return Outcome::pass;
}

// Criterion 2: plug-in MI against explicit probability sums.
Outcome mi_oracle(Checks& c) {
  SplitMix64 rng(2);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(50);
    const auto kx = 1 + rng.below(4), ky = 1 + rng.below(4);
    std::vector<int> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<int>(rng.below(kx));
      y[i] = static_cast<int>(rng.below(ky));
    }
    worst = std::max(worst, std::abs(mutual_information(x, y) - oracle::mutual_information(x, y)));
  }
  c.near(worst, 0.0, 1e-12, "max |MI - oracle| over 200 tables");

  std::vector<int> a(1000), independent_x, independent_y;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<int>(i % 2);
  c.near(mutual_information(a, a), std::log(2.0), 1e-9, "X = Y uniform binary");
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int k = 0; k < 25; ++k) {
        independent_x.push_back(p);
        independent_y.push_back(q);
      }
  const double indep = mutual_information(independent_x, independent_y);
  c.expect(indep >= 0.0, "independent table MI is negative");
  c.near(indep, 0.0, 1e-12, "independent table");
  return Outcome::pass;
}

// Criterion 3: selection frequency for weight 0.9.
Outcome afs1_statistics(Checks& c) {
  std::size_t hits = 0;
  constexpr std::size_t trials = 10000;
  for (std::size_t s = 0; s < trials; ++s) hits += afs1_bit(0.9, afs1_draw(7, s, 0, 0, 1));
  const double freq = static_cast<double>(hits) / trials;
  c.near(freq, 0.9, 0.02, "selection frequency");
  c.note("frequency " + std::to_string(freq));
  return Outcome::pass;
}

Matrix correlated(Eigen::Index n, Eigen::Index m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix x(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) x(i, j) = normal(rng) * static_cast<double>(j + 1);
  x.col(1) += 0.7 * x.col(0);
  return x;
}

// Criterion 4: PCA and forest properties.
Outcome pca_forest(Checks& c) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix x = correlated(120, 8, seed);
    const auto p = fit_pca(x, 0.93);
    const Matrix gram = p.components * p.components.transpose();
    c.near((gram - Matrix::Identity(p.k, p.k)).cwiseAbs().maxCoeff(), 0.0, 1e-8, "orthonormal components");
    double before = 0.0;
    for (Eigen::Index i = 0; i + 1 < p.k; ++i) before += p.explained_variance_ratios(i);
    c.expect(before < 0.93 && before + p.explained_variance_ratios(p.k - 1) >= 0.93 - 1e-12,
             "k is not the smallest count reaching the ratio");
    const auto full = fit_pca(x, 1.0);
    c.expect(full.k == 8, "ratio 1 keeps all components");
    c.near((full.inverse_transform(full.transform(x)) - x).cwiseAbs().maxCoeff(), 0.0, 1e-8, "reconstruction");
  }

  const auto blobs = synthetic::separable_blobs(400, 1);
  HyperParamGroup g;
  const auto model = fit_forest(blobs.x, blobs.y, g, 7);
  const auto scores = predict_proba(model, blobs.x);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) hits += (scores[i] >= 0.5 ? 1 : 0) == blobs.y[i];
  const double acc = static_cast<double>(hits) / static_cast<double>(scores.size());
  c.expect(acc >= 0.99, "training accuracy " + std::to_string(acc) + " < 0.99");
  c.expect(fit_forest(blobs.x, blobs.y, g, 7) == model, "refit with the same seed differs");
  return Outcome::pass;
}

// Criterion 5: AUC examples and invariance.
Outcome auc_suite(Checks& c) {
  c.expect(auc(Labels{1, 0, 1, 0, 0}, std::vector<double>(5, 0.42)) == 0.5, "all-equal scores are not exactly 0.5");
  c.near(auc(Labels{1, 0, 1, 0}, std::vector<double>{0.9, 0.8, 0.7, 0.1}), 0.75, 1e-12, "hand case");
  SplitMix64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.below(200);
    Labels y(n);
    std::vector<double> s(n), transformed(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<int>(rng.below(2));
      s[i] = static_cast<double>(rng.below(20)) / 19.0;
      transformed[i] = std::atan(5.0 * s[i]) * 3.0 + 1.0;
    }
    y[0] = 0;
    y[1] = 1;
    c.near(auc(y, transformed), auc(y, s), 1e-12, "monotone invariance case " + std::to_string(t));
  }
  return Outcome::pass;
}

NFFSConfig desk_config() {
  NFFSConfig config;
  config.afs1_size = 60;
  config.top_count = 15;
  config.bottom_count = 15;
  config.afs2_size = 25;
  config.threshold = 0.01;
  return config;
}

// Criterion 6: planted-signal end to end, single-threaded.
Outcome planted_end_to_end(Checks& c) {
  const synthetic::PlantedSpec spec;
  const auto planted = synthetic::planted_dataset(spec);
  SchemaOptions options;
  options.positive_labels = {"attack"};
  const auto schema = fit_schema(planted.train, options);
  const auto train = encode(planted.train, schema);
  const auto test = encode(planted.test, schema);
  const auto config = desk_config();

  const double full = fitness(FeatureMask::all(train.width()), train, test, config.param_groups, config.pca_ratio,
                              config.base_seed);
  const auto result = run_nffs(train, test, config, 1);

  // (a)
  const double best = result.best().fitness;
  c.expect(best >= full, "best AFS2 fitness below full-set fitness");
  // (b): a planted raw feature counts when any of its encoded columns is in the top 15.
  std::set<std::string> hit;
  for (std::size_t r = 0; r < 15; ++r) {
    const auto column = result.wv2_ranking[r];
    for (std::size_t f = 0; f < schema.features.size(); ++f) {
      const auto [first, count] = schema.encoded_span(f);
      if (column >= first && column < first + count) hit.insert(schema.features[f].name);
    }
  }
  const auto planted_hits = std::count_if(planted.informative.begin(), planted.informative.end(),
                                          [&](const std::string& name) { return hit.count(name) > 0; });
  c.expect(planted_hits >= 8, "only " + std::to_string(planted_hits) + " planted features in the WV2 top 15");
  // (c)
  double mean1 = 0.0, mean2 = 0.0;
  for (const auto& e : result.afs1) mean1 += e.fitness;
  for (const auto& e : result.afs2) mean2 += e.fitness;
  mean1 /= static_cast<double>(result.afs1.size());
  mean2 /= static_cast<double>(result.afs2.size());
  c.expect(mean2 >= mean1, "mean AFS2 fitness below mean AFS1 fitness");

  std::vector<double> afs1_fitness;
  for (const auto& e : result.afs1) afs1_fitness.push_back(e.fitness);
  std::nth_element(afs1_fitness.begin(), afs1_fitness.begin() + 30, afs1_fitness.end());
  c.expect(best >= afs1_fitness[30], "best AFS2 fitness below the AFS1 median");
  c.expect(result.evaluations == 85, "evaluation count is not L + O");

  std::ostringstream note;
  note << std::fixed << std::setprecision(4) << "full " << full << ", best " << best << " ("
       << result.best().mask.count() << " features), planted in top 15: " << planted_hits
       << "/10, mean AFS1 " << mean1 << ", mean AFS2 " << mean2;
  c.note(note.str());
  return Outcome::pass;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Criterion 7: two CLI select runs produce identical bytes.
Outcome determinism(Checks& c) {
  const fs::path dir = fs::temp_directory_path() / "nffs_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  synthetic::PlantedSpec spec;
  spec.train_rows = 600;
  spec.test_rows = 300;
  spec.informative_numeric = 4;
  spec.noise = 10;
  spec.seed = 31;
  const auto planted = synthetic::planted_dataset(spec);
  synthetic::write_csv(planted.train, (dir / "train.csv").string());
  synthetic::write_csv(planted.test, (dir / "test.csv").string());
  const nlohmann::json config = {
      {"train", "train.csv"},
      {"test", "test.csv"},
      {"positive_labels", {"attack"}},
      {"selection",
       {{"afs1_size", 20}, {"top_count", 5}, {"bottom_count", 5}, {"afs2_size", 8}, {"threshold", 0.01},
        {"param_groups", {{{"n_trees", 20}, {"max_depth", 8}}, {{"n_trees", 20}, {"seed_offset", 1}}}}}}};
  std::ofstream(dir / "config.json") << config.dump(2);

  const std::string cli = NFFS_CLI_PATH;
  std::string reports[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path out = dir / ("run" + std::to_string(run));
    const std::string threads = run == 0 ? "1" : "2";
    const std::string cmd = cli + " --config " + (dir / "config.json").string() + " --out " + out.string() +
                            " --threads " + threads + " select > " + (dir / "log.txt").string() + " 2>&1";
    c.expect(std::system(cmd.c_str()) == 0, "select run " + std::to_string(run) + " failed");
    reports[run] = slurp(out / "report.json");
  }
  c.expect(!reports[0].empty() && reports[0] == reports[1], "reports differ between runs");
  if (!reports[0].empty()) {
    const auto doc = nlohmann::json::parse(reports[0]);
    c.expect(doc.at("evaluations") == 28, "evaluation count is not L + O");
    c.expect(doc.at("afs1").size() + doc.at("afs2").size() == 28, "report lists the wrong number of subsets");
  }
  c.expect(slurp(dir / "log.txt").find("evaluations: 28 (20 + 8)") != std::string::npos, "evaluation count not logged");
  fs::remove_all(dir);
  return Outcome::pass;
}

// Criterion 8: full-scale NSL-KDD run, only when the data is supplied.
Outcome nsl_kdd(Checks& c) {
  const char* root = std::getenv("NFFS_NSLKDD_DIR");
  if (!root) {
    c.note("set NFFS_NSLKDD_DIR to a directory holding KDDTrain+.txt and KDDTest+.txt");
    return Outcome::skip;
  }
  const fs::path dir(root);
  const fs::path out = fs::temp_directory_path() / "nffs_acceptance_nslkdd";
  fs::create_directories(out);
  // 41 features, then the attack label, then a difficulty score.
  const nlohmann::json doc = {{"train", (dir / "KDDTrain+.txt").string()},
                              {"test", (dir / "KDDTest+.txt").string()},
                              {"has_header", false},
                              {"label_column", 41},
                              {"ignore_columns", {42}},
                              {"negative_labels", {"normal"}},
                              {"kind_overrides", {{"f2", "categorical"}, {"f3", "categorical"}, {"f4", "categorical"}}},
                              {"fit_encoder_on", "union"},
                              {"selection", {{"threshold", 0.05}}},
                              {"evaluation", {{"n_final_seeds", 30}, {"seed_start", 7}}}};
  std::ofstream(out / "config.json") << doc.dump(2);
  const auto config = cli::load_run_config(out / "config.json");
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::ostringstream log;
  const auto encoded = cli::cmd_encode(config, {out, threads}, log);
  c.expect(encoded.encoded_width == 122, "encoded width " + std::to_string(encoded.encoded_width) + " != 122");
  const auto result = cli::cmd_select(config, {out, threads}, log);
  const auto summary = cli::cmd_evaluate(config, out / "best_subset.txt", {out, threads}, log);
  c.expect(summary.mean.f_score >= 0.87, "F-score " + std::to_string(summary.mean.f_score) + " < 0.87");
  c.expect(summary.mean.auc >= 0.92, "AUC " + std::to_string(summary.mean.auc) + " < 0.92");
  std::ostringstream note;
  note << std::fixed << std::setprecision(4) << result.best().mask.count() << " features, F-score "
       << summary.mean.f_score << " +- " << summary.std.f_score << ", AUC " << summary.mean.auc << " +- "
       << summary.std.auc << "; artifacts in " << out.string();
  c.note(note.str());
  return Outcome::pass;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "closed-form examples to 1e-9", 1.0, formula_suite},
      {2, "mutual information matches oracle", 5.0, mi_oracle},
      {3, "subset generation frequency 0.9 +- 0.02", 1.0, afs1_statistics},
      {4, "PCA and forest properties", 30.0, pca_forest},
      {5, "AUC examples and invariance", 5.0, auc_suite},
      {6, "planted end-to-end (a) (b) (c)", 600.0, planted_end_to_end},
      {7, "CLI select is byte-deterministic, L + O evaluations", 120.0, determinism},
      {8, "NSL-KDD reproduction band (optional)", 0.0, nsl_kdd},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    Checks checks;
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      outcome = criterion.body(checks);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("exception: ") + e.what());
      outcome = Outcome::fail;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome != Outcome::skip && !checks.failures().empty()) outcome = Outcome::fail;
    if (outcome == Outcome::pass && criterion.budget_seconds > 0.0 && seconds > criterion.budget_seconds) {
      checks.expect(false, "runtime over budget of " + std::to_string(criterion.budget_seconds) + " s");
      outcome = Outcome::fail;
    }
    const char* tag = outcome == Outcome::pass ? "PASS" : outcome == Outcome::fail ? "FAIL" : "SKIP";
    std::cout << tag << "  criterion " << criterion.id << ": " << criterion.title << "  [" << std::fixed
              << std::setprecision(2) << seconds << " s]\n";
    for (const auto& note : checks.notes()) std::cout << "      " << note << '\n';
    for (const auto& f : checks.failures()) std::cout << "      - " << f << '\n';
    std::cout.flush();
    if (outcome == Outcome::fail) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed or skipped" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
