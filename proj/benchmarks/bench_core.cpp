#include <random>

#include <benchmark/benchmark.h>

#include "nffs/metrics.hpp"
#include "nffs/mutual_information.hpp"
#include "nffs/pca.hpp"
#include "nffs/random_forest.hpp"
#include "nffs/rng.hpp"

namespace {

using namespace nffs;

EncodedDataset random_data(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::normal_distribution<double> normal;
  EncodedDataset data;
  data.x.resize(n, d);
  data.y.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    double latent = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      data.x(i, j) = normal(rng);
      if (j < 5) latent += data.x(i, j);
    }
    data.y[static_cast<std::size_t>(i)] = latent + normal(rng) > 0.0 ? 1 : 0;
  }
  for (Eigen::Index j = 0; j < d; ++j) data.names.push_back("f" + std::to_string(j));
  return data;
}

void BM_ScoreAll(benchmark::State& state) {
  const auto data = random_data(state.range(0), 50, 1);
  for (auto _ : state) benchmark::DoNotOptimize(score_all(data, 10));
}
BENCHMARK(BM_ScoreAll)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_FitPca(benchmark::State& state) {
  const auto data = random_data(5000, state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(fit_pca(data.x, 0.93));
}
BENCHMARK(BM_FitPca)->Arg(20)->Arg(122)->Unit(benchmark::kMillisecond);

void BM_FitForest(benchmark::State& state) {
  const auto data = random_data(state.range(0), 20, 3);
  HyperParamGroup g;
  g.n_trees = 20;
  for (auto _ : state) benchmark::DoNotOptimize(fit_forest(data.x, data.y, g, 7));
}
BENCHMARK(BM_FitForest)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_Auc(benchmark::State& state) {
  const auto data = random_data(state.range(0), 1, 4);
  std::vector<double> scores(data.x.col(0).data(), data.x.col(0).data() + data.x.rows());
  for (auto _ : state) benchmark::DoNotOptimize(auc(data.y, scores));
}
BENCHMARK(BM_Auc)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
