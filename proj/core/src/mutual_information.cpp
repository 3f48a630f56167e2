#include "nffs/mutual_information.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nffs/parallel.hpp"

namespace nffs {

std::vector<int> discretize(std::span<const double> column, int n_bins) {
  if (column.empty()) throw Error("discretize: empty column");
  if (n_bins < 2) throw Error("discretize: n_bins must be at least 2");

  std::vector<double> sorted(column.begin(), column.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<int> codes(column.size());
  if (distinct.size() <= static_cast<std::size_t>(n_bins)) {
    for (std::size_t i = 0; i < column.size(); ++i)
      codes[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), column[i]) - distinct.begin());
    return codes;
  }

  const std::size_t n = sorted.size();
  std::vector<double> cuts;
  cuts.reserve(static_cast<std::size_t>(n_bins) - 1);
  for (int j = 1; j < n_bins; ++j) cuts.push_back(sorted[static_cast<std::size_t>(j) * n / static_cast<std::size_t>(n_bins)]);
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Raw code = number of cuts <= value; densify over the codes in use.
  std::vector<int> raw(column.size());
  std::vector<char> used(cuts.size() + 1, 0);
  for (std::size_t i = 0; i < column.size(); ++i) {
    raw[i] = static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), column[i]) - cuts.begin());
    used[static_cast<std::size_t>(raw[i])] = 1;
  }
  std::vector<int> dense(used.size(), 0);
  int next = 0;
  for (std::size_t k = 0; k < used.size(); ++k)
    if (used[k]) dense[k] = next++;
  for (std::size_t i = 0; i < column.size(); ++i) codes[i] = dense[static_cast<std::size_t>(raw[i])];
  return codes;
}

double mutual_information(std::span<const int> x, std::span<const int> y) {
  if (x.size() != y.size()) throw Error("mutual_information: length mismatch");
  if (x.empty()) throw Error("mutual_information: empty input");

  const int kx = *std::max_element(x.begin(), x.end()) + 1;
  const int ky = *std::max_element(y.begin(), y.end()) + 1;
  if (*std::min_element(x.begin(), x.end()) < 0 || *std::min_element(y.begin(), y.end()) < 0)
    throw Error("mutual_information: negative code");

  std::vector<double> joint(static_cast<std::size_t>(kx) * static_cast<std::size_t>(ky), 0.0);
  std::vector<double> cx(static_cast<std::size_t>(kx), 0.0);
  std::vector<double> cy(static_cast<std::size_t>(ky), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    joint[static_cast<std::size_t>(x[i]) * static_cast<std::size_t>(ky) + static_cast<std::size_t>(y[i])] += 1.0;
    cx[static_cast<std::size_t>(x[i])] += 1.0;
    cy[static_cast<std::size_t>(y[i])] += 1.0;
  }

  // sum_xy c_xy/n * ln(c_xy * n / (c_x * c_y))
  const double n = static_cast<double>(x.size());
  double mi = 0.0;
  for (int a = 0; a < kx; ++a) {
    for (int b = 0; b < ky; ++b) {
      const double c = joint[static_cast<std::size_t>(a) * static_cast<std::size_t>(ky) + static_cast<std::size_t>(b)];
      if (c == 0.0) continue;
      mi += c * std::log(c * n / (cx[static_cast<std::size_t>(a)] * cy[static_cast<std::size_t>(b)]));
    }
  }
  return std::max(0.0, mi / n);
}

double MIScores::max() const {
  if (values.empty()) throw Error("MIScores::max on empty scores");
  return *std::max_element(values.begin(), values.end());
}

MIScores score_all(const EncodedDataset& data, int n_bins, unsigned threads) {
  if (data.size() == 0 || data.width() == 0) throw Error("score_all: empty dataset");
  MIScores scores;
  scores.values.assign(data.width(), 0.0);
  parallel_for(data.width(), threads, [&](std::size_t j) {
    const Vector column = data.x.col(static_cast<Eigen::Index>(j));
    const auto codes = discretize(std::span<const double>(column.data(), static_cast<std::size_t>(column.size())), n_bins);
    scores.values[j] = mutual_information(codes, data.y);
  });
  return scores;
}

MIHistogram mi_histogram(const MIScores& scores, int n_bins, std::optional<double> threshold) {
  if (n_bins < 1) throw Error("mi_histogram: n_bins must be positive");
  double top = scores.values.empty() ? 0.0 : scores.max();
  if (!(top > 0.0)) top = 1.0;

  MIHistogram hist;
  hist.threshold_marker = threshold;
  hist.counts.assign(static_cast<std::size_t>(n_bins), 0);
  hist.bin_edges.resize(static_cast<std::size_t>(n_bins) + 1);
  for (int b = 0; b <= n_bins; ++b) hist.bin_edges[static_cast<std::size_t>(b)] = top * b / n_bins;
  for (double v : scores.values) {
    auto bin = static_cast<long long>(std::floor(v / top * n_bins));
    bin = std::clamp<long long>(bin, 0, n_bins - 1);
    ++hist.counts[static_cast<std::size_t>(bin)];
  }
  return hist;
}

nlohmann::json histogram_to_json(const MIHistogram& histogram) {
  nlohmann::json doc = {{"edges", histogram.bin_edges}, {"counts", histogram.counts}};
  doc["threshold"] = histogram.threshold_marker ? nlohmann::json(*histogram.threshold_marker) : nlohmann::json(nullptr);
  return doc;
}

std::string histogram_to_csv(const MIHistogram& histogram) {
  std::ostringstream out;
  out.precision(17);
  out << "bin_start,count\n";
  for (std::size_t b = 0; b < histogram.counts.size(); ++b)
    out << histogram.bin_edges[b] << ',' << histogram.counts[b] << '\n';
  return out.str();
}

}  // namespace nffs
