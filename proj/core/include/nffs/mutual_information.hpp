#pragma once

#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nffs/data_model.hpp"

namespace nffs {

// Maps a real-valued column to dense integer codes starting at 0. Columns
// with at most n_bins distinct values keep one code per value; otherwise
// values are cut at the empirical quantiles sorted[floor(j*n/n_bins)],
// j = 1..n_bins-1, and a value's code is the number of cut points <= it
// (renumbered densely, so tied quantiles merge bins).
std::vector<int> discretize(std::span<const double> column, int n_bins);

// Plug-in estimate of I(X;Y) in nats from the empirical joint frequencies
// of two code sequences. Codes must be non-negative. Never negative.
double mutual_information(std::span<const int> x, std::span<const int> y);

struct MIScores {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double max() const;
};

MIScores score_all(const EncodedDataset& data, int n_bins = 10, unsigned threads = 1);

struct MIHistogram {
  std::vector<double> bin_edges;  // size counts.size() + 1, strictly increasing
  std::vector<std::size_t> counts;
  std::optional<double> threshold_marker;
};

// Equal-width bins over [0, max(scores)]; the maximum lands in the last bin.
MIHistogram mi_histogram(const MIScores& scores, int n_bins, std::optional<double> threshold = std::nullopt);

nlohmann::json histogram_to_json(const MIHistogram& histogram);
std::string histogram_to_csv(const MIHistogram& histogram);

}  // namespace nffs
