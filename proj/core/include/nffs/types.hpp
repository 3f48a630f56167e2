#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nffs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Binary class labels: 0 = normal, 1 = attack.
using Labels = std::vector<int>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary inclusion vector over the encoded feature space.
class FeatureMask {
 public:
  FeatureMask() = default;
  explicit FeatureMask(std::size_t width) : bits_(width, 0) {}
  explicit FeatureMask(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b ? 1 : 0;
  }

  static FeatureMask all(std::size_t width) {
    return FeatureMask(std::vector<std::uint8_t>(width, 1));
  }
  static FeatureMask from_indices(std::size_t width, const std::vector<std::size_t>& indices);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  void set(std::size_t i, bool on = true) { bits_.at(i) = on ? 1 : 0; }

  std::size_t count() const noexcept;
  bool empty_selection() const noexcept { return count() == 0; }
  std::vector<std::size_t> indices() const;
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  // Subset relation: every bit set here is also set in `other`.
  bool subset_of(const FeatureMask& other) const;

  friend bool operator==(const FeatureMask&, const FeatureMask&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline FeatureMask FeatureMask::from_indices(std::size_t width,
                                             const std::vector<std::size_t>& indices) {
  FeatureMask m(width);
  for (auto i : indices) {
    if (i >= width) throw Error("feature index " + std::to_string(i) + " out of range");
    m.bits_[i] = 1;
  }
  return m;
}

inline std::size_t FeatureMask::count() const noexcept {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

inline std::vector<std::size_t> FeatureMask::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

inline bool FeatureMask::subset_of(const FeatureMask& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

}  // namespace nffs
