#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "infogain/random.hpp"

namespace infogain {

// Walker/Vose alias table: O(n) build, O(1) draws.
class AliasTable {
 public:
  AliasTable() = default;
  // Weights need not be normalized; at least one must be positive.
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const { return prob_.size(); }

  std::uint32_t sample(Rng& rng) const {
    const auto slot = static_cast<std::uint32_t>(rng.below(prob_.size()));
    return rng.uniform() < prob_[slot] ? slot : alias_[slot];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace infogain
