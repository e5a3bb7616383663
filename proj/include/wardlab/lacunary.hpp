#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wardlab/errors.hpp"

namespace wardlab {

// Block scheme k_0 = 0 < k_1 < k_2 < ...; block r is I_r = (k_{r-1}, k_r]
// with length h_r. Ratios q_r = k_r / k_{r-1} (r >= 2) must stay at least
// 1 + min_ratio_excess, the finite proxy for liminf q_r > 1.
class LacunaryScheme {
 public:
  explicit LacunaryScheme(std::vector<std::uint64_t> boundaries,
                          double min_ratio_excess = 0.05)
      : boundaries_(std::move(boundaries)) {
    if (boundaries_.size() < 2)
      throw ContractError("lacunary scheme: need at least boundaries k_0, k_1");
    if (boundaries_[0] != 0)
      throw ContractError("lacunary scheme: k_0 must be 0");
    for (std::size_t r = 1; r < boundaries_.size(); ++r) {
      if (boundaries_[r] <= boundaries_[r - 1])
        throw ContractError("lacunary scheme: boundaries must be strictly increasing");
    }
    for (std::size_t r = 2; r < boundaries_.size(); ++r) {
      const double q = static_cast<double>(boundaries_[r]) /
                       static_cast<double>(boundaries_[r - 1]);
      if (q < 1.0 + min_ratio_excess)
        throw ContractError("lacunary scheme: ratio q_" + std::to_string(r) +
                            " = " + std::to_string(q) + " below 1 + " +
                            std::to_string(min_ratio_excess));
    }
  }

  std::size_t block_count() const { return boundaries_.size() - 1; }
  std::uint64_t boundary(std::size_t r) const { return boundaries_.at(r); }
  std::uint64_t last_boundary() const { return boundaries_.back(); }
  std::uint64_t block_length(std::size_t r) const {
    return boundaries_.at(r) - boundaries_.at(r - 1);
  }
  double ratio(std::size_t r) const {
    if (r < 2) throw ContractError("lacunary scheme: q_r defined for r >= 2");
    return static_cast<double>(boundaries_.at(r)) /
           static_cast<double>(boundaries_.at(r - 1));
  }
  const std::vector<std::uint64_t>& boundaries() const { return boundaries_; }

 private:
  std::vector<std::uint64_t> boundaries_;
};

// Boundaries [0, F_3, F_4, ..., F_{R+2}] with F_1 = F_2 = 1.
inline LacunaryScheme fibonacci_scheme(std::size_t block_count) {
  if (block_count < 2)
    throw ContractError("fibonacci scheme: need at least 2 blocks");
  std::vector<std::uint64_t> boundaries{0};
  std::uint64_t a = 1, b = 1;  // F_1, F_2
  for (std::size_t r = 1; r <= block_count; ++r) {
    const std::uint64_t next = a + b;  // F_{r+2}
    if (next < b) throw std::range_error("fibonacci scheme: boundary overflow");
    boundaries.push_back(next);
    a = b;
    b = next;
  }
  return LacunaryScheme(std::move(boundaries));
}

// Smallest Fibonacci scheme whose last boundary reaches the horizon.
inline LacunaryScheme fibonacci_scheme_covering(std::uint64_t horizon) {
  std::size_t r = 2;
  while (true) {
    LacunaryScheme s = fibonacci_scheme(r);
    if (s.last_boundary() >= horizon) return s;
    ++r;
  }
}

}  // namespace wardlab
