#pragma once

#include <cstdint>

namespace wardlab {

// splitmix64: deterministic, stateless per-index hashing for seeded
// sequences — bit-identical on every platform.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// uniform in [0, 1)
inline double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double seeded_uniform(std::uint64_t seed, std::uint64_t index) {
  return unit_double(splitmix64(seed * 0x9e3779b97f4a7c15ULL + index));
}

// uniform in [-1, 1)
inline double seeded_symmetric(std::uint64_t seed, std::uint64_t index) {
  return 2.0 * seeded_uniform(seed, index) - 1.0;
}

}  // namespace wardlab
