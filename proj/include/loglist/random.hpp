#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "loglist/lct.hpp"

// Seeded draws spelled out by hand: std::uniform_int_distribution and
// std::shuffle differ across standard libraries, these do not.
namespace loglist {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform in [0, bound), bound > 0.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  constexpr std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (top % bound + 1) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (rem == 0 || x <= top - rem) return x % bound;
  }
}

/// Uniform in [lo, hi].
inline CostValue draw_between(std::mt19937_64& rng, CostValue lo, CostValue hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  const std::uint64_t x = span == 0 ? rng() : draw_below(rng, span);
  return static_cast<CostValue>(static_cast<std::uint64_t>(lo) + x);
}

/// 1..n in Fisher-Yates order.
inline std::vector<CostValue> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<CostValue> p(n);
  std::iota(p.begin(), p.end(), CostValue{1});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[draw_below(rng, i)]);
  return p;
}

}  // namespace loglist
