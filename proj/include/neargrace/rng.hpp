#pragma once

// Seeded randomness. Every stage draws from its own named sub-stream so that a
// single user seed reproduces a whole run bit for bit.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace neargrace {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the sub-stream `name`/`index` under `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view name,
                                 std::uint64_t index = 0) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return splitmix64(splitmix64(seed ^ h) + index);
}

inline Rng make_rng(std::uint64_t seed, std::string_view name,
                    std::uint64_t index = 0) {
  return Rng(derive_seed(seed, name, index));
}

// std::uniform_int_distribution and std::shuffle are implementation-defined;
// these two are not, so outputs agree across standard libraries.

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <class T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[uniform_below(rng, i)]);
  }
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace neargrace
