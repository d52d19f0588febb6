#pragma once

// Portable random helpers. std::mt19937_64 is bit-exactly specified by the
// standard, but the <random> distributions are not, so every draw used by
// the library goes through the conversions below.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace netres::detail {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent per-restart seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by rejection sampling; bound > 0.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
  const std::uint64_t limit = Engine::max() - (Engine::max() % bound);
  std::uint64_t x = eng();
  while (x >= limit) x = eng();
  return x % bound;
}

/// Fisher-Yates shuffle driven by uniform_below.
template <typename T>
void shuffle(std::span<T> values, Engine& eng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(eng, i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace netres::detail
