#ifndef QENC_RNG_HPP_
#define QENC_RNG_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace qenc {

// Every random draw in the project flows through this 64-bit counter-based
// generator so that runs reproduce across platforms and compilers. Any change
// to the state update, the output mix, or the draw protocols below must bump
// kRngVersion; reports embed the string.
inline constexpr char kRngVersion[] = "splitmix64-v1";

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform on [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Unbiased integer on [0, n); rejection sampling, n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal() {
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

// Decorrelated child seed for a named stream (one per CV repeat, per ordinal
// column, ...). Part of the versioned draw protocol.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
  return SplitMix64::mix(SplitMix64::mix(seed ^ golden) + (stream + 1) * golden);
}

// Deterministic Fisher-Yates.
template <typename T>
void shuffle(std::span<T> items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

inline std::vector<std::size_t> shuffled_indices(std::size_t n,
                                                 SplitMix64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  shuffle(std::span<std::size_t>(idx), rng);
  return idx;
}

}  // namespace qenc

#endif  // QENC_RNG_HPP_
