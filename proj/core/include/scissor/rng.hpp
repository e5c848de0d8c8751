#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace scissor {

/// SplitMix64 finalizer. Used both to seed Rng and to derive child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Child seed for stream `index` of `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index));
}

/// xoshiro256** seeded through SplitMix64.
///
/// Every draw is defined in terms of 64-bit integer arithmetic only, so a
/// given seed yields the same sequence on every platform and standard
/// library (unlike std::uniform_int_distribution / std::normal_distribution).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform() noexcept;

  /// Standard normal via Box-Muller (one draw per call).
  double normal() noexcept;

  /// k distinct indices from [0, n) in draw order (partial Fisher-Yates).
  std::vector<std::uint32_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace scissor
