#pragma once

#include <array>
#include <cstdint>

namespace scc {

/// SplitMix64 step; used for seeding and for deriving per-task streams.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t &state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256** (Blackman & Vigna), seeded through SplitMix64.
///
/// Every sampler below is written out explicitly instead of using the
/// <random> distributions, whose algorithms are implementation-defined. Given
/// an IEEE-754 libm, identical seeds give identical streams everywhere.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto &word : s_) word = splitmix64(sm);
  }

  /// Independent stream for task `index` of a job seeded with `seed`.
  [[nodiscard]] static Rng stream(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t sm = seed ^ 0xD1B54A32D192ED03ULL;
    std::uint64_t mixed = splitmix64(sm);
    std::uint64_t sm2 = mixed + index * 0x9E3779B97F4A7C15ULL;
    return Rng(splitmix64(sm2));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Exponential with the given rate (1/mean), by inversion. rate = 0 gives +inf.
  double exponential(double rate) noexcept;

  /// Exact Poisson variate. Inversion by sequential search for mean < 10,
  /// Hormann's PTRS transformed rejection otherwise.
  std::uint64_t poisson(double mean) noexcept;

  bool bernoulli(double p) noexcept { return uniform() < p; }

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

} // namespace scc
