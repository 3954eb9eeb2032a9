#pragma once

#include <cmath>
#include <cstdint>

namespace hers {

// Counter-based PRNG: every draw is a stateless mix of (key, counter), so a
// stream can be split per round / particle / trial index and the results are
// identical for any parallelism degree and platform. The mixer is the
// SplitMix64 finalizer, which is the standard choice for this construction.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ kSeedTweak)) {}

  // Independent substream keyed by index (round, particle, trial, ...).
  CounterRng derive(std::uint64_t stream) const {
    CounterRng child(*this);
    child.key_ = mix(key_ ^ mix(stream + kStreamTweak));
    child.counter_ = 0;
    return child;
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe to take log of.
  double next_double_open() { return 1.0 - next_double(); }

  // Standard normal via Box-Muller (no cached spare; two uniforms per draw
  // keeps the stream position deterministic).
  double next_gaussian() {
    const double u1 = next_double_open();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  static constexpr std::uint64_t kSeedTweak = 0x5851f42d4c957f2dULL;
  static constexpr std::uint64_t kStreamTweak = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace hers
