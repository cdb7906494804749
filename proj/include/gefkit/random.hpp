// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace gefkit {

/// Splittable counter-based random source.
///
/// Every output is a pure function of (key, counter), splitmix64-style, so a
/// stream can be reproduced from its seed alone and child streams derived via
/// split() are independent of the order in which work items execute. All
/// distributions are generated from explicit arithmetic (no std::
/// distribution objects), so the byte stream is identical across platforms
/// and standard libraries.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : key_(mix(seed + kSeedTweak)) {}

  /// Child stream for work item `index` (trial, restart, subsystem, ...).
  RandomSource split(std::uint64_t index) const {
    return RandomSource(mix(key_ ^ mix(index + kSplitTweak)), 0);
  }

  /// Stateless seed derivation for a tagged sub-computation; the result seeds
  /// a fresh RandomSource so nested work stays order-independent.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
    return mix(mix(seed + kSeedTweak) ^ mix(tag + kSplitTweak));
  }

  std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal, Box-Muller. The second value of each pair is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // uniform() can return 0; shift into (0, 1] for the log.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Standard complex normal: independent N(0,1) real and imaginary parts.
  std::complex<double> gaussian_cplx() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

 private:
  RandomSource(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kSeedTweak = 0x6A09E667F3BCC909ull;
  static constexpr std::uint64_t kSplitTweak = 0xBB67AE8584CAA73Bull;
  static constexpr double kPi = 3.14159265358979323846;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gefkit
