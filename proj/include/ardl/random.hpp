#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace ardl {

/**
 * @brief Philox4x32-10 counter-based generator (Salmon et al., SC'11).
 *
 * The stream is fully determined by a 64-bit key (the seed) and a 128-bit
 * counter. `Philox::stream(seed, a, b)` reserves the upper counter words for
 * caller-chosen substream ids (e.g. replication index, retry number), so
 * results do not depend on which thread draws them.
 */
class Philox {
 public:
  using result_type = std::uint32_t;

  Philox(std::uint64_t seed, std::uint32_t stream_hi = 0, std::uint32_t stream_lo = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        counter_{0, 0, stream_lo, stream_hi} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xFFFFFFFFu; }

  result_type operator()() {
    if (used_ == 4) {
      block_ = round10(counter_, key_);
      increment();
      used_ = 0;
    }
    return block_[used_++];
  }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() {
    const std::uint64_t hi = (*this)() >> 5;  // 27 bits
    const std::uint64_t lo = (*this)() >> 6;  // 26 bits
    return (static_cast<double>((hi << 26) | lo) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Uniform integer in [0, n) by rejection.
  std::uint32_t below(std::uint32_t n) {
    const std::uint32_t limit = max() - (max() % n);
    std::uint32_t v;
    do {
      v = (*this)();
    } while (v >= limit);
    return v % n;
  }

  /// Raw block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> round10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    for (int i = 0; i < 10; ++i) {
      if (i > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  void increment() {
    if (++counter_[0] == 0) ++counter_[1];
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ardl
