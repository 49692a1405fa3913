#pragma once

// Counter-based random streams. Every replica owns an independent Philox4x32-10
// stream addressed by (master seed, replica index), so a replica's draws do not
// depend on which thread runs it or in what order.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace localmass {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter encrypt(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += kWeylA;
      key[1] += kWeylB;
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMulA = 0xD2511F53u;
  static constexpr std::uint32_t kMulB = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
  static constexpr std::uint32_t kWeylB = 0xBB67AE85u;

  static Counter single_round(const Counter& c, const Key& k) noexcept {
    const std::uint64_t p0 = std::uint64_t{kMulA} * c[0];
    const std::uint64_t p1 = std::uint64_t{kMulB} * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
            static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
            static_cast<std::uint32_t>(p0)};
  }
};

/// Sequential view of one Philox stream. Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream_id)),
        stream_hi_(static_cast<std::uint32_t>(stream_id >> 32)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    if (cursor_ == 2) refill();
    return buffer_[cursor_++];
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log argument.
  double uniform_positive() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  double exponential(double rate) noexcept { return -std::log(uniform_positive()) / rate; }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) noexcept {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_positive()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  std::uint64_t blocks_consumed() const noexcept { return block_; }

 private:
  void refill() noexcept {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32), stream_lo_,
                                  stream_hi_};
    const auto out = Philox4x32::encrypt(ctr, key_);
    buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
    buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
    ++block_;
    cursor_ = 0;
  }

  Philox4x32::Key key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
  std::uint64_t block_{0};
  std::array<std::uint64_t, 2> buffer_{};
  int cursor_{2};
  double spare_{0.0};
  bool has_spare_{false};
};

}  // namespace localmass
