#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace eitdicke {

/// Philox4x64-10 counter-based generator (Salmon et al., SC'11).
///
/// A (key, stream) pair selects an independent 2^64-long substream: the
/// 256-bit counter is {block, 0, stream, 0} and each block yields four
/// 64-bit words. Substreams are addressed directly, so trajectory i of a
/// Monte-Carlo ensemble draws the same numbers regardless of which thread
/// runs it. Satisfies std::uniform_random_bit_generator.
class Philox4x64 {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  Philox4x64(std::uint64_t key, std::uint64_t stream) : key_{key, 0}, counter_{0, 0, stream, 0} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (index_ == 4) {
      buffer_ = generate(counter_, key_);
      increment(counter_);
      index_ = 0;
    }
    return buffer_[index_++];
  }

  /// The raw 10-round bijection.
  static Block generate(Block counter, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      counter = single_round(counter, key);
    }
    return counter;
  }

  /// 256-bit little-endian increment.
  static void increment(Block& counter) {
    for (auto& word : counter) {
      if (++word != 0) break;
    }
  }

 private:
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  __extension__ typedef unsigned __int128 Wide;

  static Block single_round(const Block& c, const Key& k) {
    const Wide p0 = static_cast<Wide>(kMul0) * c[0];
    const Wide p1 = static_cast<Wide>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
    const auto lo0 = static_cast<std::uint64_t>(p0);
    const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
    const auto lo1 = static_cast<std::uint64_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }

  Key key_;
  Block counter_;
  Block buffer_{};
  int index_ = 4;
};

}  // namespace eitdicke

namespace eitdicke {

/// xoshiro256++ (Blackman & Vigna). Fast sequential generator used for the
/// bulk draws of one Monte-Carlo trajectory; its state is derived from a
/// Philox4x64 block so every trajectory index maps to its own substream.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(const std::array<std::uint64_t, 4>& state) : s_(state) {
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9E3779B97F4A7C15ULL;
  }

  /// State = Philox4x64-10 block {0, 0, stream, 0} under key {seed, 0}.
  static Xoshiro256pp for_stream(std::uint64_t seed, std::uint64_t stream) {
    return Xoshiro256pp(Philox4x64::generate({0, 0, stream, 0}, {seed, 0}));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_;
};

}  // namespace eitdicke
