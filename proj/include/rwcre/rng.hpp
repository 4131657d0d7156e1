#pragma once

// Counter-based random numbers (Philox4x32-10). Every draw is a pure
// function of (key, counter), so a stream can be re-created anywhere from its
// key and results do not depend on how work is split across threads.

#include <array>
#include <cstdint>

namespace rwcre {

using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

inline Philox4x32Counter philox4x32(Philox4x32Counter ctr, Philox4x32Key key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

/// SplitMix64 finalizer; used only to derive stream keys, never as a stream.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t child) {
  return mix64(parent ^ mix64(child + 0x632BE59BD9B4E019ull));
}

/// Key of block `block` (1-based, remainder = k(n)+1) of sample `sample_id`.
constexpr std::uint64_t block_stream(std::uint64_t master_seed, std::uint64_t sample_id,
                                     std::uint64_t block) {
  return derive_key(derive_key(mix64(master_seed), sample_id), block);
}

// Domain tags occupy the upper counter words so that environment draws and
// walk draws under one key never collide.
inline constexpr std::uint32_t kEnvironmentDomain = 0x454E5631u;  // "ENV1"
inline constexpr std::uint32_t kWalkDomain = 0x57414C4Bu;         // "WALK"
inline constexpr std::uint32_t kSamplerDomain = 0x53414D50u;      // "SAMP"

inline Philox4x32Key split_key(std::uint64_t key) {
  return {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
}

inline double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Sequential reader over the counter space of one (key, domain) pair.
class CounterStream {
 public:
  CounterStream(std::uint64_t key, std::uint32_t domain) : key_(split_key(key)), domain_(domain) {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buffer_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return to_unit_interval(next_u64()); }

  std::uint64_t blocks_consumed() const { return counter_; }

 private:
  void refill() {
    buffer_ = philox4x32({static_cast<std::uint32_t>(counter_),
                          static_cast<std::uint32_t>(counter_ >> 32), domain_, 0u},
                         key_);
    ++counter_;
    pos_ = 0;
  }

  Philox4x32Key key_;
  std::uint32_t domain_;
  std::uint64_t counter_ = 0;
  Philox4x32Counter buffer_{};
  int pos_ = 4;
};

}  // namespace rwcre
