#pragma once

// Counter-based random numbers: every draw is a pure function of (key, counter).
// Nothing is sequential, so a draw can be addressed directly and ensembles give
// the same bits regardless of thread count or evaluation order.

#include <cstdint>

namespace dvcover {

__extension__ using uint128_t = unsigned __int128;

/// SplitMix64 finalizer (Stafford variant 13). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// Two-round keyed hash of a counter.
constexpr std::uint64_t hash_counter(std::uint64_t key, std::uint64_t counter) noexcept {
  constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t x = mix64(key + golden);
  x = mix64(x ^ (counter * golden + 0x632be59bd9b4e019ULL));
  return mix64(x + key);
}

/// Maps the top 53 bits to [0,1).
constexpr double to_unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

constexpr double uniform01(std::uint64_t key, std::uint64_t counter) noexcept {
  return to_unit_interval(hash_counter(key, counter));
}

/// Seed of replica `r` under a master seed.
constexpr std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t replica) noexcept {
  return hash_counter(master_seed ^ 0xa0761d6478bd642fULL, replica);
}

/// A lightweight stream view over (key, counter). Copyable; copies replay the same draws.
class CounterStream {
 public:
  explicit constexpr CounterStream(std::uint64_t key, std::uint64_t start = 0) noexcept
      : key_(key), counter_(start) {}

  constexpr double uniform() noexcept { return uniform01(key_, counter_++); }
  constexpr std::uint64_t bits() noexcept { return hash_counter(key_, counter_++); }

  /// Uniform integer in [0, n), n > 0 (Lemire's multiply-shift, bias < 2^-64 * n).
  constexpr std::uint64_t below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>((static_cast<uint128_t>(bits()) * n) >> 64);
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace dvcover
