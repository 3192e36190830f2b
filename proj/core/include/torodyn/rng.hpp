#pragma once

#include <cstdint>

namespace torodyn {

// Counter-based generator: the n-th output is a pure function of (key, n),
// so parallel consumers can draw from disjoint streams and every stream is
// identical across platforms. Core mix is splitmix64.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  // Derive an independent stream key, e.g. per-sample from (seed, index).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(index + 0xbf58476d1ce4e5b9ull));
  }

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

  // Uniform in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n) via 128-bit multiply; deterministic, unbiased
  // enough for experiment scheduling (bias < 2^-64).
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace torodyn
