#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace slsq {

/// std::mt19937_64 (its output sequence is fixed by the C++ standard) with
/// hand-written bounded-integer and unit-interval draws, so a seed
/// reproduces the same stream on every platform. Per-restart streams are
/// seeded through SplitMix64.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64/splitmix64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static Rng for_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = -n % n;  // 2^64 mod n
    while (true) {
      const std::uint64_t x = engine_();
      if (x >= limit) return x % n;
    }
  }

  int below(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace slsq
