#pragma once

#include <cstdint>
#include <limits>

namespace satconc {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine_seed(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

/// SplitMix64 generator; models UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;
  explicit constexpr Rng(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1).
  double uniform_open() {
    double u;
    do u = uniform();
    while (u == 0.0);
    return u;
  }
  /// Uniform on {0, ..., bound-1}; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do x = (*this)();
    while (x >= limit);
    return x % bound;
  }

 private:
  std::uint64_t state_;
};

/// A named random stream. Identical (master_seed, stream_id) always yields identical draws.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  /// Independent child stream, e.g. one per Monte Carlo trial.
  SeedSpec child(std::uint64_t tag) const { return {master_seed, combine_seed(stream_id, tag)}; }

  /// Generator for a sub-stream keyed by (tag, index).
  Rng rng(std::uint64_t tag, std::uint64_t index = 0) const {
    return Rng(combine_seed(combine_seed(combine_seed(master_seed, stream_id), tag), index));
  }

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

}  // namespace satconc
