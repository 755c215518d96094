#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "satconc/errors.hpp"

namespace satconc {

/// A spin is -1 or +1. Tables and replica laws use the bit map -1 -> 0, +1 -> 1.
using Spin = std::int8_t;

constexpr unsigned encode_spin(Spin s) { return s > 0 ? 1u : 0u; }
constexpr Spin decode_spin(unsigned bit) { return bit ? Spin{1} : Spin{-1}; }

/// Position of a spin tuple in a truth table: bit i holds encode(x_i).
inline std::uint32_t tuple_position(std::span<const Spin> x) {
  std::uint32_t pos = 0;
  for (std::size_t i = 0; i < x.size(); ++i) pos |= encode_spin(x[i]) << i;
  return pos;
}

/// Inverse of tuple_position for a tuple of length k.
inline std::vector<Spin> tuple_at(std::uint32_t pos, int k) {
  std::vector<Spin> x(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = decode_spin((pos >> i) & 1u);
  return x;
}

/// x in {-1,+1}^n. Variable i (1-based in files) is stored at index i-1.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<Spin> spins) : spins_(std::move(spins)) {
    for (Spin s : spins_)
      if (s != 1 && s != -1) throw InvalidInput("assignment entries must be -1 or +1");
  }

  /// Assignment whose bit v (v < 64) gives encode(x_{v+1}).
  static Assignment from_bits(std::uint64_t bits, int n) {
    std::vector<Spin> s(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) s[static_cast<std::size_t>(v)] = decode_spin((bits >> v) & 1u);
    return Assignment(std::move(s));
  }

  std::size_t size() const { return spins_.size(); }
  Spin operator[](std::size_t i) const { return spins_[i]; }
  std::span<const Spin> spins() const { return spins_; }

 private:
  std::vector<Spin> spins_;
};

}  // namespace satconc
