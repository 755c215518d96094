// Compiled with -mavx2 -mpopcnt; only called after a runtime CPU check.
#include <immintrin.h>

#include <bit>
#include <vector>

#include "satconc/kernels/sweep.hpp"

namespace satconc::kernels::avx2 {

namespace {

constexpr std::uint64_t kLowVar[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

// Blocks of 256 assignments: lane j of block b covers indices b*256 + j*64 + [0, 64).
// Variables 0..5 vary inside a lane, 6..7 across lanes, the rest per block.
template <class Fn>
void for_each_block(const SweepProgram& prog, Fn&& fn) {
  const int n = prog.n;
  const std::uint64_t blocks = std::uint64_t{1} << (n - 8);
  __m256i x[40];
  for (int v = 0; v < 6; ++v) x[v] = _mm256_set1_epi64x(static_cast<long long>(kLowVar[v]));
  x[6] = _mm256_setr_epi64x(0, -1, 0, -1);
  x[7] = _mm256_setr_epi64x(0, 0, -1, -1);
  const __m256i ones = _mm256_set1_epi64x(-1);
  const __m256i zero = _mm256_setzero_si256();
  const std::size_t clauses = prog.clause_begin.size() - 1;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    for (int v = 8; v < n; ++v) x[v] = ((b >> (v - 8)) & 1u) ? ones : zero;
    __m256i sat = ones;
    for (std::size_t c = 0; c < clauses; ++c) {
      __m256i viol = zero;
      for (std::uint32_t t = prog.clause_begin[c]; t < prog.clause_begin[c + 1]; ++t) {
        __m256i term = ones;
        for (std::uint32_t i = prog.term_begin[t]; i < prog.term_begin[t + 1]; ++i) {
          const std::uint32_t lit = prog.lits[i];
          const __m256i flip = (lit & 1u) ? ones : zero;
          term = _mm256_and_si256(term, _mm256_xor_si256(x[lit >> 1], flip));
        }
        viol = _mm256_or_si256(viol, term);
      }
      sat = _mm256_andnot_si256(viol, sat);
      if (_mm256_testz_si256(sat, sat)) break;
    }
    fn(b, sat);
  }
}

}  // namespace

std::uint64_t count(const SweepProgram& prog) {
  if (prog.n < 8) return scalar::count(prog);
  std::uint64_t total = 0;
  for_each_block(prog, [&](std::uint64_t, __m256i sat) {
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), sat);
    total += static_cast<std::uint64_t>(_mm_popcnt_u64(lanes[0]) + _mm_popcnt_u64(lanes[1]) +
                                        _mm_popcnt_u64(lanes[2]) + _mm_popcnt_u64(lanes[3]));
  });
  return total;
}

void masks(const SweepProgram& prog, std::span<std::uint64_t> out) {
  if (prog.n < 8) return scalar::masks(prog, out);
  for_each_block(prog, [&](std::uint64_t b, __m256i sat) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + 4 * b), sat);
  });
}

}  // namespace satconc::kernels::avx2
