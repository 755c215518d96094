#include <bit>
#include <vector>

#include "satconc/kernels/sweep.hpp"

namespace satconc::kernels::scalar {

namespace {

constexpr std::uint64_t kLowVar[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

// Satisfying bits among the 64 assignments of block b.
template <class Fn>
void for_each_block(const SweepProgram& prog, Fn&& fn) {
  const int n = prog.n;
  const std::uint64_t blocks = n <= 6 ? 1 : (std::uint64_t{1} << (n - 6));
  const std::uint64_t valid = n >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1u << n)) - 1);
  std::vector<std::uint64_t> x(static_cast<std::size_t>(n));
  for (int v = 0; v < n && v < 6; ++v) x[static_cast<std::size_t>(v)] = kLowVar[v];
  const std::size_t clauses = prog.clause_begin.size() - 1;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    for (int v = 6; v < n; ++v) x[static_cast<std::size_t>(v)] = ((b >> (v - 6)) & 1u) ? ~std::uint64_t{0} : 0;
    std::uint64_t sat = valid;
    for (std::size_t c = 0; c < clauses && sat; ++c) {
      std::uint64_t viol = 0;
      for (std::uint32_t t = prog.clause_begin[c]; t < prog.clause_begin[c + 1]; ++t) {
        std::uint64_t term = ~std::uint64_t{0};
        for (std::uint32_t i = prog.term_begin[t]; i < prog.term_begin[t + 1]; ++i) {
          const std::uint32_t lit = prog.lits[i];
          term &= x[lit >> 1] ^ (std::uint64_t{0} - (lit & 1u));
        }
        viol |= term;
      }
      sat &= ~viol;
    }
    fn(b, sat);
  }
}

}  // namespace

std::uint64_t count(const SweepProgram& prog) {
  std::uint64_t total = 0;
  for_each_block(prog, [&](std::uint64_t, std::uint64_t sat) { total += static_cast<std::uint64_t>(std::popcount(sat)); });
  return total;
}

void masks(const SweepProgram& prog, std::span<std::uint64_t> out) {
  for_each_block(prog, [&](std::uint64_t b, std::uint64_t sat) { out[b] = sat; });
}

}  // namespace satconc::kernels::scalar
