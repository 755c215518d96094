#include <algorithm>
#include <bit>
#include <vector>

#include "satconc/counting.hpp"
#include "satconc/errors.hpp"
#include "satconc/kernels/sweep.hpp"

namespace satconc::counting {

CountResult count_bruteforce(const Formula& formula) {
  return count_bruteforce(formula, kernels::default_simd());
}

CountResult count_bruteforce(const Formula& formula, kernels::SimdLevel level) {
  if (formula.num_vars() > kBruteForceMaxVars)
    throw ResourceError("brute-force counting is capped at n = " + std::to_string(kBruteForceMaxVars) +
                        " (got n = " + std::to_string(formula.num_vars()) + ")");
  const auto prog = kernels::compile_sweep(formula);
  CountResult r;
  r.z = BigInt(kernels::sweep_count(prog, level));
  r.free_vars = free_variables(formula);
  r.engine = Engine::BruteForce;
  return r;
}

namespace {

BigInt binomial(int n, int k) {
  BigInt c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

constexpr std::uint64_t kLowVar[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

std::uint64_t var_mask(std::uint32_t v, std::uint64_t block) {
  if (v < 6) return kLowVar[v];
  return ((block >> (v - 6)) & 1u) ? ~std::uint64_t{0} : 0;
}

}  // namespace

ChecksumResult clause_addition_checksum(const Formula& formula, int k) {
  const int n = formula.num_vars();
  if (n > 20) throw ResourceError("clause-addition checksum enumerates C_k(n); capped at n = 20");
  if (k < 1 || k > n) throw InvalidInput("clause arity must satisfy 1 <= k <= n");
  if (formula.num_clauses() > 0 && formula.arity() != k)
    throw InvalidInput("formula arity differs from k");
  if (!is_pure_ksat(formula)) throw InvalidInput("clause-addition checksum requires a pure k-SAT formula");

  const std::size_t words = n <= 6 ? 1 : (std::size_t{1} << (n - 6));
  std::vector<std::uint64_t> sat(words);
  kernels::sweep_masks(kernels::compile_sweep(formula), sat, kernels::default_simd());

  BigInt z_f = 0;
  for (auto w : sat) z_f += std::popcount(w);

  // lhs: for every clause C in C_k(n), count the solutions of F that C keeps.
  BigInt lhs = 0;
  std::vector<std::uint32_t> subset(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
  while (true) {
    for (std::uint32_t s = 0; s < (1u << k); ++s) {
      std::uint64_t kept = 0;
      for (std::size_t b = 0; b < words; ++b) {
        std::uint64_t viol = ~std::uint64_t{0};
        for (int i = 0; i < k; ++i) {
          const std::uint64_t x = var_mask(subset[static_cast<std::size_t>(i)], b);
          viol &= ((s >> i) & 1u) ? x : ~x;
        }
        kept += static_cast<std::uint64_t>(std::popcount(sat[b] & ~viol));
      }
      lhs += kept;
    }
    int i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == static_cast<std::uint32_t>(n - k + i)) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }

  ChecksumResult r;
  r.lhs = lhs;
  r.rhs = binomial(n, k) * ((BigInt(1) << k) - 1) * z_f;
  r.equal = r.lhs == r.rhs;
  return r;
}

}  // namespace satconc::counting
