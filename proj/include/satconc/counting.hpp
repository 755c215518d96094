#pragma once

#include <cstdint>
#include <string>

#include "satconc/formula.hpp"
#include "satconc/kernels/simd.hpp"
#include "satconc/types.hpp"

namespace satconc::counting {

enum class Engine { Auto, BruteForce, Backtracking, Xor };

std::string engine_name(Engine e);
Engine parse_engine(const std::string& name);

/// Exact number of satisfying assignments.
struct CountResult {
  BigInt z;
  int free_vars = 0;
  Engine engine = Engine::Auto;

  /// log2 z; requires z >= 1.
  double log2_z() const { return log2_big(z); }
  bool satisfiable() const { return z > 0; }
};

inline constexpr int kBruteForceMaxVars = 30;

/// Enumerates all 2^n assignments with the bit-parallel sweep. Throws ResourceError for n > 30.
CountResult count_bruteforce(const Formula& formula);
CountResult count_bruteforce(const Formula& formula, kernels::SimdLevel level);

struct BacktrackingOptions {
  /// Maximum number of branching decisions before giving up with ResourceError.
  std::uint64_t node_budget = 20'000'000;
  /// Component-cache entries kept before the cache is cleared.
  std::size_t cache_limit = 1'000'000;
};

/// Exact counter: propagation of forced variables, connected-component decomposition,
/// component caching under first-occurrence relabeling, branching on the most frequent variable.
CountResult count_backtracking(const Formula& formula, const BacktrackingOptions& options = {});

/// Satisfiability decision with the backtracking search, stopping at the first model.
bool satisfiable_backtracking(const Formula& formula, const BacktrackingOptions& options = {});

/// Gaussian elimination over GF(2). Throws InvalidEngine if a clause is not a parity constraint.
CountResult count_xor(const Formula& formula);

/// True when every clause type is a parity constraint.
bool is_xor_formula(const Formula& formula);

/// XOR formulas go to count_xor, n <= 16 to brute force, everything else to backtracking.
CountResult count(const Formula& formula, Engine engine = Engine::Auto,
                  const BacktrackingOptions& options = {});

/// Z >= 1, deciding with the engine `count` would use.
bool satisfiable(const Formula& formula, Engine engine = Engine::Auto, const BacktrackingOptions& options = {});

/// sum over all C in C_k(n) of Z(F and C), against C(n,k) (2^k - 1) Z(F).
struct ChecksumResult {
  BigInt lhs;
  BigInt rhs;
  bool equal = false;
};

/// Exact clause-addition identity for pure k-SAT formulas; n <= 20. `k` is the arity of the
/// added clauses and must match the formula's arity when it has clauses.
ChecksumResult clause_addition_checksum(const Formula& formula, int k);

}  // namespace satconc::counting
