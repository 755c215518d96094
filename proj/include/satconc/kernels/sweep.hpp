#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "satconc/formula.hpp"
#include "satconc/kernels/simd.hpp"

namespace satconc::kernels {

/// A formula flattened for bit-parallel enumeration.
///
/// Each clause is the disjunction of its forbidden points ("terms"); a term is a conjunction of
/// literals. Literal = (var << 1) | negated, where negated means the term needs x_var = -1.
/// Assignment index a encodes x_{v+1} = +1 iff bit v of a is set.
struct SweepProgram {
  int n = 0;
  std::vector<std::uint32_t> clause_begin;  // size clauses+1, offsets into term_begin
  std::vector<std::uint32_t> term_begin;    // size terms+1, offsets into lits
  std::vector<std::uint32_t> lits;
};

SweepProgram compile_sweep(const Formula& formula);

/// Number of satisfying assignments among all 2^n. Requires n <= 40.
std::uint64_t sweep_count(const SweepProgram& prog, SimdLevel level);

/// Satisfying-set bitmap: bit (a & 63) of word a/64 is set iff assignment a satisfies.
/// `out` must hold max(1, 2^n / 64) words.
void sweep_masks(const SweepProgram& prog, std::span<std::uint64_t> out, SimdLevel level);

namespace scalar {
std::uint64_t count(const SweepProgram& prog);
void masks(const SweepProgram& prog, std::span<std::uint64_t> out);
}  // namespace scalar

namespace avx2 {
std::uint64_t count(const SweepProgram& prog);
void masks(const SweepProgram& prog, std::span<std::uint64_t> out);
}  // namespace avx2

}  // namespace satconc::kernels
