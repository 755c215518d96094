#include <cstdlib>
#include <cstring>

#include "satconc/errors.hpp"
#include "satconc/kernels/simd.hpp"
#include "satconc/kernels/sweep.hpp"
#include "satconc/kernels/walsh.hpp"

namespace satconc::kernels {

std::string simd_name(SimdLevel level) { return level == SimdLevel::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(SATCONC_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  return ok;
#else
  return false;
#endif
}

SimdLevel default_simd() {
  if (const char* env = std::getenv("SATCONC_SIMD"); env && std::strcmp(env, "scalar") == 0)
    return SimdLevel::Scalar;
  return avx2_available() ? SimdLevel::Avx2 : SimdLevel::Scalar;
}

namespace {
void require_avx2() {
  if (!avx2_available()) throw InvalidInput("AVX2 kernels are not available on this build/CPU");
}
}  // namespace

SweepProgram compile_sweep(const Formula& formula) {
  SweepProgram p;
  p.n = formula.num_vars();
  p.clause_begin.push_back(0);
  p.term_begin.push_back(0);
  for (const auto& c : formula.clauses()) {
    for (std::uint32_t z : c.type.zeros()) {
      for (std::size_t i = 0; i < c.vars.size(); ++i) {
        const std::uint32_t negated = ((z >> i) & 1u) ? 0u : 1u;
        p.lits.push_back((c.vars[i] << 1) | negated);
      }
      p.term_begin.push_back(static_cast<std::uint32_t>(p.lits.size()));
    }
    p.clause_begin.push_back(static_cast<std::uint32_t>(p.term_begin.size() - 1));
  }
  return p;
}

std::uint64_t sweep_count(const SweepProgram& prog, SimdLevel level) {
  if (prog.n > 40) throw ResourceError("bit-parallel sweep is limited to n <= 40");
  if (level == SimdLevel::Avx2) {
    require_avx2();
    return avx2::count(prog);
  }
  return scalar::count(prog);
}

void sweep_masks(const SweepProgram& prog, std::span<std::uint64_t> out, SimdLevel level) {
  if (prog.n > 32) throw ResourceError("satisfying-set bitmap is limited to n <= 32");
  const std::size_t words = prog.n <= 6 ? 1 : (std::size_t{1} << (prog.n - 6));
  if (out.size() < words) throw InvalidInput("bitmap buffer too small");
  if (level == SimdLevel::Avx2) {
    require_avx2();
    avx2::masks(prog, out);
    return;
  }
  scalar::masks(prog, out);
}

void walsh_transform(std::span<double> data, bool inverse, SimdLevel level) {
  const std::size_t size = data.size();
  if (size == 0 || (size & (size - 1)) != 0) throw InvalidInput("Walsh transform length must be a power of two");
  if (level == SimdLevel::Avx2) {
    require_avx2();
    avx2::walsh(data, inverse);
    return;
  }
  scalar::walsh(data, inverse);
}

#if !defined(SATCONC_HAVE_AVX2)
namespace avx2 {
std::uint64_t count(const SweepProgram& prog) { return scalar::count(prog); }
void masks(const SweepProgram& prog, std::span<std::uint64_t> out) { scalar::masks(prog, out); }
void walsh(std::span<double> data, bool inverse) { scalar::walsh(data, inverse); }
}  // namespace avx2
#endif

}  // namespace satconc::kernels
