#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "satconc/distribution.hpp"
#include "satconc/ensembles.hpp"
#include "satconc/kernels/sweep.hpp"
#include "satconc/kernels/walsh.hpp"

using namespace satconc;
using namespace satconc::kernels;

namespace {

Formula random_formula(int n, int m, const ClauseTypeDistribution& mu, std::uint64_t seed) {
  return ensembles::sample_fixed_m(n, m, mu, SeedSpec{seed, 0});
}

std::vector<std::uint64_t> naive_masks(const Formula& f) {
  const int n = f.num_vars();
  std::vector<std::uint64_t> out(std::max<std::size_t>(1, (std::size_t{1} << n) / 64), 0);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    if (satisfies(f, Assignment::from_bits(a, n))) out[a / 64] |= std::uint64_t{1} << (a % 64);
  }
  return out;
}

}  // namespace

TEST_CASE("scalar sweep matches the naive count") {
  const ClauseTypeDistribution mus[] = {make_ksat(2), make_ksat(3), make_nae(3), make_xor(3), make_hyp2col(4)};
  int i = 0;
  for (const auto& mu : mus) {
    for (int n : {1, 3, 5, 6, 7, 9, 12}) {
      if (n < mu.arity() - 1) continue;
      for (int m : {0, 1, 3, n, 2 * n}) {
        const Formula f = random_formula(n, m, mu, ++i);
        const SweepProgram prog = compile_sweep(f);
        CHECK(BigInt(scalar::count(prog)) == oracle::count(f));
        std::vector<std::uint64_t> masks(std::max<std::size_t>(1, (std::size_t{1} << n) / 64));
        scalar::masks(prog, masks);
        CHECK(masks == naive_masks(f));
      }
    }
  }
}

TEST_CASE("AVX2 sweep is equivalent to scalar") {
  if (!avx2_available()) return;
  const ClauseTypeDistribution mus[] = {make_ksat(2), make_ksat(3), make_nae(3), make_xor(4)};
  int i = 100;
  for (const auto& mu : mus) {
    for (int n = 1; n <= 16; ++n) {
      for (int m : {0, 2, n, 3 * n}) {
        const Formula f = random_formula(n, m, mu, ++i);
        const SweepProgram prog = compile_sweep(f);
        CHECK(avx2::count(prog) == scalar::count(prog));
        const std::size_t words = std::max<std::size_t>(1, (std::size_t{1} << n) / 64);
        std::vector<std::uint64_t> a(words), b(words);
        scalar::masks(prog, a);
        avx2::masks(prog, b);
        CHECK(a == b);
      }
    }
  }
}

TEST_CASE("Walsh kernels") {
  Rng rng(42);
  for (int l = 0; l <= 10; ++l) {
    const std::size_t size = std::size_t{1} << l;
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> p(size);
      double total = 0.0;
      for (auto& v : p) total += (v = rng.uniform());
      for (auto& v : p) v /= total;

      std::vector<double> expected(size, 0.0);
      for (std::size_t q = 0; q < size; ++q)
        for (std::size_t x = 0; x < size; ++x) {
          double chi = 1.0;
          for (int r = 0; r < l; ++r)
            if ((q >> r) & 1) chi *= ((x >> r) & 1) ? 1.0 : -1.0;
          expected[q] += p[x] * chi;
        }

      std::vector<double> s = p;
      scalar::walsh(s, false);
      for (std::size_t q = 0; q < size; ++q) CHECK(s[q] == doctest::Approx(expected[q]).epsilon(1e-12));
      CHECK(s[0] == doctest::Approx(1.0));
      if (avx2_available()) {
        std::vector<double> v = p;
        avx2::walsh(v, false);
        for (std::size_t q = 0; q < size; ++q) CHECK(std::abs(v[q] - s[q]) <= 1e-12);
        avx2::walsh(v, true);
        for (std::size_t x = 0; x < size; ++x) CHECK(std::abs(v[x] - p[x]) <= 1e-12);
      }
      scalar::walsh(s, true);
      for (std::size_t x = 0; x < size; ++x) CHECK(std::abs(s[x] - p[x]) <= 1e-12);
    }
  }
}

TEST_CASE("dispatch honours SATCONC_SIMD") {
  ::setenv("SATCONC_SIMD", "scalar", 1);
  CHECK(default_simd() == SimdLevel::Scalar);
  ::unsetenv("SATCONC_SIMD");
  CHECK(default_simd() == (avx2_available() ? SimdLevel::Avx2 : SimdLevel::Scalar));
  CHECK(simd_name(SimdLevel::Scalar) == "scalar");

  const Formula f = random_formula(10, 15, make_ksat(3), 7);
  const SweepProgram prog = compile_sweep(f);
  CHECK(sweep_count(prog, SimdLevel::Scalar) == scalar::count(prog));
  if (avx2_available()) CHECK(sweep_count(prog, SimdLevel::Avx2) == scalar::count(prog));
}
