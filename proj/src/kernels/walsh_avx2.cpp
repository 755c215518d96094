// Compiled with -mavx2; only called after a runtime CPU check.
#include <immintrin.h>

#include "satconc/kernels/walsh.hpp"

namespace satconc::kernels::avx2 {

void walsh(std::span<double> data, bool inverse) {
  const std::size_t size = data.size();
  if (size < 8) {
    scalar::walsh(data, inverse);
    return;
  }
  double* d = data.data();
  // Strides 1 and 2 stay within a 4-lane vector; do them in scalar form.
  for (std::size_t h = 1; h < 4; h <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * h) {
      for (std::size_t j = base; j < base + h; ++j) {
        const double lo = d[j], hi = d[j + h];
        d[j] = inverse ? lo - hi : lo + hi;
        d[j + h] = inverse ? lo + hi : hi - lo;
      }
    }
  }
  for (std::size_t h = 4; h < size; h <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * h) {
      for (std::size_t j = base; j < base + h; j += 4) {
        const __m256d lo = _mm256_loadu_pd(d + j);
        const __m256d hi = _mm256_loadu_pd(d + j + h);
        _mm256_storeu_pd(d + j, inverse ? _mm256_sub_pd(lo, hi) : _mm256_add_pd(lo, hi));
        _mm256_storeu_pd(d + j + h, inverse ? _mm256_add_pd(lo, hi) : _mm256_sub_pd(hi, lo));
      }
    }
  }
  if (inverse) {
    const __m256d scale = _mm256_set1_pd(1.0 / static_cast<double>(size));
    for (std::size_t j = 0; j < size; j += 4) _mm256_storeu_pd(d + j, _mm256_mul_pd(_mm256_loadu_pd(d + j), scale));
  }
}

}  // namespace satconc::kernels::avx2
