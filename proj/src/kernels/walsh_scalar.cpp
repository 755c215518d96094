#include "satconc/kernels/walsh.hpp"

namespace satconc::kernels::scalar {

void walsh(std::span<double> data, bool inverse) {
  const std::size_t size = data.size();
  // Pair (lo, hi) differs in bit r: lo has x_r = -1, hi has x_r = +1.
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * h) {
      for (std::size_t j = base; j < base + h; ++j) {
        const double lo = data[j], hi = data[j + h];
        if (inverse) {
          data[j] = lo - hi;
          data[j + h] = lo + hi;
        } else {
          data[j] = lo + hi;
          data[j + h] = hi - lo;
        }
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(size);
    for (double& v : data) v *= scale;
  }
}

}  // namespace satconc::kernels::scalar
