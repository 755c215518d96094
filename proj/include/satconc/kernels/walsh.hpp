#pragma once

#include <span>

#include "satconc/kernels/simd.hpp"

namespace satconc::kernels {

/// In-place spin Walsh transform of length 2^l.
///
/// Forward maps probabilities p(x) to f(Q) = sum_x p(x) prod_{r in Q} x_r, indices read as bit
/// masks (bit r set: x_r = +1, resp. r in Q). Inverse undoes it including the 2^-l factor.
void walsh_transform(std::span<double> data, bool inverse, SimdLevel level);

namespace scalar {
void walsh(std::span<double> data, bool inverse);
}
namespace avx2 {
void walsh(std::span<double> data, bool inverse);
}

}  // namespace satconc::kernels
