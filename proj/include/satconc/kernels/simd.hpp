#pragma once

#include <string>

namespace satconc::kernels {

enum class SimdLevel { Scalar, Avx2 };

std::string simd_name(SimdLevel level);

/// True when the AVX2 variants were compiled in and the CPU supports them.
bool avx2_available();

/// Level used by default: the best available, unless SATCONC_SIMD=scalar is set.
SimdLevel default_simd();

}  // namespace satconc::kernels
