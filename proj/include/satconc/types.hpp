#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace satconc {

/// Exact solution counts range over [0, 2^n].
using BigInt = boost::multiprecision::cpp_int;
/// Exact rational arithmetic for distribution weights and Gamma certificates.
using Rational = boost::multiprecision::cpp_rational;

/// 2^e as an exact integer.
inline BigInt pow2(unsigned e) {
  BigInt r = 1;
  r <<= e;
  return r;
}

/// log2 of a positive big integer, accurate to double precision.
double log2_big(const BigInt& z);

/// log2(1 + z) for z >= 0.
double log2_1p_big(const BigInt& z);

/// Exact conversion of a finite double to a rational.
Rational to_rational(double x);

}  // namespace satconc
