// Independent reference implementations used only by the tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "satconc/distribution.hpp"
#include "satconc/formula.hpp"
#include "satconc/types.hpp"

namespace oracle {

using namespace satconc;

/// Z by evaluating every clause on every assignment through spin tuples.
inline BigInt count(const Formula& f) {
  const int n = f.num_vars();
  if (n > 22) throw std::runtime_error("oracle count limited to n <= 22");
  std::uint64_t z = 0;
  std::vector<Spin> vals;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    const Assignment x = Assignment::from_bits(a, n);
    bool ok = true;
    for (const auto& c : f.clauses()) {
      vals.clear();
      for (auto v : c.vars) vals.push_back(x[v]);
      if (!eval_clause(c.type, vals)) {
        ok = false;
        break;
      }
    }
    if (ok) ++z;
  }
  return BigInt(z);
}

/// Gamma_l(nu) = sum over k-tuples of replica tuples of prod nu(z_i) * E_mu prod_r (1 - phi(column r)).
template <class T>
T gamma(const ClauseTypeDistribution& mu, const std::vector<T>& nu, int l) {
  const int k = mu.arity();
  const std::uint32_t L = 1u << l;
  std::vector<std::uint32_t> z(static_cast<std::size_t>(k), 0);
  T total(0);
  while (true) {
    T w(1);
    for (int i = 0; i < k; ++i) w *= nu[z[i]];
    T inner(0);
    for (const auto& wt : mu.support()) {
      bool all = true;
      for (int r = 0; r < l; ++r) {
        std::vector<Spin> x(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) x[i] = decode_spin((z[i] >> r) & 1u);
        if (eval_clause(wt.type, x)) all = false;
      }
      if (all) {
        if constexpr (std::is_same_v<T, double>)
          inner += wt.weight;
        else
          inner += wt.exact;
      }
    }
    total += w * inner;
    int i = 0;
    while (i < k && ++z[i] == L) z[i++] = 0;
    if (i == k) break;
  }
  return total;
}

/// f(Q) = sum_x nu(x) prod_{r in Q} x_r, by direct summation.
inline std::vector<double> fourier(const std::vector<double>& nu, int l) {
  const std::uint32_t L = 1u << l;
  std::vector<double> f(L, 0.0);
  for (std::uint32_t q = 0; q < L; ++q)
    for (std::uint32_t x = 0; x < L; ++x) {
      double sign = 1.0;
      for (int r = 0; r < l; ++r)
        if (((q >> r) & 1u) && !((x >> r) & 1u)) sign = -sign;
      f[q] += sign * nu[x];
    }
  return f;
}

/// sum_x phi(x) prod_i (1 + x_i theta) / 2 over spin tuples.
inline double theta_norm(const ClauseType& phi, double theta) {
  double s = 0.0;
  for (std::uint32_t p = 0; p < phi.table_size(); ++p) {
    const auto x = tuple_at(p, phi.arity());
    if (!eval_clause(phi, x)) continue;
    double w = 1.0;
    for (Spin xi : x) w *= (1.0 + xi * theta) / 2.0;
    s += w;
  }
  return s;
}

/// Binomial coefficient as a double.
inline double choose(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
