#include <algorithm>
#include <bit>
#include <cmath>
#include <type_traits>

#include "satconc/errors.hpp"
#include "satconc/hypotheses.hpp"

namespace satconc::hypotheses {

namespace {

template <class T>
T weight_of(const WeightedType& wt);
template <>
double weight_of<double>(const WeightedType& wt) { return wt.weight; }
template <>
Rational weight_of<Rational>(const WeightedType& wt) { return wt.exact; }

template <class T>
T from_rational(const Rational& r);
template <>
double from_rational<double>(const Rational& r) { return static_cast<double>(r); }
template <>
Rational from_rational<Rational>(const Rational& r) { return r; }

template <class T>
T power(const T& base, int e) {
  T out(1);
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

/// Coefficient of each configuration (c_1..c_k) in Gamma as a polynomial in nu.
/// Digit i of the configuration (l bits at offset l*i) is the replica tuple of coordinate i.
template <class T>
std::vector<T> configuration_coefficients(const ClauseTypeDistribution& mu, int l) {
  const int k = mu.arity();
  if (l < 1 || l > kMaxReplicas) throw InvalidInput("replica count l must lie in [1, 12]");
  if (k * l > 24) throw ResourceError("direct Gamma enumeration requires k*l <= 24");
  const std::uint32_t digit_mask = (1u << l) - 1;
  const std::size_t configs = std::size_t{1} << (k * l);
  std::vector<T> coef(configs, T(0));
  std::vector<std::uint32_t> pos(static_cast<std::size_t>(l));
  for (std::size_t cfg = 0; cfg < configs; ++cfg) {
    std::fill(pos.begin(), pos.end(), 0u);
    for (int i = 0; i < k; ++i) {
      const std::uint32_t digit = static_cast<std::uint32_t>(cfg >> (l * i)) & digit_mask;
      for (int r = 0; r < l; ++r) pos[r] |= ((digit >> r) & 1u) << i;
    }
    T acc(0);
    for (const auto& wt : mu.support()) {
      bool all_violate = true;
      for (int r = 0; r < l && all_violate; ++r) all_violate = !wt.type.at(pos[r]);
      if (all_violate) acc += weight_of<T>(wt);
    }
    coef[cfg] = acc;
  }
  return coef;
}

template <class T>
T evaluate_polynomial(const std::vector<T>& coef, int k, int l, std::span<const T> nu) {
  const std::uint32_t digit_mask = (1u << l) - 1;
  T total(0);
  for (std::size_t cfg = 0; cfg < coef.size(); ++cfg) {
    if (coef[cfg] == 0) continue;
    T w = coef[cfg];
    for (int i = 0; i < k && w != 0; ++i) w *= nu[static_cast<std::uint32_t>(cfg >> (l * i)) & digit_mask];
    total += w;
  }
  return total;
}

}  // namespace

template <class T>
T gamma_direct(const ClauseTypeDistribution& mu, const BasicReplicaLaw<T>& nu) {
  const int l = nu.replicas();
  const auto coef = configuration_coefficients<T>(mu, l);
  return evaluate_polynomial<T>(coef, mu.arity(), l, nu.probs());
}

template <class T>
T gamma_factorized(const ColumnLaw& bar_mu, int k, const BasicReplicaLaw<T>& nu) {
  const int J = bar_mu.J;
  const int l = nu.replicas();
  if (J < 1 || bar_mu.probs.size() != (std::size_t{1} << J)) throw InvalidInput("column law needs 2^J entries");
  if (k < 1 || k > kMaxArity) throw InvalidInput("arity must lie in [1, 16]");
  if (std::pow(static_cast<double>(J), l) > static_cast<double>(1u << 20))
    throw ResourceError("factorized Gamma requires J^l <= 2^20");

  std::vector<int> idx(static_cast<std::size_t>(l), 0);
  T total(0);
  while (true) {
    T inner(0);
    for (std::uint32_t u = 0; u < bar_mu.probs.size(); ++u) {
      if (bar_mu.probs[u] == 0) continue;
      std::uint32_t x = 0;
      for (int r = 0; r < l; ++r) x |= ((u >> idx[r]) & 1u) << r;
      inner += from_rational<T>(bar_mu.probs[u]) * nu[x];
    }
    total += power(inner, k);
    int r = 0;
    while (r < l && ++idx[r] == J) idx[r++] = 0;
    if (r == l) break;
  }
  return total;
}

template <class T>
T gamma_xor(const BasicReplicaLaw<T>& nu, int k) {
  if (k < 1 || k > kMaxArity) throw InvalidInput("arity must lie in [1, 16]");
  BasicFourierTable<T> f;
  if constexpr (std::is_same_v<T, double>)
    f = walsh(nu);
  else
    f = walsh_generic(nu);
  T total(0);
  for (std::uint32_t q = 0; q < f.coeffs.size(); ++q)
    if (std::popcount(q) % 2 == 0) total += power(f.coeffs[q], k);
  return total / T(static_cast<int>(f.coeffs.size()));
}

template <class T>
GammaPolynomial<T>::GammaPolynomial(const ClauseTypeDistribution& mu, int l)
    : k_(mu.arity()), l_(l), coef_(configuration_coefficients<T>(mu, l)) {}

template <class T>
T GammaPolynomial<T>::operator()(std::span<const T> nu) const {
  if (nu.size() != (std::size_t{1} << l_)) throw InvalidInput("argument needs 2^l entries");
  return evaluate_polynomial<T>(coef_, k_, l_, nu);
}

template double gamma_direct(const ClauseTypeDistribution&, const ReplicaLaw&);
template Rational gamma_direct(const ClauseTypeDistribution&, const ExactReplicaLaw&);
template double gamma_factorized(const ColumnLaw&, int, const ReplicaLaw&);
template Rational gamma_factorized(const ColumnLaw&, int, const ExactReplicaLaw&);
template double gamma_xor(const ReplicaLaw&, int);
template Rational gamma_xor(const ExactReplicaLaw&, int);
template class GammaPolynomial<double>;
template class GammaPolynomial<Rational>;

}  // namespace satconc::hypotheses
