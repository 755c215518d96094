#include <cmath>

#include "satconc/errors.hpp"
#include "satconc/hypotheses.hpp"
#include "satconc/kernels/walsh.hpp"

namespace satconc::hypotheses {

namespace {

void check_replicas(int l) {
  if (l < 1 || l > kMaxReplicas) throw InvalidInput("replica count l must lie in [1, 12]");
}

bool normalized(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) s += v;
  return std::abs(s - 1.0) <= 1e-12;
}

bool normalized(const std::vector<Rational>& p) {
  Rational s = 0;
  for (const auto& v : p) s += v;
  return s == 1;
}

}  // namespace

template <class T>
BasicReplicaLaw<T>::BasicReplicaLaw(int l, std::vector<T> probs) : l_(l), probs_(std::move(probs)) {
  check_replicas(l);
  if (probs_.size() != (std::size_t{1} << l)) throw InvalidInput("replica law needs 2^l entries");
  for (const auto& p : probs_)
    if (p < 0) throw InvalidInput("replica law entries must be non-negative");
  if (!normalized(probs_)) throw InvalidInput("replica law entries must sum to 1");
}

template <class T>
BasicReplicaLaw<T> BasicReplicaLaw<T>::uniform(int l) {
  check_replicas(l);
  const std::size_t size = std::size_t{1} << l;
  return BasicReplicaLaw(l, std::vector<T>(size, T(1) / T(static_cast<int>(size))));
}

template <class T>
BasicReplicaLaw<T> BasicReplicaLaw<T>::point_mass(int l, std::uint32_t x) {
  check_replicas(l);
  std::vector<T> p(std::size_t{1} << l, T(0));
  if (x >= p.size()) throw InvalidInput("point outside {-1,+1}^l");
  p[x] = T(1);
  return BasicReplicaLaw(l, std::move(p));
}

template <class T>
BasicReplicaLaw<T> BasicReplicaLaw<T>::mixture(const BasicReplicaLaw& a, const BasicReplicaLaw& b, const T& w) {
  if (a.l_ != b.l_) throw InvalidInput("mixture of laws with different replica counts");
  if (w < 0 || w > 1) throw InvalidInput("mixture weight must lie in [0, 1]");
  std::vector<T> p(a.probs_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = w * a.probs_[i] + (T(1) - w) * b.probs_[i];
  return BasicReplicaLaw(a.l_, std::move(p));
}

template class BasicReplicaLaw<double>;
template class BasicReplicaLaw<Rational>;

FourierTable walsh(const ReplicaLaw& nu) {
  FourierTable t{nu.replicas(), std::vector<double>(nu.probs().begin(), nu.probs().end())};
  kernels::walsh_transform(t.coeffs, false, kernels::default_simd());
  return t;
}

ReplicaLaw walsh_inverse(const FourierTable& table) {
  check_replicas(table.l);
  if (table.coeffs.size() != (std::size_t{1} << table.l)) throw InvalidInput("Fourier table needs 2^l entries");
  std::vector<double> p = table.coeffs;
  kernels::walsh_transform(p, true, kernels::default_simd());
  for (double& v : p) {
    if (v < -1e-12) throw InvalidInput("Fourier table does not come from a probability law");
    if (v < 0.0) v = 0.0;
  }
  return ReplicaLaw(table.l, std::move(p));
}

template <class T>
BasicFourierTable<T> walsh_generic(const BasicReplicaLaw<T>& nu) {
  BasicFourierTable<T> t{nu.replicas(), std::vector<T>(nu.probs().begin(), nu.probs().end())};
  const std::size_t size = t.coeffs.size();
  for (std::size_t h = 1; h < size; h <<= 1)
    for (std::size_t i = 0; i < size; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        T lo = t.coeffs[j];
        T hi = t.coeffs[j + h];
        t.coeffs[j] = lo + hi;
        t.coeffs[j + h] = hi - lo;
      }
  return t;
}

template BasicFourierTable<double> walsh_generic(const BasicReplicaLaw<double>&);
template BasicFourierTable<Rational> walsh_generic(const BasicReplicaLaw<Rational>&);

}  // namespace satconc::hypotheses
