#include "satconc/distribution.hpp"

#include <algorithm>
#include <unordered_map>

#include "satconc/errors.hpp"

namespace satconc {

ClauseTypeDistribution::ClauseTypeDistribution(
    int k, std::vector<std::pair<ClauseType, Rational>> support)
    : k_(k) {
  if (k < 1 || k > kMaxArity) throw InvalidInput("distribution arity must lie in [1, 16]");
  if (support.empty()) throw InvalidInput("distribution support is empty");
  std::unordered_map<ClauseType, Rational, ClauseTypeHash> merged;
  Rational total = 0;
  for (auto& [type, w] : support) {
    if (type.arity() != k) throw InvalidInput("support types must share the distribution arity");
    if (w <= 0) throw InvalidInput("support weights must be strictly positive");
    merged[type] += w;
    total += w;
  }
  if (total != 1) throw InvalidInput("support weights must sum to 1");
  support_.reserve(merged.size());
  for (auto& [type, w] : merged)
    support_.push_back({type, w, static_cast<double>(w)});
  std::sort(support_.begin(), support_.end(),
            [](const WeightedType& a, const WeightedType& b) { return a.type < b.type; });
  double acc = 0.0;
  for (const auto& s : support_) {
    acc += s.weight;
    cumulative_.push_back(acc);
  }
}

std::size_t ClauseTypeDistribution::pick(double u) const {
  const double target = u * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  if (it == cumulative_.end()) return support_.size() - 1;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

bool ClauseTypeDistribution::is_parity() const {
  return std::all_of(support_.begin(), support_.end(),
                     [](const WeightedType& w) { return w.type.parity_sign() != 0; });
}

bool ClauseTypeDistribution::is_ksat_like() const {
  return std::all_of(support_.begin(), support_.end(),
                     [](const WeightedType& w) { return w.type.single_forbidden() >= 0; });
}

bool operator==(const ClauseTypeDistribution& a, const ClauseTypeDistribution& b) {
  if (a.k_ != b.k_ || a.support_.size() != b.support_.size()) return false;
  for (std::size_t i = 0; i < a.support_.size(); ++i)
    if (!(a.support_[i].type == b.support_[i].type) || a.support_[i].exact != b.support_[i].exact)
      return false;
  return true;
}

ClauseTypeDistribution make_ksat(int k) {
  if (k < 1 || k > kMaxArity) throw InvalidInput("k-SAT requires 1 <= k <= 16");
  std::vector<std::pair<ClauseType, Rational>> support;
  const std::uint32_t size = 1u << k;
  const Rational w(1, size);
  for (std::uint32_t s = 0; s < size; ++s) support.emplace_back(ClauseType::forbid_one(k, s), w);
  return {k, std::move(support)};
}

ClauseTypeDistribution make_nae(int k) {
  if (k < 2 || k > kMaxArity) throw InvalidInput("NAE-SAT requires 2 <= k <= 16");
  std::vector<std::pair<ClauseType, Rational>> support;
  const std::uint32_t size = 1u << k;
  const Rational w(1, size);
  for (std::uint32_t s = 0; s < size; ++s) {
    const std::uint32_t pair[] = {s, (size - 1) ^ s};
    support.emplace_back(ClauseType::forbid_set(k, pair), w);
  }
  return {k, std::move(support)};
}

ClauseTypeDistribution make_hyp2col(int k) {
  if (k < 2 || k > kMaxArity) throw InvalidInput("hypergraph 2-coloring requires 2 <= k <= 16");
  const std::uint32_t pair[] = {0u, (1u << k) - 1};
  return {k, {{ClauseType::forbid_set(k, pair), Rational(1)}}};
}

ClauseTypeDistribution make_xor(int k) {
  if (k < 1 || k > kMaxArity) throw InvalidInput("XOR-SAT requires 1 <= k <= 16");
  return {k, {{ClauseType::parity(k, 1), Rational(1, 2)}, {ClauseType::parity(k, -1), Rational(1, 2)}}};
}

ClauseTypeDistribution make_k_factorizing(int k, const ColumnLaw& bar_mu) {
  if (k < 1 || k > kMaxArity) throw InvalidInput("k-factorizing requires 1 <= k <= 16");
  if (bar_mu.J < 1 || bar_mu.J > 20) throw InvalidInput("J must lie in [1, 20]");
  if (static_cast<long>(bar_mu.J) * k > 20)
    throw ResourceError("k-factorizing support (2^J)^k exceeds 2^20");
  const std::uint32_t columns = 1u << bar_mu.J;
  if (bar_mu.probs.size() != columns) throw InvalidInput("column law must have 2^J entries");
  Rational total = 0;
  std::vector<std::uint32_t> live;
  for (std::uint32_t u = 0; u < columns; ++u) {
    if (bar_mu.probs[u] < 0) throw InvalidInput("column law has a negative entry");
    total += bar_mu.probs[u];
    if (bar_mu.probs[u] > 0) live.push_back(u);
  }
  if (total != 1) throw InvalidInput("column law must sum to 1");

  std::vector<std::pair<ClauseType, Rational>> support;
  std::vector<std::size_t> digit(static_cast<std::size_t>(k), 0);
  std::vector<std::uint32_t> forbidden(static_cast<std::size_t>(bar_mu.J));
  while (true) {
    Rational w = 1;
    std::fill(forbidden.begin(), forbidden.end(), 0u);
    for (int i = 0; i < k; ++i) {
      const std::uint32_t u = live[digit[static_cast<std::size_t>(i)]];
      w *= bar_mu.probs[u];
      for (int j = 0; j < bar_mu.J; ++j)
        forbidden[static_cast<std::size_t>(j)] |= ((u >> j) & 1u) << i;
    }
    support.emplace_back(ClauseType::forbid_set(k, forbidden), w);
    int i = 0;
    while (i < k && ++digit[static_cast<std::size_t>(i)] == live.size()) digit[static_cast<std::size_t>(i++)] = 0;
    if (i == k) break;
  }
  return {k, std::move(support)};
}

ColumnLaw column_law_ksat() { return {1, {Rational(1, 2), Rational(1, 2)}}; }

ColumnLaw column_law_hyp2col() {
  // column (s^(1)_i, s^(2)_i) = (-1, +1) encodes as 0b10
  return {2, {Rational(0), Rational(0), Rational(1), Rational(0)}};
}

ColumnLaw column_law_nae() {
  return {2, {Rational(0), Rational(1, 2), Rational(1, 2), Rational(0)}};
}

}  // namespace satconc
