#include "satconc/formula.hpp"

#include <cmath>

#include "satconc/errors.hpp"
#include "satconc/types.hpp"

namespace satconc {

double log2_big(const BigInt& z) {
  if (z <= 0) throw InvalidInput("log2 of a non-positive count");
  const unsigned msb = boost::multiprecision::msb(z);
  if (msb < 1000) return std::log2(z.convert_to<double>());
  const unsigned shift = msb - 62;
  const BigInt top = z >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

double log2_1p_big(const BigInt& z) {
  if (z < 0) throw InvalidInput("log2(1+z) of a negative count");
  if (z == 0) return 0.0;
  const unsigned msb = boost::multiprecision::msb(z);
  if (msb < 52) return std::log2(1.0 + z.convert_to<double>());
  // 1/z is below double resolution relative to z; use log2(z) + log1p(1/z)/ln 2.
  const double l = log2_big(z);
  return l + std::log1p(std::exp2(-l)) / std::log(2.0);
}

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw InvalidInput("non-finite value has no rational form");
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  // mant * 2^53 is an integer
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r(scaled);
  exp -= 53;
  if (exp >= 0) r *= Rational(pow2(static_cast<unsigned>(exp)));
  else r /= Rational(pow2(static_cast<unsigned>(-exp)));
  return r;
}

bool PlacedClause::eval(const Assignment& x) const {
  std::uint32_t pos = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) pos |= encode_spin(x[vars[i]]) << i;
  return type.at(pos);
}

Formula::Formula(int n, std::vector<PlacedClause> clauses, std::optional<Provenance> provenance)
    : n_(n), clauses_(std::move(clauses)), provenance_(std::move(provenance)) {
  if (n < 0) throw InvalidInput("variable count must be non-negative");
  const int k = clauses_.empty() ? 0 : clauses_.front().type.arity();
  for (const auto& c : clauses_) {
    if (static_cast<int>(c.vars.size()) != c.type.arity())
      throw InvalidInput("clause index tuple length differs from its type arity");
    if (c.type.arity() != k) throw InvalidInput("all clauses of a formula share one arity");
    for (auto v : c.vars)
      if (v >= static_cast<std::uint32_t>(n)) throw InvalidInput("clause index out of range");
  }
}

Formula Formula::with_clauses(std::span<const PlacedClause> extra) const {
  std::vector<PlacedClause> all = clauses_;
  all.insert(all.end(), extra.begin(), extra.end());
  return Formula(n_, std::move(all), provenance_);
}

Formula Formula::with_provenance(Provenance p) const {
  Formula f = *this;
  f.provenance_ = std::move(p);
  return f;
}

bool eval_clause(const ClauseType& type, std::span<const Spin> values) { return type.eval(values); }

bool satisfies(const Formula& formula, const Assignment& x) {
  if (static_cast<int>(x.size()) != formula.num_vars())
    throw InvalidInput("assignment length differs from the formula's variable count");
  for (const auto& c : formula.clauses())
    if (!c.eval(x)) return false;
  return true;
}

int free_variables(const Formula& formula) {
  std::vector<bool> used(static_cast<std::size_t>(formula.num_vars()), false);
  for (const auto& c : formula.clauses())
    for (auto v : c.vars) used[v] = true;
  int free = 0;
  for (bool u : used) free += u ? 0 : 1;
  return free;
}

bool is_pure_ksat(const Formula& formula) {
  for (const auto& c : formula.clauses()) {
    if (c.type.single_forbidden() < 0) return false;
    for (std::size_t i = 0; i < c.vars.size(); ++i)
      for (std::size_t j = i + 1; j < c.vars.size(); ++j)
        if (c.vars[i] == c.vars[j]) return false;
  }
  return true;
}

}  // namespace satconc
