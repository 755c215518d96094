#pragma once

#include <span>
#include <utility>
#include <vector>

#include "satconc/clause_type.hpp"
#include "satconc/types.hpp"

namespace satconc {

/// One support point of a clause-type distribution. `exact` is the weight as a rational;
/// `weight` is its double rounding.
struct WeightedType {
  ClauseType type;
  Rational exact;
  double weight = 0.0;
};

/// Finite-support law mu over clause types of a single arity.
///
/// Support members are distinct (duplicates are merged by table equality, summing weights),
/// weights are strictly positive and sum to 1 exactly as rationals.
class ClauseTypeDistribution {
 public:
  ClauseTypeDistribution() = default;
  /// Throws InvalidInput on mixed arity, non-positive weights, or weights not summing to 1.
  ClauseTypeDistribution(int k, std::vector<std::pair<ClauseType, Rational>> support);

  int arity() const { return k_; }
  std::span<const WeightedType> support() const { return support_; }
  std::size_t size() const { return support_.size(); }

  /// Index into support() for a uniform variate u in [0,1).
  std::size_t pick(double u) const;

  /// True when every support type is a parity constraint.
  bool is_parity() const;
  /// True when every support type forbids exactly one point (k-SAT clause types).
  bool is_ksat_like() const;

  friend bool operator==(const ClauseTypeDistribution& a, const ClauseTypeDistribution& b);

 private:
  int k_ = 0;
  std::vector<WeightedType> support_;
  std::vector<double> cumulative_;
};

/// Uniform k-SAT: the 2^k types 1(x != s), each with weight 2^-k.
ClauseTypeDistribution make_ksat(int k);
/// k-NAE-SAT: 1(x not in {s, -s}) for uniform s; 2^(k-1) distinct types after merging.
ClauseTypeDistribution make_nae(int k);
/// Hypergraph 2-coloring: the single type forbidding the two constant tuples.
ClauseTypeDistribution make_hyp2col(int k);
/// k-XOR-SAT: 1(prod x_i = s) for s = +1, -1 with weight 1/2 each.
ClauseTypeDistribution make_xor(int k);

/// A law mu_bar over {-1,+1}^J, indexed by the J-bit encoding of a column (s^(1)_i..s^(J)_i).
struct ColumnLaw {
  int J = 1;
  std::vector<Rational> probs;  // size 2^J
};

/// k-factorizing distribution: columns (s^(1)_i, ..., s^(J)_i), i = 1..k, drawn i.i.d. from
/// mu_bar, clause 1(x not in {s^(1), ..., s^(J)}). Identical tables are merged.
/// Requires (2^J)^k <= 2^20.
ClauseTypeDistribution make_k_factorizing(int k, const ColumnLaw& bar_mu);

/// The three parameterizations that reproduce make_ksat, make_hyp2col and make_nae.
ColumnLaw column_law_ksat();
ColumnLaw column_law_hyp2col();
ColumnLaw column_law_nae();

}  // namespace satconc
