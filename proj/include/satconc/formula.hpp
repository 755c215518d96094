#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "satconc/assignment.hpp"
#include "satconc/clause_type.hpp"

namespace satconc {

/// A clause phi_a(x_{i_1}, ..., x_{i_k}). Variable indices are 0-based; repeats are allowed.
struct PlacedClause {
  std::vector<std::uint32_t> vars;
  ClauseType type;

  bool eval(const Assignment& x) const;

  friend bool operator==(const PlacedClause&, const PlacedClause&) = default;
};

/// Generating ensemble and seed of a sampled formula. The ensemble is kept as JSON text,
/// shared between all formulas drawn from one spec.
struct Provenance {
  std::shared_ptr<const std::string> ensemble;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  const std::string& ensemble_json() const {
    static const std::string kEmpty = "null";
    return ensemble ? *ensemble : kEmpty;
  }
  friend bool operator==(const Provenance& a, const Provenance& b) {
    return a.ensemble_json() == b.ensemble_json() && a.master_seed == b.master_seed &&
           a.stream_id == b.stream_id;
  }
};

/// Conjunction of placed clauses over n variables. Immutable once built.
class Formula {
 public:
  Formula() = default;
  /// Throws InvalidInput if a clause index is out of range or arities are mixed.
  Formula(int n, std::vector<PlacedClause> clauses, std::optional<Provenance> provenance = {});

  int num_vars() const { return n_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  std::span<const PlacedClause> clauses() const { return clauses_; }
  /// Common arity, or 0 for an empty formula.
  int arity() const { return clauses_.empty() ? 0 : clauses_.front().type.arity(); }
  const std::optional<Provenance>& provenance() const { return provenance_; }

  /// Copy with clauses appended; the original is untouched.
  Formula with_clauses(std::span<const PlacedClause> extra) const;
  Formula with_provenance(Provenance p) const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.n_ == b.n_ && a.clauses_ == b.clauses_;
  }

 private:
  int n_ = 0;
  std::vector<PlacedClause> clauses_;
  std::optional<Provenance> provenance_;
};

/// phi evaluated on a k-tuple of spins. Throws InvalidInput on arity mismatch.
bool eval_clause(const ClauseType& type, std::span<const Spin> values);

/// 1 iff every clause is satisfied. Throws InvalidInput on length mismatch.
bool satisfies(const Formula& formula, const Assignment& x);

/// Number of variables appearing in no clause.
int free_variables(const Formula& formula);

/// True when each clause has distinct variables and a table with exactly one zero.
bool is_pure_ksat(const Formula& formula);

}  // namespace satconc
