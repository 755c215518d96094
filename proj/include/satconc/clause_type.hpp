#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "satconc/assignment.hpp"

namespace satconc {

inline constexpr int kMaxArity = 16;

/// A Boolean function phi: {-1,+1}^k -> {0,1}, stored as a truth table of 2^k bits.
///
/// Entry j of the table is phi(x) for the tuple x with x_i = +1 iff bit i of j is set.
/// Tables of arity <= 6 live in a single word; larger arities spill to the heap.
class ClauseType {
 public:
  ClauseType() = default;

  /// All-zero table of arity k.
  explicit ClauseType(int k);

  /// Builds from the low 2^k bits of a word. Requires k <= 6.
  static ClauseType from_word(int k, std::uint64_t bits);
  /// phi(x) = predicate(position(x)).
  template <class Pred>
  static ClauseType from_predicate(int k, Pred&& pred) {
    ClauseType t(k);
    for (std::uint32_t j = 0; j < t.table_size(); ++j)
      if (pred(j)) t.set(j, true);
    return t;
  }
  /// Table hex string as used by the generalized formula format (most significant digit first).
  static ClauseType from_hex(int k, const std::string& hex);

  /// phi_s(x) = 1(x != s): the k-SAT clause forbidding s.
  static ClauseType forbid_one(int k, std::uint32_t s);
  /// phi(x) = 1(x not in forbidden).
  static ClauseType forbid_set(int k, std::span<const std::uint32_t> forbidden);
  /// phi_s(x) = 1(prod x_i = s).
  static ClauseType parity(int k, Spin s);
  static ClauseType constant(int k, bool value);

  int arity() const { return k_; }
  std::uint32_t table_size() const { return 1u << k_; }

  bool at(std::uint32_t pos) const {
    return k_ <= 6 ? ((word_ >> pos) & 1u) : ((words_[pos >> 6] >> (pos & 63)) & 1u);
  }
  void set(std::uint32_t pos, bool value);

  /// phi evaluated on a spin tuple.
  bool eval(std::span<const Spin> x) const;

  /// Number of satisfying tuples.
  std::uint32_t count_ones() const;
  /// Positions j with phi = 0, in increasing order.
  std::vector<std::uint32_t> zeros() const;

  /// 1 - phi.
  ClauseType complement() const;

  /// Table of phi with argument `pos` fixed to `value`; arity drops by one.
  ClauseType restrict(int pos, Spin value) const;
  /// True iff phi does not depend on argument `pos`.
  bool ignores(int pos) const;
  /// If every satisfying tuple has x_pos equal to one value, returns it; else 0.
  Spin forced_value(int pos) const;

  /// Position of a zero entry is -s for parity tables; returns +1/-1 when phi is a parity
  /// constraint 1(prod x_i = s) and 0 otherwise.
  Spin parity_sign() const;
  /// The forbidden point when phi has exactly one zero; -1 otherwise.
  std::int64_t single_forbidden() const;

  bool is_zero() const;
  bool is_one() const;

  std::string to_hex() const;

  /// Table words (one word for arity <= 6); for hashing and canonical keys.
  std::span<const std::uint64_t> words() const;

  friend bool operator==(const ClauseType& a, const ClauseType& b) {
    if (a.k_ != b.k_) return false;
    return a.k_ <= 6 ? a.word_ == b.word_ : a.words_ == b.words_;
  }
  friend bool operator<(const ClauseType& a, const ClauseType& b);

 private:
  int k_ = 0;
  std::uint64_t word_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ClauseTypeHash {
  std::size_t operator()(const ClauseType& t) const;
};

/// Restricts a table whose arguments repeat variables to the diagonal.
/// `indices` gives the variable of each argument; returns the distinct variables in order of
/// first occurrence together with the reduced table.
std::pair<std::vector<std::uint32_t>, ClauseType> restrict_to_diagonal(
    std::span<const std::uint32_t> indices, const ClauseType& table);

}  // namespace satconc
