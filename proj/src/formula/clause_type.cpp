#include "satconc/clause_type.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "satconc/errors.hpp"

namespace satconc {

namespace {

void check_arity(int k) {
  if (k < 0 || k > kMaxArity)
    throw InvalidInput("clause arity must lie in [0, " + std::to_string(kMaxArity) + "]");
}

std::uint64_t low_mask(int k) {
  const std::uint32_t size = 1u << k;
  return size >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size) - 1);
}

}  // namespace

ClauseType::ClauseType(int k) : k_(k) {
  check_arity(k);
  if (k > 6) words_.assign(std::size_t{1} << (k - 6), 0);
}

ClauseType ClauseType::from_word(int k, std::uint64_t bits) {
  if (k > 6) throw InvalidInput("from_word requires arity <= 6");
  ClauseType t(k);
  t.word_ = bits & low_mask(k);
  return t;
}

ClauseType ClauseType::from_hex(int k, const std::string& hex) {
  ClauseType t(k);
  const std::size_t digits = std::max<std::size_t>(1, t.table_size() / 4);
  if (hex.size() != digits)
    throw InvalidInput("table hex for arity " + std::to_string(k) + " must have " +
                       std::to_string(digits) + " digits, got '" + hex + "'");
  for (std::size_t d = 0; d < digits; ++d) {
    const char c = hex[digits - 1 - d];
    unsigned v;
    if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
    else throw InvalidInput("bad hex digit in clause table: '" + hex + "'");
    for (unsigned b = 0; b < 4; ++b) {
      const std::uint32_t pos = static_cast<std::uint32_t>(4 * d + b);
      if ((v >> b) & 1u) {
        if (pos >= t.table_size()) throw InvalidInput("clause table hex has bits beyond 2^k");
        t.set(pos, true);
      }
    }
  }
  return t;
}

ClauseType ClauseType::forbid_one(int k, std::uint32_t s) {
  return from_predicate(k, [s](std::uint32_t j) { return j != s; });
}

ClauseType ClauseType::forbid_set(int k, std::span<const std::uint32_t> forbidden) {
  ClauseType t = constant(k, true);
  for (std::uint32_t s : forbidden) {
    if (s >= t.table_size()) throw InvalidInput("forbidden point out of range");
    t.set(s, false);
  }
  return t;
}

ClauseType ClauseType::parity(int k, Spin s) {
  // prod x_i = +1 iff the number of -1 entries (zero bits) is even.
  return from_predicate(k, [k, s](std::uint32_t j) {
    const int minus = k - std::popcount(j);
    const Spin prod = (minus % 2 == 0) ? Spin{1} : Spin{-1};
    return prod == s;
  });
}

ClauseType ClauseType::constant(int k, bool value) {
  ClauseType t(k);
  if (value) {
    if (k <= 6) t.word_ = low_mask(k);
    else std::fill(t.words_.begin(), t.words_.end(), ~std::uint64_t{0});
  }
  return t;
}

void ClauseType::set(std::uint32_t pos, bool value) {
  std::uint64_t& w = k_ <= 6 ? word_ : words_[pos >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (pos & 63);
  if (value) w |= bit;
  else w &= ~bit;
}

bool ClauseType::eval(std::span<const Spin> x) const {
  if (static_cast<int>(x.size()) != k_)
    throw InvalidInput("clause of arity " + std::to_string(k_) + " evaluated on " +
                       std::to_string(x.size()) + " spins");
  return at(tuple_position(x));
}

std::uint32_t ClauseType::count_ones() const {
  if (k_ <= 6) return static_cast<std::uint32_t>(std::popcount(word_));
  std::uint32_t c = 0;
  for (auto w : words_) c += static_cast<std::uint32_t>(std::popcount(w));
  return c;
}

std::vector<std::uint32_t> ClauseType::zeros() const {
  std::vector<std::uint32_t> z;
  for (std::uint32_t j = 0; j < table_size(); ++j)
    if (!at(j)) z.push_back(j);
  return z;
}

ClauseType ClauseType::complement() const {
  ClauseType t = *this;
  if (k_ <= 6) t.word_ = ~word_ & low_mask(k_);
  else
    for (auto& w : t.words_) w = ~w;
  return t;
}

ClauseType ClauseType::restrict(int pos, Spin value) const {
  if (pos < 0 || pos >= k_) throw InvalidInput("restrict: argument out of range");
  ClauseType t(k_ - 1);
  const std::uint32_t low = (1u << pos) - 1;
  const std::uint32_t fixed = encode_spin(value) << pos;
  for (std::uint32_t j = 0; j < t.table_size(); ++j) {
    const std::uint32_t src = (j & low) | fixed | ((j & ~low) << 1);
    if (at(src)) t.set(j, true);
  }
  return t;
}

bool ClauseType::ignores(int pos) const {
  const std::uint32_t bit = 1u << pos;
  for (std::uint32_t j = 0; j < table_size(); ++j)
    if (!(j & bit) && at(j) != at(j | bit)) return false;
  return true;
}

Spin ClauseType::forced_value(int pos) const {
  const std::uint32_t bit = 1u << pos;
  bool plus = false, minus = false;
  for (std::uint32_t j = 0; j < table_size(); ++j) {
    if (!at(j)) continue;
    if (j & bit) plus = true;
    else minus = true;
    if (plus && minus) return 0;
  }
  if (plus) return 1;
  if (minus) return -1;
  return 0;
}

Spin ClauseType::parity_sign() const {
  if (k_ == 0) return 0;
  if (*this == parity(k_, 1)) return 1;
  if (*this == parity(k_, -1)) return -1;
  return 0;
}

std::int64_t ClauseType::single_forbidden() const {
  if (count_ones() + 1 != table_size()) return -1;
  for (std::uint32_t j = 0; j < table_size(); ++j)
    if (!at(j)) return j;
  return -1;
}

bool ClauseType::is_zero() const { return count_ones() == 0; }
bool ClauseType::is_one() const { return count_ones() == table_size(); }

std::string ClauseType::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = std::max<std::size_t>(1, table_size() / 4);
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned v = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::uint32_t pos = static_cast<std::uint32_t>(4 * d + b);
      if (pos < table_size() && at(pos)) v |= 1u << b;
    }
    out[digits - 1 - d] = kDigits[v];
  }
  return out;
}

std::span<const std::uint64_t> ClauseType::words() const {
  if (k_ <= 6) return {&word_, 1};
  return words_;
}

bool operator<(const ClauseType& a, const ClauseType& b) {
  if (a.k_ != b.k_) return a.k_ < b.k_;
  auto wa = a.words();
  auto wb = b.words();
  return std::lexicographical_compare(wa.rbegin(), wa.rend(), wb.rbegin(), wb.rend());
}

std::size_t ClauseTypeHash::operator()(const ClauseType& t) const {
  std::size_t h = std::hash<int>{}(t.arity());
  for (auto w : t.words()) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::pair<std::vector<std::uint32_t>, ClauseType> restrict_to_diagonal(
    std::span<const std::uint32_t> indices, const ClauseType& table) {
  if (static_cast<int>(indices.size()) != table.arity())
    throw InvalidInput("index tuple length differs from clause arity");
  std::vector<std::uint32_t> distinct;
  std::vector<int> slot(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), indices[i]);
    slot[i] = static_cast<int>(it - distinct.begin());
    if (it == distinct.end()) distinct.push_back(indices[i]);
  }
  if (distinct.size() == indices.size()) return {std::move(distinct), table};
  const int d = static_cast<int>(distinct.size());
  ClauseType reduced = ClauseType::from_predicate(d, [&](std::uint32_t j) {
    std::uint32_t full = 0;
    for (std::size_t i = 0; i < indices.size(); ++i) full |= ((j >> slot[i]) & 1u) << i;
    return table.at(full);
  });
  return {std::move(distinct), std::move(reduced)};
}

}  // namespace satconc
