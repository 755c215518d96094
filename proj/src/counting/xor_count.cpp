#include <vector>

#include "satconc/counting.hpp"
#include "satconc/errors.hpp"

namespace satconc::counting {

// Spin x = (-1)^b, so +1 <-> bit 0. A clause prod x_i = s becomes sum_i b_i = [s = -1] (mod 2);
// repeated indices cancel in pairs.
CountResult count_xor(const Formula& formula) {
  const int n = formula.num_vars();
  const std::size_t words = static_cast<std::size_t>(n) / 64 + 1;  // column n holds the rhs
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(formula.num_clauses());
  for (const auto& c : formula.clauses()) {
    const Spin s = c.type.parity_sign();
    if (s == 0) throw InvalidEngine("xor engine requires every clause to be a parity constraint");
    std::vector<std::uint64_t> row(words, 0);
    for (auto v : c.vars) row[v / 64] ^= std::uint64_t{1} << (v % 64);
    if (s < 0) row[static_cast<std::size_t>(n) / 64] ^= std::uint64_t{1} << (n % 64);
    rows.push_back(std::move(row));
  }

  std::size_t rank = 0;
  for (int col = 0; col < n && rank < rows.size(); ++col) {
    const std::size_t w = static_cast<std::size_t>(col) / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot][w] & bit)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r][w] & bit))
        for (std::size_t j = w; j < words; ++j) rows[r][j] ^= rows[rank][j];
    }
    ++rank;
  }

  CountResult res;
  res.engine = Engine::Xor;
  res.free_vars = free_variables(formula);
  const std::size_t rw = static_cast<std::size_t>(n) / 64;
  const std::uint64_t rbit = std::uint64_t{1} << (n % 64);
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (rows[r][rw] & rbit) {  // 0 = 1
      res.z = 0;
      return res;
    }
  }
  res.z = pow2(static_cast<unsigned>(n - static_cast<int>(rank)));
  return res;
}

}  // namespace satconc::counting
