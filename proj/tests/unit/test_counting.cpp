#include <chrono>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "satconc/counting.hpp"
#include "satconc/ensembles.hpp"
#include "satconc/errors.hpp"

using namespace satconc;
using namespace satconc::counting;

namespace {

PlacedClause clause(std::vector<std::uint32_t> vars, ClauseType type) { return {std::move(vars), std::move(type)}; }

Formula random_formula(int n, long m, const ClauseTypeDistribution& mu, std::uint64_t seed) {
  return ensembles::sample_fixed_m(n, m, mu, SeedSpec{seed, 1});
}

// Two copies of f on blocks [0, n) and [n, 2n).
Formula doubled(const Formula& f) {
  std::vector<PlacedClause> cs(f.clauses().begin(), f.clauses().end());
  for (const auto& c : f.clauses()) {
    PlacedClause d = c;
    for (auto& v : d.vars) v += static_cast<std::uint32_t>(f.num_vars());
    cs.push_back(d);
  }
  return Formula(2 * f.num_vars(), cs);
}

}  // namespace

TEST_CASE("brute force examples") {
  CHECK(count_bruteforce(Formula(5, {})).z == 32);
  CHECK(count_bruteforce(Formula(2, {clause({0, 1}, ClauseType::forbid_one(2, 0))})).z == 3);
  std::vector<PlacedClause> all;
  for (std::uint32_t a = 0; a < 3; ++a)
    for (std::uint32_t b = a + 1; b < 3; ++b)
      for (std::uint32_t s = 0; s < 4; ++s) all.push_back(clause({a, b}, ClauseType::forbid_one(2, s)));
  const Formula f(3, all);
  CHECK(count_bruteforce(f).z == 0);
  CHECK(oracle::count(f) == 0);
  CHECK_THROWS_AS(count_bruteforce(Formula(31, {})), ResourceError);
  CHECK(count_bruteforce(Formula(30, {})).z == BigInt(1) << 30);
}

TEST_CASE("brute force speed target") {
  const Formula f = random_formula(26, 50, make_ksat(3), 5);
  const auto start = std::chrono::steady_clock::now();
  const CountResult r = count_bruteforce(f);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 10.0);
  CHECK(r.z == count_backtracking(f).z);
}

TEST_CASE("engines agree with the oracle") {
  const ClauseTypeDistribution mus[] = {make_ksat(2), make_ksat(3), make_nae(3), make_hyp2col(3), make_xor(3),
                                        make_ksat(5)};
  std::uint64_t seed = 0;
  for (const auto& mu : mus) {
    for (int n : {2, 4, 7, 10, 13}) {
      for (double alpha : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        const Formula f = random_formula(n, std::lround(alpha * n), mu, ++seed);
        const BigInt z = oracle::count(f);
        const auto bf = count_bruteforce(f);
        const auto bt = count_backtracking(f);
        CHECK(bf.z == z);
        CHECK(bt.z == z);
        CHECK(count(f).z == z);
        CHECK(satisfiable(f) == (z > 0));
        CHECK(satisfiable(f, Engine::Backtracking) == (z > 0));
        CHECK(satisfiable_backtracking(f) == (z > 0));
        if (mu.is_parity()) CHECK(count_xor(f).z == z);
        CHECK(bf.free_vars == free_variables(f));
        CHECK(z % (BigInt(1) << bf.free_vars) == 0);
        CHECK(z <= BigInt(1) << n);
        if (z > 0) CHECK(std::abs(std::exp2(bf.log2_z()) - static_cast<double>(z)) <= 1e-9 * static_cast<double>(z));
      }
    }
  }
}

TEST_CASE("backtracking at larger n") {
  for (int i = 0; i < 20; ++i) {
    const Formula f = random_formula(22, 30 + i, make_ksat(3), 1000 + i);
    CHECK(count_backtracking(f).z == count_bruteforce(f).z);
  }
  const Formula big = random_formula(150, 75, make_ksat(3), 77);
  const auto r = count_backtracking(big);
  CHECK(r.z > 0);
  CHECK(r.z % (BigInt(1) << free_variables(big)) == 0);
  CHECK(satisfiable_backtracking(big));

  BacktrackingOptions tiny;
  tiny.node_budget = 3;
  CHECK_THROWS_AS(count_backtracking(random_formula(60, 120, make_ksat(3), 3), tiny), ResourceError);
}

TEST_CASE("disjoint copies square the count") {
  for (int i = 0; i < 30; ++i) {
    const Formula f = random_formula(9, 10, i % 2 ? make_ksat(3) : make_nae(3), 200 + i);
    const BigInt z = count_bruteforce(f).z;
    CHECK(count_backtracking(doubled(f)).z == z * z);
    CHECK(count_bruteforce(doubled(f)).z == z * z);
  }
}

TEST_CASE("a forcing clause conditions the count") {
  const ClauseType force_plus = ClauseType::from_predicate(3, [](std::uint32_t j) { return (j & 1u) != 0; });
  for (int i = 0; i < 30; ++i) {
    const Formula f = random_formula(10, 14, make_ksat(3), 300 + i);
    std::vector<PlacedClause> cs(f.clauses().begin(), f.clauses().end());
    cs.push_back(clause({0, 4, 7}, force_plus));
    const Formula g(10, cs);
    std::uint64_t expected = 0;
    for (std::uint64_t a = 0; a < 1024; ++a) {
      const Assignment x = Assignment::from_bits(a, 10);
      if (x[0] == 1 && satisfies(f, x)) ++expected;
    }
    CHECK(count_backtracking(g).z == expected);
    CHECK(count_bruteforce(g).z == expected);
  }
}

TEST_CASE("repeated indices") {
  // x1 or x1 is x1 = +1 forced.
  const Formula f(3, {clause({0, 0}, ClauseType::forbid_one(2, 0))});
  CHECK(count_bruteforce(f).z == 4);
  CHECK(count_backtracking(f).z == 4);
  CHECK(oracle::count(f) == 4);
  // x1 x1 x2 = x2.
  const Formula x(3, {clause({0, 0, 1}, ClauseType::parity(3, 1))});
  CHECK(count_xor(x).z == 4);
  CHECK(oracle::count(x) == 4);
}

TEST_CASE("XOR engine") {
  CHECK(count_xor(Formula(3, {clause({0, 1, 2}, ClauseType::parity(3, 1))})).z == 4);
  CHECK(count_xor(Formula(2, {clause({0, 1}, ClauseType::parity(2, 1)), clause({0, 1}, ClauseType::parity(2, -1))})).z ==
        0);
  CHECK_THROWS_AS(count_xor(Formula(2, {clause({0, 1}, ClauseType::forbid_one(2, 0))})), InvalidEngine);
  for (int i = 0; i < 500; ++i) {
    const int n = 3 + i % 18;
    const Formula f = random_formula(n, (i * 7) % (n + 4), i % 2 ? make_xor(3) : make_xor(4), 5000 + i);
    CHECK(count_xor(f).z == count_bruteforce(f).z);
  }
  CHECK(count_xor(random_formula(200, 50, make_xor(3), 9)).z >= BigInt(1) << 150);
}

TEST_CASE("clause addition checksum") {
  const auto empty = clause_addition_checksum(Formula(3, {}), 2);
  CHECK(empty.lhs == 72);
  CHECK(empty.rhs == 72);
  CHECK(empty.equal);
  std::vector<PlacedClause> all;
  for (std::uint32_t s = 0; s < 4; ++s) all.push_back(clause({0, 1}, ClauseType::forbid_one(2, s)));
  const auto zero = clause_addition_checksum(Formula(3, all), 2);
  CHECK(zero.lhs == 0);
  CHECK(zero.rhs == 0);
  CHECK(zero.equal);
  for (int i = 0; i < 10; ++i) {
    const Formula f = ensembles::extend_with_uniform_clauses(Formula(8, {}), 10, make_ksat(3), SeedSpec{i, 0}, true);
    CHECK(clause_addition_checksum(f, 3).equal);
  }
  CHECK_THROWS(clause_addition_checksum(Formula(21, {}), 3));
}

TEST_CASE("free variables") {
  CHECK(free_variables(Formula(7, {})) == 7);
  CHECK(free_variables(Formula(5, {clause({0, 1}, ClauseType::forbid_one(2, 3))})) == 3);
  CHECK(parse_engine("bruteforce") == Engine::BruteForce);
  CHECK_THROWS_AS(parse_engine("magic"), InvalidInput);
}
