#include <sstream>

#include "doctest.h"
#include "satconc/distribution.hpp"
#include "satconc/errors.hpp"
#include "satconc/formula.hpp"
#include "satconc/formula_io.hpp"

using namespace satconc;

namespace {

std::vector<Spin> spins(std::initializer_list<int> xs) {
  std::vector<Spin> v;
  for (int x : xs) v.push_back(static_cast<Spin>(x));
  return v;
}

std::uint32_t pos(std::initializer_list<int> xs) { return tuple_position(spins(xs)); }

Rational weight_sum(const ClauseTypeDistribution& mu) {
  Rational s = 0;
  for (const auto& wt : mu.support()) s += wt.exact;
  return s;
}

}  // namespace

TEST_CASE("spin encoding") {
  CHECK(pos({-1, -1}) == 0);
  CHECK(pos({1, -1}) == 1);
  CHECK(pos({-1, 1}) == 2);
  CHECK(tuple_at(5, 3) == spins({1, -1, 1}));
  CHECK_THROWS_AS(Assignment(spins({1, 0})), InvalidInput);
}

TEST_CASE("eval_clause") {
  const auto sat2 = ClauseType::forbid_one(2, pos({1, 1}));
  CHECK(eval_clause(sat2, spins({1, 1})) == 0);
  CHECK(eval_clause(sat2, spins({-1, 1})) == 1);
  CHECK(eval_clause(ClauseType::parity(3, 1), spins({1, -1, -1})) == 1);
  CHECK(eval_clause(ClauseType::parity(3, 1), spins({1, 1, -1})) == 0);
  CHECK_THROWS_AS(eval_clause(sat2, spins({1})), InvalidInput);
}

TEST_CASE("satisfies") {
  const Formula empty(2, {});
  CHECK(satisfies(empty, Assignment(spins({-1, 1}))));
  const Formula f(2, {{{0, 1}, ClauseType::forbid_one(2, pos({-1, -1}))}});
  CHECK_FALSE(satisfies(f, Assignment(spins({-1, -1}))));
  CHECK(satisfies(f, Assignment(spins({1, -1}))));
  CHECK_THROWS_AS(satisfies(f, Assignment(spins({1}))), InvalidInput);
}

TEST_CASE("complement is an involution and negates evaluation") {
  for (int k : {1, 3, 7, 9}) {
    ClauseType t(k);
    for (std::uint32_t j = 0; j < t.table_size(); j += 3) t.set(j, true);
    CHECK(t.complement().complement() == t);
    for (std::uint32_t j = 0; j < t.table_size(); ++j) {
      const auto x = tuple_at(j, k);
      CHECK(eval_clause(t.complement(), x) == !eval_clause(t, x));
    }
  }
}

TEST_CASE("multi-word tables") {
  ClauseType t(10);
  CHECK(t.table_size() == 1024);
  t.set(1000, true);
  t.set(3, true);
  CHECK(t.at(1000));
  CHECK(t.count_ones() == 2);
  CHECK(ClauseType::from_hex(10, t.to_hex()) == t);
  const auto r = t.restrict(9, -1);
  CHECK(r.arity() == 9);
  CHECK(r.count_ones() == 1);
  CHECK(ClauseType::forbid_one(16, 12345).zeros() == std::vector<std::uint32_t>{12345});
  CHECK_THROWS_AS(ClauseType(17), InvalidInput);
}

TEST_CASE("hex round trip and restriction helpers") {
  const auto t = ClauseType::forbid_one(3, 6);
  CHECK(t.to_hex() == "bf");
  CHECK(ClauseType::from_hex(3, "bf") == t);
  CHECK(ClauseType::from_hex(1, "1") == ClauseType::from_word(1, 1));
  const auto forcing = ClauseType::from_predicate(2, [](std::uint32_t j) { return (j & 1u) != 0; });
  CHECK(forcing.forced_value(0) == 1);
  CHECK(forcing.forced_value(1) == 0);
  CHECK(forcing.ignores(1));
  CHECK(ClauseType::parity(4, -1).parity_sign() == -1);
  CHECK(ClauseType::forbid_one(4, 3).parity_sign() == 0);
}

TEST_CASE("restrict_to_diagonal") {
  // phi(x1, x2, x3) = 1(x != (+1,+1,+1)) placed on (v, v, w) becomes 1((v,w) != (+1,+1)).
  const auto phi = ClauseType::forbid_one(3, 7);
  const std::vector<std::uint32_t> idx = {4, 4, 2};
  auto [vars, table] = restrict_to_diagonal(idx, phi);
  CHECK(vars == std::vector<std::uint32_t>{4, 2});
  CHECK(table == ClauseType::forbid_one(2, 3));
  // 2-XOR on (v, v) is constant.
  auto [v2, t2] = restrict_to_diagonal(std::vector<std::uint32_t>{1, 1}, ClauseType::parity(2, -1));
  CHECK(v2.size() == 1);
  CHECK(t2.is_zero());
}

TEST_CASE("make_ksat") {
  CHECK_THROWS_AS(make_ksat(0), InvalidInput);
  CHECK_THROWS_AS(make_ksat(17), InvalidInput);
  const auto k1 = make_ksat(1);
  CHECK(k1.size() == 2);
  CHECK(k1.support()[0].exact == Rational(1, 2));
  const auto k2 = make_ksat(2);
  CHECK(k2.size() == 4);
  for (const auto& wt : k2.support()) {
    CHECK(wt.exact == Rational(1, 4));
    CHECK(wt.type.count_ones() == 3);
  }
  for (int k = 1; k <= 6; ++k) {
    const auto mu = make_ksat(k);
    CHECK(weight_sum(mu) == 1);
    for (const auto& wt : mu.support()) CHECK(wt.type.zeros().size() == 1);
  }
  const auto k3 = make_ksat(3);
  for (const auto& wt : k3.support()) CHECK(wt.type.count_ones() == 7);
}

TEST_CASE("named families") {
  const auto h3 = make_hyp2col(3);
  REQUIRE(h3.size() == 1);
  CHECK(h3.support()[0].type.count_ones() == 6);
  const auto x2 = make_xor(2);
  CHECK(x2.size() == 2);
  for (const auto& wt : x2.support()) {
    CHECK(wt.exact == Rational(1, 2));
    CHECK(wt.type.count_ones() == 2);
  }
  CHECK(make_nae(2).size() == 2);
  for (int k = 2; k <= 6; ++k) {
    const auto nae = make_nae(k);
    CHECK(nae.size() == (1u << (k - 1)));
    for (const auto& wt : nae.support()) CHECK(wt.exact == Rational(1, 1 << (k - 1)));
    CHECK(weight_sum(nae) == 1);
    CHECK(weight_sum(make_xor(k)) == 1);
    CHECK(make_xor(k).is_parity());
  }
  CHECK_THROWS_AS(make_nae(1), InvalidInput);
  CHECK_THROWS_AS(make_hyp2col(1), InvalidInput);
  CHECK_NOTHROW(make_xor(1));
}

TEST_CASE("k-factorizing reproduces the named families") {
  for (int k = 1; k <= 5; ++k) CHECK(make_k_factorizing(k, column_law_ksat()) == make_ksat(k));
  for (int k = 2; k <= 5; ++k) CHECK(make_k_factorizing(k, column_law_hyp2col()) == make_hyp2col(k));
  for (int k = 2; k <= 5; ++k) CHECK(make_k_factorizing(k, column_law_nae()) == make_nae(k));
  // Colliding forbidden points merge: J = 2 with uniform columns on k = 2.
  ColumnLaw uniform{2, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}};
  const auto mu = make_k_factorizing(2, uniform);
  CHECK(weight_sum(mu) == 1);
  std::size_t one_zero = 0;
  for (const auto& wt : mu.support())
    if (wt.type.zeros().size() == 1) ++one_zero;
  CHECK(one_zero == 4);
  CHECK_THROWS_AS(make_k_factorizing(11, uniform), ResourceError);
  CHECK_THROWS_AS(make_k_factorizing(2, ColumnLaw{1, {Rational(1, 2), Rational(1, 3)}}), InvalidInput);
}

TEST_CASE("distribution validation") {
  const auto t = ClauseType::forbid_one(2, 0);
  CHECK_THROWS_AS(ClauseTypeDistribution(2, {{t, Rational(1, 2)}}), InvalidInput);
  CHECK_THROWS_AS(ClauseTypeDistribution(2, {{t, Rational(0)}, {t, Rational(1)}}), InvalidInput);
  CHECK_THROWS_AS(ClauseTypeDistribution(2, {{ClauseType::forbid_one(3, 0), Rational(1)}}), InvalidInput);
  const ClauseTypeDistribution merged(2, {{t, Rational(1, 2)}, {t, Rational(1, 2)}});
  CHECK(merged.size() == 1);
  CHECK(merged.support()[0].exact == 1);
}

TEST_CASE("formula validation and free variables") {
  CHECK_THROWS_AS(Formula(2, {{{0, 2}, ClauseType::forbid_one(2, 0)}}), InvalidInput);
  CHECK_THROWS_AS(Formula(3, {{{0, 1}, ClauseType::forbid_one(2, 0)}, {{0, 1, 2}, ClauseType::forbid_one(3, 0)}}),
                  InvalidInput);
  CHECK(free_variables(Formula(7, {})) == 7);
  CHECK(free_variables(Formula(5, {{{0, 1}, ClauseType::forbid_one(2, 0)}})) == 3);
}

TEST_CASE("DIMACS round trip") {
  // x1 v -x2 forbids (x1, x2) = (-1, +1).
  std::istringstream in("c hello\np cnf 3 2\n1 -2 0\n-3 2 0\n");
  const Formula f = read_formula(in);
  REQUIRE(f.num_clauses() == 2);
  CHECK(f.clauses()[0].vars == std::vector<std::uint32_t>{0, 1});
  CHECK(f.clauses()[0].type == ClauseType::forbid_one(2, pos({-1, 1})));
  CHECK(f.clauses()[1].type == ClauseType::forbid_one(2, pos({1, -1})));
  std::ostringstream out;
  write_dimacs(out, f);
  std::istringstream back(out.str());
  CHECK(read_formula(back) == f);

  Provenance p{std::make_shared<const std::string>("{\"model\":\"poisson\"}"), 42, 7};
  const Formula g = f.with_provenance(p);
  std::ostringstream out2;
  write_dimacs(out2, g);
  std::istringstream back2(out2.str());
  const Formula h = read_formula(back2);
  REQUIRE(h.provenance());
  CHECK(*h.provenance() == p);
}

TEST_CASE("CSP round trip with repeated indices") {
  const Formula f(4, {{{0, 0, 3}, ClauseType::parity(3, -1)}, {{2, 1, 0}, make_hyp2col(3).support()[0].type}},
                  Provenance{std::make_shared<const std::string>("{}"), 1, 2});
  std::ostringstream out;
  write_csp(out, f);
  std::istringstream in(out.str());
  const Formula g = read_formula(in);
  CHECK(g == f);
  REQUIRE(g.provenance());
  CHECK(*g.provenance() == *f.provenance());
  std::ostringstream bad;
  CHECK_THROWS_AS(write_dimacs(bad, f), InvalidInput);
  std::istringstream garbage("p cnf 2 1\n1 x 0\n");
  CHECK_THROWS_AS(read_formula(garbage), InvalidInput);
}
