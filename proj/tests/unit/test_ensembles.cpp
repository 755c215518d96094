#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "satconc/counting.hpp"
#include "satconc/ensembles.hpp"
#include "satconc/errors.hpp"

using namespace satconc;
using namespace satconc::ensembles;

namespace {

MuSpec mu_of(const std::string& family, int k) {
  MuSpec m;
  m.family = family;
  m.k = k;
  return m;
}

bool is_prefix(const Formula& a, const Formula& b) {
  if (a.num_clauses() > b.num_clauses()) return false;
  for (std::size_t i = 0; i < a.num_clauses(); ++i)
    if (!(a.clauses()[i] == b.clauses()[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("binomial subsets") {
  CHECK(sample_binomial_subsets(10, 2, 0.0, {1, 0}).num_clauses() == 0);
  // p = alpha n / (C(3,2) 4) = 1 at alpha = 4.
  const Formula all = sample_binomial_subsets(3, 2, 4.0, {1, 0});
  CHECK(all.num_clauses() == 12);
  CHECK(counting::count_bruteforce(all).z == 0);
  CHECK_THROWS_AS(sample_binomial_subsets(3, 2, 4.5, {1, 0}), InvalidInput);

  double sum = 0.0, sum2 = 0.0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    const Formula f = sample_binomial_subsets(20, 2, 0.5, SeedSpec{3, 0}.child(i));
    std::set<std::vector<std::uint32_t>> keys;
    for (const auto& c : f.clauses()) {
      REQUIRE(c.vars.size() == 2);
      CHECK(c.vars[0] < c.vars[1]);
      std::vector<std::uint32_t> key = c.vars;
      key.push_back(static_cast<std::uint32_t>(c.type.single_forbidden()));
      CHECK(keys.insert(key).second);
    }
    CHECK(is_pure_ksat(f));
    const double m = static_cast<double>(f.num_clauses());
    sum += m;
    sum2 += m * m;
  }
  const double mean = sum / trials;
  const double var = sum2 / trials - mean * mean;
  CHECK(std::abs(mean - 10.0) < 4.0 * std::sqrt(var / trials));
}

TEST_CASE("fixed m") {
  const auto ksat2 = make_ksat(2);
  CHECK(sample_fixed_m(5, 0, ksat2, {1, 0}).num_clauses() == 0);
  const auto hyp = make_hyp2col(3);
  const Formula h = sample_fixed_m(6, 50, hyp, {1, 0});
  CHECK(h.num_clauses() == 50);
  for (const auto& c : h.clauses()) CHECK(c.type == hyp.support()[0].type);

  const long m = 10000;
  const Formula f = sample_fixed_m(10, m, ksat2, {2, 0});
  std::map<std::int64_t, long> freq;
  bool repeated = false;
  for (const auto& c : f.clauses()) {
    ++freq[c.type.single_forbidden()];
    for (auto v : c.vars) CHECK(v < 10u);
    if (c.vars[0] == c.vars[1]) repeated = true;
  }
  CHECK(repeated);
  CHECK(freq.size() == 4);
  const double se = std::sqrt(0.25 * 0.75 / m);
  for (const auto& [s, count] : freq) CHECK(std::abs(static_cast<double>(count) / m - 0.25) < 4.0 * se);
}

TEST_CASE("poisson") {
  const auto ksat3 = make_ksat(3);
  CHECK(sample_poisson(10, 0.0, ksat3, {1, 0}).num_clauses() == 0);
  double sum = 0.0, sum2 = 0.0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    Rng rng = SeedSpec{5, 0}.child(i).rng(1);
    const double m = static_cast<double>(poisson_quantile(100.0, rng.uniform_open()));
    sum += m;
    sum2 += m * m;
  }
  const double mean = sum / trials, var = sum2 / trials - mean * mean;
  CHECK(std::abs(mean - 100.0) < 4.0 * std::sqrt(100.0 / trials));
  CHECK(std::abs(var - 100.0) < 10.0);

  double fsum = 0.0;
  for (int i = 0; i < 10000; ++i) fsum += static_cast<double>(sample_poisson(100, 1.0, ksat3, SeedSpec{6, 0}.child(i)).num_clauses());
  CHECK(std::abs(fsum / 10000 - 100.0) < 4.0 * std::sqrt(100.0 / 10000));
}

TEST_CASE("quantile helpers are exact inverse CDFs") {
  CHECK(poisson_quantile(0.0, 0.5) == 0);
  CHECK(poisson_quantile(1.0, 0.3) == 0);   // CDF(0) = e^-1 = 0.3679
  CHECK(poisson_quantile(1.0, 0.4) == 1);
  CHECK(binomial_quantile(10, 0.5, 0.5) == 5);
  CHECK(binomial_quantile(12, 1.0, 0.1) == 12);
  for (double u : {0.01, 0.2, 0.5, 0.77, 0.999}) {
    long last = 0;
    for (double mean : {0.5, 1.0, 5.0, 20.0, 80.0}) {
      const long m = poisson_quantile(mean, u);
      CHECK(m >= last);
      last = m;
    }
  }
}

TEST_CASE("interpolated model") {
  const auto mu = make_ksat(2);
  for (int i = 0; i < 50; ++i) {
    const SeedSpec s = SeedSpec{9, 0}.child(i);
    const Formula a = sample_interpolated(5, 7, 0.8, mu, 1.0, s);
    const Formula b = sample_poisson(12, 0.8, mu, s);
    CHECK(a == b);
  }
  CHECK(sample_interpolated(4, 4, 0.0, mu, 0.0, {1, 0}).num_clauses() == 0);
  CHECK(counting::count(sample_interpolated(4, 4, 0.0, mu, 0.0, {1, 0})).z == 256);
  for (int i = 0; i < 100; ++i) {
    const Formula f = sample_interpolated(5, 6, 1.0, mu, 0.0, SeedSpec{10, 0}.child(i));
    std::vector<PlacedClause> left, right;
    for (const auto& c : f.clauses()) {
      const bool in_left = c.vars[0] < 5 && c.vars[1] < 5;
      const bool in_right = c.vars[0] >= 5 && c.vars[1] >= 5;
      REQUIRE((in_left || in_right));
      if (in_left) {
        left.push_back(c);
      } else {
        PlacedClause shifted = c;
        for (auto& v : shifted.vars) v -= 5;
        right.push_back(shifted);
      }
    }
    const BigInt z1 = oracle::count(Formula(5, left)), z2 = oracle::count(Formula(6, right));
    CHECK(counting::count(f).z == z1 * z2);
  }
  CHECK_THROWS_AS(sample_interpolated(1, 5, 1.0, mu, 0.5, {1, 0}), InvalidInput);
  CHECK_THROWS_AS(sample_interpolated(3, 5, 1.0, mu, 1.5, {1, 0}), InvalidInput);

  for (double t : {0.0, 0.3, 1.0}) {
    double sum = 0.0;
    const int trials = 4000;
    for (int i = 0; i < trials; ++i)
      sum += static_cast<double>(sample_interpolated(4, 8, 1.5, mu, t, SeedSpec{11, 0}.child(i)).num_clauses());
    const double expected = 1.5 * 12 * t + 1.5 * 4 * (1 - t) + 1.5 * 8 * (1 - t);
    CHECK(std::abs(sum / trials - expected) < 4.0 * std::sqrt(expected / trials));
  }
}

TEST_CASE("extension and coupling") {
  const auto mu = make_ksat(3);
  const Formula base = sample_fixed_m(12, 20, mu, {1, 0});
  CHECK(extend_with_uniform_clauses(base, 0, mu, {2, 0}) == base);
  const Formula a = extend_with_uniform_clauses(extend_with_uniform_clauses(base, 3, mu, {2, 0}), 4, mu, {2, 0});
  const Formula b = extend_with_uniform_clauses(base, 7, mu, {2, 0});
  CHECK(a == b);
  CHECK(base.num_clauses() == 20);
  BigInt last = counting::count(base).z;
  int last_free = free_variables(base);
  for (long l = 1; l <= 10; ++l) {
    const Formula f = extend_with_uniform_clauses(base, l, mu, {2, 0});
    const BigInt z = counting::count(f).z;
    CHECK(z <= last);
    CHECK(free_variables(f) <= last_free);
    last = z;
    last_free = free_variables(f);
  }
  const Formula subset = extend_with_uniform_clauses(Formula(6, {}), 40, mu, {3, 0}, true);
  CHECK(is_pure_ksat(subset));
}

TEST_CASE("ensemble specs, determinism and nested coupling across alpha") {
  for (Model model : {Model::BinomialSubsets, Model::FixedM, Model::Poisson}) {
    const EnsembleSpec spec(model, 30, 0.4, mu_of("ksat", 2));
    const SeedSpec seed{77, 3};
    const Formula f = sample(spec, seed);
    CHECK(f == sample(spec, seed));
    REQUIRE(f.provenance());
    CHECK(f.provenance()->master_seed == 77);
    CHECK(f.provenance()->stream_id == 3);
    CHECK(EnsembleSpec::from_json(nlohmann::json::parse(f.provenance()->ensemble_json())).to_json() == spec.to_json());
    for (int i = 0; i < 20; ++i) {
      const SeedSpec s = seed.child(i);
      const Formula low = sample(spec.with_alpha(0.4), s), high = sample(spec.with_alpha(1.1), s);
      CHECK(is_prefix(low, high));
    }
  }
  CHECK(sample(EnsembleSpec(Model::FixedM, 10, 0.29, mu_of("ksat", 3)), {1, 0}).num_clauses() == 2);
  const EnsembleSpec interp(Model::Interpolated, 0, 0.5, mu_of("nae", 3), 4, 8, 0.25);
  CHECK(interp.n() == 12);
  CHECK(EnsembleSpec::from_json(interp.to_json()).to_json() == interp.to_json());
  CHECK_THROWS_AS(EnsembleSpec(Model::BinomialSubsets, 10, 0.5, mu_of("nae", 3)), InvalidInput);
  CHECK_THROWS_AS(EnsembleSpec(Model::Poisson, 10, -1.0, mu_of("ksat", 3)), InvalidInput);
  CHECK_THROWS_AS(EnsembleSpec(Model::Interpolated, 0, 0.5, mu_of("ksat", 3), 2, 8, 0.5), InvalidInput);
  CHECK_THROWS_AS(parse_model("gaussian"), InvalidInput);
}

TEST_CASE("mu specs round trip through JSON") {
  MuSpec kf;
  kf.family = "k_factorizing";
  kf.k = 3;
  kf.column_law = column_law_nae();
  CHECK(mu_from_json(mu_to_json(kf)).build() == make_nae(3));
  const auto custom = MuSpec::describe(make_xor(3));
  CHECK(mu_from_json(mu_to_json(custom)).build() == make_xor(3));
  const auto j = nlohmann::json::parse(R"({"family":"custom","k":2,"support":[{"table":"e","weight":"1/3"},{"table":"7","weight":"2/3"}]})");
  const auto mu = mu_from_json(j).build();
  CHECK(mu.size() == 2);
  CHECK_THROWS_AS(mu_from_json(nlohmann::json::parse(R"({"family":"sat","k":2})")).build(), InvalidInput);
}
