#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "oracles.hpp"
#include "satconc/errors.hpp"
#include "satconc/experiments.hpp"
#include "satconc/stats.hpp"

using namespace satconc;
using namespace satconc::experiments;
using ensembles::Model;
using ensembles::MuSpec;

namespace {

MuSpec mu_of(const std::string& family, int k) {
  MuSpec m;
  m.family = family;
  m.k = k;
  return m;
}

RunOptions opts(long samples, std::uint64_t seed, int threads = 1) {
  RunOptions o;
  o.samples = samples;
  o.seed = SeedSpec{seed, 0};
  o.threads = threads;
  return o;
}

}  // namespace

TEST_CASE("statistics") {
  const auto a = stats::wilson(5, 10);
  CHECK(a.low == doctest::Approx(0.2366).epsilon(1e-3));
  CHECK(a.high == doctest::Approx(0.7634).epsilon(1e-3));
  const auto b = stats::wilson(0, 10);
  CHECK(b.low == 0.0);
  CHECK(b.high == doctest::Approx(0.2775).epsilon(1e-3));
  const auto c = stats::wilson(10, 10);
  CHECK(c.low == doctest::Approx(0.7225).epsilon(1e-3));
  CHECK(c.high == 1.0);
  for (std::size_t s = 0; s <= 50; ++s) {
    const auto w = stats::wilson(s, 50);
    CHECK(w.low <= s / 50.0);
    CHECK(w.high >= s / 50.0);
    CHECK(w.low >= 0.0);
    CHECK(w.high <= 1.0);
  }
  stats::MeanAccumulator acc;
  for (double x : {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0}) acc.add(x);
  CHECK(acc.mean() == doctest::Approx(5.0));
  CHECK(acc.variance() == doctest::Approx(32.0 / 7.0));
  CHECK(acc.std_error() == doctest::Approx(std::sqrt(32.0 / 7.0 / 8.0)));
  const std::vector<double> xs = {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
  CHECK(stats::sample_stddev(xs) == doctest::Approx(std::sqrt(32.0 / 7.0)));
  const auto boot = stats::bootstrap_stddev(xs, 2000, SeedSpec{1, 0});
  CHECK(boot.low < boot.high);
  CHECK(boot.low >= 0.0);
  const auto boot2 = stats::bootstrap_stddev(xs, 2000, SeedSpec{1, 0});
  CHECK(boot.low == boot2.low);
  CHECK(boot.high == boot2.high);
}

TEST_CASE("count thresholds") {
  CHECK(count_threshold(10, 0.0) == 1);
  CHECK(count_threshold(10, 1.0) == 1024);
  CHECK(count_threshold(10, 0.5) == 32);
  CHECK(count_threshold(10, 0.3) == 8);      // 2^3
  CHECK(count_threshold(10, 0.35) == 12);    // ceil(11.31)
  CHECK(count_threshold(7, 0.5) == 12);      // ceil(11.31)
  CHECK(count_threshold(200, 1.0) == BigInt(1) << 200);
  CHECK(count_threshold(3000, 0.999) == (BigInt(1) << 2997));
  CHECK_THROWS(count_threshold(10, 1.5));
}

TEST_CASE("alpha = 0 estimates are exact") {
  const EnsembleSpec spec(Model::Poisson, 12, 0.0, mu_of("ksat", 3));
  for (double phi : {0.0, 0.3, 0.99}) {
    const auto p = estimate_p(spec, phi, opts(100, 1));
    CHECK(p.value == 0.0);
    CHECK(p.samples == 100);
    CHECK(p.ci_low == 0.0);
  }
  CHECK(estimate_p(spec, 1.0, opts(50, 1)).value == 0.0);
  const auto psi = estimate_psi(spec, opts(100, 2));
  CHECK(psi.psi.value == 1.0);
  CHECK(psi.psi.std_error == 0.0);
  CHECK(psi.psi.conditioning);
  CHECK(psi.eps.value == 0.0);
  CHECK(psi.tau.value == doctest::Approx(std::log2(1.0 + std::ldexp(1.0, -12))).epsilon(1e-12));

  const auto sa = check_superadditivity(3, 4, 0.0, mu_of("ksat", 2), opts(50, 3));
  CHECK(sa.lhs.value == doctest::Approx(std::log2(1.0 + 128.0)).epsilon(1e-15));
  CHECK(sa.lhs.value == sa.rhs.value);
  CHECK(sa.verdict == Verdict::Consistent);

  const auto interp = check_interpolation_monotone(3, 3, 0.0, mu_of("ksat", 2), {0.0, 0.5, 1.0}, opts(20, 4));
  for (const auto& p : interp.points) CHECK(p.value == interp.points[0].value);

  const auto profile = concentration_profile(EnsembleSpec(Model::Poisson, 10, 0.0, mu_of("ksat", 2)), {10, 20, 30},
                                             opts(50, 5), 200);
  for (const auto& row : profile) {
    CHECK(row.mean.value == 1.0);
    CHECK(row.stddev.value == 0.0);
  }
}

TEST_CASE("estimators are deterministic across thread counts") {
  const EnsembleSpec spec(Model::Poisson, 20, 1.5, mu_of("ksat", 3));
  const auto a = estimate_psi(spec, opts(300, 9, 1));
  const auto b = estimate_psi(spec, opts(300, 9, 3));
  CHECK(a.psi.to_json().dump() == b.psi.to_json().dump());
  CHECK(a.tau.to_json().dump() == b.tau.to_json().dump());
  ::setenv("SATCONC_THREADS", "2", 1);
  const auto c = estimate_psi(spec, opts(300, 9, 0));
  ::unsetenv("SATCONC_THREADS");
  CHECK(a.psi.to_json().dump() == c.psi.to_json().dump());
  ::setenv("SATCONC_THREADS", "zero", 1);
  CHECK_THROWS(estimate_psi(spec, opts(10, 9, 0)));
  ::unsetenv("SATCONC_THREADS");
}

TEST_CASE("estimate_p matches oracle counts on small n") {
  const EnsembleSpec spec(Model::FixedM, 10, 1.2, mu_of("ksat", 3));
  const auto o = opts(400, 21);
  const auto rec = estimate_p(spec, 0.5, o);
  long hits = 0;
  for (long i = 0; i < o.samples; ++i)
    if (oracle::count(ensembles::sample(spec, o.seed.child(static_cast<std::uint64_t>(i)))) < 32) ++hits;
  CHECK(rec.value == doctest::Approx(hits / 400.0));
  CHECK(rec.ci_low <= rec.value);
  CHECK(rec.value <= rec.ci_high);
  // Same trials at phi = 0 use the decision route.
  const auto unsat = estimate_p(spec, 0.0, o);
  long zeros = 0;
  for (long i = 0; i < o.samples; ++i)
    if (oracle::count(ensembles::sample(spec, o.seed.child(static_cast<std::uint64_t>(i)))) == 0) ++zeros;
  CHECK(unsat.value == doctest::Approx(zeros / 400.0));
}

TEST_CASE("coupled monotonicity in alpha") {
  const EnsembleSpec spec(Model::Poisson, 50, 0.3, mu_of("ksat", 2));
  const auto lo = estimate_p(spec, 0.3, opts(1000, 31));
  const auto hi = estimate_p(spec.with_alpha(0.9), 0.3, opts(1000, 31));
  CHECK(lo.value < hi.value);
  CHECK(hi.value - lo.value > 3.0 * std::hypot(lo.std_error, hi.std_error));

  const EnsembleSpec s60(Model::Poisson, 60, 0.2, mu_of("ksat", 2));
  const auto p2 = estimate_psi(s60, opts(500, 32));
  const auto p8 = estimate_psi(s60.with_alpha(0.8), opts(500, 32));
  CHECK(p2.psi.value - p8.psi.value > 3.0 * std::hypot(p2.psi.std_error, p8.psi.std_error));

  const EnsembleSpec s100(Model::Poisson, 100, 0.5, mu_of("ksat", 2));
  const auto p = estimate_psi(s100, opts(1000, 33));
  CHECK(p.eps.value <= 0.05);
  CHECK(p.tau.value <= std::ldexp(1.0, -20));
}

TEST_CASE("threshold search") {
  const EnsembleSpec spec(Model::Poisson, 40, 1.0, mu_of("ksat", 2));
  ThresholdOptions t;
  t.tol_alpha = 0.05;
  const auto a = locate_threshold_alpha(spec, 0.0, t, opts(400, 41));
  CHECK(a.value > 0.5);
  CHECK(a.value < 2.0);
  CHECK(a.ci_low <= a.value);
  CHECK(a.value <= a.ci_high);
  const auto b = locate_threshold_alpha(spec, 0.0, t, opts(400, 41));
  CHECK(a.to_json().dump() == b.to_json().dump());

  const auto w = critical_window(spec, 0.0, 0.2, 0.05, opts(400, 42));
  CHECK(w.width > 0.0);
  CHECK(w.alpha_eps.value <= w.alpha_half.value);
  CHECK(w.alpha_half.value <= w.alpha_one_minus_eps.value);

  const EnsembleSpec s100(Model::Poisson, 100, 1.0, mu_of("ksat", 2));
  const auto p1 = locate_threshold_alpha(s100, 0.1, t, opts(300, 43));
  const auto p4 = locate_threshold_alpha(s100, 0.4, t, opts(300, 43));
  CHECK(p1.value >= p4.value);
}

TEST_CASE("inequality reports") {
  EstimateRecord l, r;
  l.value = 1.0;
  l.std_error = 0.1;
  r.value = 1.5;
  r.std_error = 0.1;
  const auto rep = compare("x", l, r);
  CHECK(rep.diff == doctest::Approx(-0.5));
  CHECK(rep.diff_se == doctest::Approx(std::sqrt(0.02)));
  CHECK(rep.verdict == Verdict::Violation);
  r.value = 1.2;
  CHECK(compare("x", l, r).verdict == Verdict::Consistent);
  CHECK(verdict_name(Verdict::Violation) == "violation_at_3se");

  const auto sa = check_superadditivity(3, 3, 0.8, mu_of("ksat", 2), opts(2000, 51));
  CHECK(sa.verdict == Verdict::Consistent);
  CHECK_THROWS_AS(check_superadditivity(1, 3, 0.8, mu_of("ksat", 2), opts(10, 51)), InvalidInput);

  const auto decay = check_geometric_decay(10, 5, {0, 1, 2, 3}, 2, 3, opts(2000, 52));
  CHECK(decay.verdict == Verdict::Consistent);
  REQUIRE(decay.rows.size() == 4);
  CHECK(decay.rows[0].bound == 2.0);
  CHECK(decay.rows[2].bound == doctest::Approx(2 * 0.75 * 0.75));
  for (const auto& row : decay.rows) CHECK(row.holds);
}
