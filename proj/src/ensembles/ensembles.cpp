#include "satconc/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "satconc/errors.hpp"

namespace satconc::ensembles {

namespace {

// Sub-stream tags. Poisson and the full-system part of the interpolated model share tags so
// that t = 1 reproduces sample_poisson draw for draw.
enum Tag : std::uint64_t {
  kCount = 1,
  kClause = 2,
  kBlock1Count = 3,
  kBlock1Clause = 4,
  kBlock2Count = 5,
  kBlock2Clause = 6,
  kExtend = 7,
  kSubsets = 8,
};

using nlohmann::json;

Rational rational_from_json(const json& j) {
  if (j.is_number()) return to_rational(j.get<double>());
  if (j.is_string()) {
    try {
      return Rational(j.get<std::string>());
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse probability '" + j.get<std::string>() + "'");
    }
  }
  throw InvalidInput("probability must be a number or a rational string");
}

json rational_to_json(const Rational& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  if (boost::multiprecision::denominator(r) != 1)
    s += "/" + boost::multiprecision::denominator(r).str();
  return s;
}

double binom_coeff(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

// Draws one clause with k distinct variables from [offset, offset+span), in increasing order.
PlacedClause draw_subset_clause(Rng& rng, std::uint32_t offset, std::uint32_t span, int k,
                                const ClauseTypeDistribution& mu) {
  PlacedClause c;
  c.vars.reserve(static_cast<std::size_t>(k));
  while (static_cast<int>(c.vars.size()) < k) {
    const auto v = offset + static_cast<std::uint32_t>(rng.below(span));
    if (std::find(c.vars.begin(), c.vars.end(), v) == c.vars.end()) c.vars.push_back(v);
  }
  std::sort(c.vars.begin(), c.vars.end());
  c.type = mu.support()[mu.pick(rng.uniform())].type;
  return c;
}

// Draws one clause with k i.i.d. uniform indices in [offset, offset+span).
PlacedClause draw_iid_clause(Rng& rng, std::uint32_t offset, std::uint32_t span, int k,
                             const ClauseTypeDistribution& mu) {
  PlacedClause c;
  c.vars.resize(static_cast<std::size_t>(k));
  for (auto& v : c.vars) v = offset + static_cast<std::uint32_t>(rng.below(span));
  c.type = mu.support()[mu.pick(rng.uniform())].type;
  return c;
}

void append_iid_block(std::vector<PlacedClause>& out, long count, std::uint32_t offset,
                      std::uint32_t span, const ClauseTypeDistribution& mu, SeedSpec seed,
                      Tag tag) {
  for (long j = 0; j < count; ++j) {
    Rng rng = seed.rng(tag, static_cast<std::uint64_t>(j));
    out.push_back(draw_iid_clause(rng, offset, span, mu.arity(), mu));
  }
}

void check_mu_n(int n, const ClauseTypeDistribution& mu) {
  if (n < 1) throw InvalidInput("ensembles need at least one variable");
  (void)mu;
}

Formula binomial_impl(int n, int k, double alpha, SeedSpec seed) {
  if (k < 1 || k > n) throw InvalidInput("binomial subset model requires 1 <= k <= n");
  if (!(alpha >= 0.0)) throw InvalidInput("clause density must be non-negative");
  const double p = binomial_inclusion_probability(n, k, alpha);
  if (p > 1.0) throw InvalidInput("invalid density: inclusion probability exceeds 1");
  const double candidates = binom_coeff(n, k) * std::ldexp(1.0, k);
  if (candidates > 9.0e15) throw InvalidInput("candidate clause set too large");
  const long total = static_cast<long>(candidates);
  Rng count_rng = seed.rng(kCount);
  const long m = binomial_quantile(total, p, count_rng.uniform_open());

  const ClauseTypeDistribution mu = make_ksat(k);

  std::vector<PlacedClause> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  std::unordered_set<std::string> seen;
  Rng rng = seed.rng(kSubsets);
  while (static_cast<long>(clauses.size()) < m) {
    PlacedClause c = draw_subset_clause(rng, 0, static_cast<std::uint32_t>(n), k, mu);
    std::string key(reinterpret_cast<const char*>(c.vars.data()), c.vars.size() * sizeof(std::uint32_t));
    key.push_back(static_cast<char>(c.type.single_forbidden()));
    key.push_back(static_cast<char>(c.type.single_forbidden() >> 8));
    if (seen.insert(std::move(key)).second) clauses.push_back(std::move(c));
  }
  return Formula(n, std::move(clauses));
}

Formula fixed_m_impl(int n, long m, const ClauseTypeDistribution& mu, SeedSpec seed) {
  check_mu_n(n, mu);
  if (m < 0) throw InvalidInput("clause count must be non-negative");
  std::vector<PlacedClause> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  append_iid_block(clauses, m, 0, static_cast<std::uint32_t>(n), mu, seed, kClause);
  return Formula(n, std::move(clauses));
}

Formula poisson_impl(int n, double alpha, const ClauseTypeDistribution& mu, SeedSpec seed) {
  check_mu_n(n, mu);
  if (!(alpha >= 0.0)) throw InvalidInput("clause density must be non-negative");
  Rng count_rng = seed.rng(kCount);
  const long m = poisson_quantile(alpha * n, count_rng.uniform_open());
  std::vector<PlacedClause> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  append_iid_block(clauses, m, 0, static_cast<std::uint32_t>(n), mu, seed, kClause);
  return Formula(n, std::move(clauses));
}

Formula interpolated_impl(int n1, int n2, double alpha, const ClauseTypeDistribution& mu, double t,
                          SeedSpec seed) {
  const int k = mu.arity();
  if (n1 < k || n2 < k) throw InvalidInput("interpolated model requires n1, n2 >= k");
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("interpolation time must lie in [0, 1]");
  if (!(alpha >= 0.0)) throw InvalidInput("clause density must be non-negative");
  const int n = n1 + n2;
  Rng c0 = seed.rng(kCount), c1 = seed.rng(kBlock1Count), c2 = seed.rng(kBlock2Count);
  const long m = poisson_quantile(alpha * n * t, c0.uniform_open());
  const long m1 = poisson_quantile(alpha * n1 * (1.0 - t), c1.uniform_open());
  const long m2 = poisson_quantile(alpha * n2 * (1.0 - t), c2.uniform_open());
  std::vector<PlacedClause> clauses;
  clauses.reserve(static_cast<std::size_t>(m + m1 + m2));
  append_iid_block(clauses, m, 0, static_cast<std::uint32_t>(n), mu, seed, kClause);
  append_iid_block(clauses, m1, 0, static_cast<std::uint32_t>(n1), mu, seed, kBlock1Clause);
  append_iid_block(clauses, m2, static_cast<std::uint32_t>(n1), static_cast<std::uint32_t>(n2), mu,
                   seed, kBlock2Clause);
  return Formula(n, std::move(clauses));
}

// m = floor(alpha n), tolerant of alpha values like 0.29 that are not exact in binary.
long fixed_clause_count(int n, double alpha) {
  return static_cast<long>(std::floor(alpha * n + 1e-9));
}

Formula with_seed(Formula f, std::shared_ptr<const std::string> text, SeedSpec seed) {
  return f.with_provenance({std::move(text), seed.master_seed, seed.stream_id});
}

Formula annotate(Formula f, const json& j, SeedSpec seed) {
  return with_seed(std::move(f), std::make_shared<const std::string>(j.dump()), seed);
}

}  // namespace

// ---- MuSpec -------------------------------------------------------------------------------

ClauseTypeDistribution MuSpec::build() const {
  if (family == "ksat") return make_ksat(k);
  if (family == "nae") return make_nae(k);
  if (family == "hyp2col") return make_hyp2col(k);
  if (family == "xor") return make_xor(k);
  if (family == "k_factorizing") return make_k_factorizing(k, column_law);
  if (family == "custom") {
    std::vector<std::pair<ClauseType, Rational>> s;
    for (const auto& [hex, w] : support) s.emplace_back(ClauseType::from_hex(k, hex), w);
    return {k, std::move(s)};
  }
  throw InvalidInput("unknown clause family '" + family +
                     "' (expected ksat, nae, hyp2col, xor, k_factorizing, custom)");
}

MuSpec MuSpec::describe(const ClauseTypeDistribution& mu) {
  MuSpec m;
  m.family = "custom";
  m.k = mu.arity();
  for (const auto& s : mu.support()) m.support.emplace_back(s.type.to_hex(), s.exact);
  return m;
}

json mu_to_json(const MuSpec& mu) {
  json j = {{"family", mu.family}, {"k", mu.k}};
  if (mu.family == "k_factorizing") {
    j["J"] = mu.column_law.J;
    json probs = json::array();
    for (const auto& p : mu.column_law.probs) probs.push_back(rational_to_json(p));
    j["bar_mu"] = probs;
  } else if (mu.family == "custom") {
    json support = json::array();
    for (const auto& [hex, w] : mu.support) support.push_back({{"table", hex}, {"weight", rational_to_json(w)}});
    j["support"] = support;
  }
  return j;
}

MuSpec mu_from_json(const json& j) {
  MuSpec mu;
  if (!j.is_object()) throw InvalidInput("mu must be a JSON object");
  mu.family = j.value("family", std::string("ksat"));
  if (!j.contains("k")) throw InvalidInput("mu requires an arity 'k'");
  mu.k = j.at("k").get<int>();
  if (mu.family == "k_factorizing") {
    mu.column_law.J = j.value("J", 1);
    for (const auto& p : j.at("bar_mu")) mu.column_law.probs.push_back(rational_from_json(p));
  } else if (mu.family == "custom") {
    for (const auto& s : j.at("support"))
      mu.support.emplace_back(s.at("table").get<std::string>(), rational_from_json(s.at("weight")));
  }
  return mu;
}

// ---- EnsembleSpec -------------------------------------------------------------------------

std::string model_name(Model m) {
  switch (m) {
    case Model::BinomialSubsets: return "binomial";
    case Model::FixedM: return "fixed_m";
    case Model::Poisson: return "poisson";
    case Model::Interpolated: return "interpolated";
  }
  return "?";
}

Model parse_model(const std::string& name) {
  if (name == "binomial") return Model::BinomialSubsets;
  if (name == "fixed_m") return Model::FixedM;
  if (name == "poisson") return Model::Poisson;
  if (name == "interpolated") return Model::Interpolated;
  throw InvalidInput("unknown model '" + name + "' (expected binomial, fixed_m, poisson, interpolated)");
}

EnsembleSpec::EnsembleSpec(Model model, int n, double alpha, MuSpec mu, int n1, int n2, double t)
    : model_(model), n_(n), alpha_(alpha), mu_spec_(std::move(mu)), n1_(n1), n2_(n2), t_(t) {
  if (model_ == Model::Interpolated && n_ == 0) n_ = n1_ + n2_;
  finish();
}

void EnsembleSpec::finish() {
  mu_ = std::make_shared<const ClauseTypeDistribution>(mu_spec_.build());
  if (n_ < 1) throw InvalidInput("ensemble requires n >= 1");
  if (!(alpha_ >= 0.0) || !std::isfinite(alpha_)) throw InvalidInput("alpha must be a finite value >= 0");
  const int k = mu_spec_.k;
  if (model_ == Model::BinomialSubsets) {
    if (mu_spec_.family != "ksat" && !(*mu_ == make_ksat(k)))
      throw InvalidInput("binomial subset model is defined for uniform k-SAT only");
    if (k > n_) throw InvalidInput("binomial subset model requires k <= n");
    if (binomial_inclusion_probability(n_, k, alpha_) > 1.0)
      throw InvalidInput("invalid density: inclusion probability exceeds 1");
  }
  if (model_ == Model::Interpolated) {
    if (n1_ < k || n2_ < k) throw InvalidInput("interpolated model requires n1, n2 >= k");
    if (n1_ + n2_ != n_) throw InvalidInput("interpolated model requires n1 + n2 = n");
    if (!(t_ >= 0.0 && t_ <= 1.0)) throw InvalidInput("interpolation time must lie in [0, 1]");
  }
  json_text_ = std::make_shared<const std::string>(to_json().dump());
}

EnsembleSpec EnsembleSpec::with_alpha(double alpha) const {
  EnsembleSpec s = *this;
  s.alpha_ = alpha;
  s.finish();
  return s;
}

EnsembleSpec EnsembleSpec::with_n(int n) const {
  EnsembleSpec s = *this;
  s.n_ = n;
  s.finish();
  return s;
}

EnsembleSpec EnsembleSpec::with_blocks(int n1, int n2, double t) const {
  EnsembleSpec s = *this;
  s.n1_ = n1;
  s.n2_ = n2;
  s.n_ = n1 + n2;
  s.t_ = t;
  s.finish();
  return s;
}

EnsembleSpec EnsembleSpec::with_model(Model model) const {
  EnsembleSpec s = *this;
  s.model_ = model;
  s.finish();
  return s;
}

json EnsembleSpec::to_json() const {
  json j = {{"model", model_name(model_)}, {"n", n_}, {"alpha", alpha_}, {"mu", mu_to_json(mu_spec_)}};
  if (model_ == Model::Interpolated) {
    j["n1"] = n1_;
    j["n2"] = n2_;
    j["t"] = t_;
  }
  return j;
}

EnsembleSpec EnsembleSpec::from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("ensemble spec must be a JSON object");
  const Model model = parse_model(j.value("model", std::string("poisson")));
  const int n1 = j.value("n1", 0), n2 = j.value("n2", 0);
  const int n = j.value("n", model == Model::Interpolated ? n1 + n2 : 0);
  if (!j.contains("mu")) throw InvalidInput("ensemble spec requires 'mu'");
  return EnsembleSpec(model, n, j.value("alpha", 0.0), mu_from_json(j.at("mu")), n1, n2, j.value("t", 1.0));
}

// ---- sampling -----------------------------------------------------------------------------

long poisson_quantile(double mean, double u) {
  if (!(mean >= 0.0)) throw InvalidInput("Poisson mean must be non-negative");
  if (mean == 0.0) return 0;
  using namespace boost::math;
  using Policy = policies::policy<policies::discrete_quantile<policies::integer_round_up>>;
  poisson_distribution<double, Policy> dist(mean);
  long m = static_cast<long>(quantile(dist, u));
  while (m > 0 && cdf(dist, static_cast<double>(m - 1)) >= u) --m;
  while (cdf(dist, static_cast<double>(m)) < u) ++m;
  return m;
}

long binomial_quantile(long trials, double p, double u) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("binomial probability must lie in [0, 1]");
  if (p == 0.0 || trials == 0) return 0;
  if (p == 1.0) return trials;
  using namespace boost::math;
  using Policy = policies::policy<policies::discrete_quantile<policies::integer_round_up>>;
  binomial_distribution<double, Policy> dist(static_cast<double>(trials), p);
  long m = static_cast<long>(quantile(dist, u));
  while (m > 0 && cdf(dist, static_cast<double>(m - 1)) >= u) --m;
  while (m < trials && cdf(dist, static_cast<double>(m)) < u) ++m;
  return m;
}

double binomial_inclusion_probability(int n, int k, double alpha) {
  return alpha * n / (binom_coeff(n, k) * std::ldexp(1.0, k));
}

Formula sample_binomial_subsets(int n, int k, double alpha, SeedSpec seed) {
  return annotate(binomial_impl(n, k, alpha, seed),
                  {{"model", "binomial"}, {"n", n}, {"alpha", alpha}, {"mu", {{"family", "ksat"}, {"k", k}}}},
                  seed);
}

Formula sample_fixed_m(int n, long m, const ClauseTypeDistribution& mu, SeedSpec seed) {
  return annotate(fixed_m_impl(n, m, mu, seed),
                  {{"model", "fixed_m"}, {"n", n}, {"m", m}, {"mu", mu_to_json(MuSpec::describe(mu))}}, seed);
}

Formula sample_poisson(int n, double alpha, const ClauseTypeDistribution& mu, SeedSpec seed) {
  return annotate(poisson_impl(n, alpha, mu, seed),
                  {{"model", "poisson"}, {"n", n}, {"alpha", alpha}, {"mu", mu_to_json(MuSpec::describe(mu))}},
                  seed);
}

Formula sample_interpolated(int n1, int n2, double alpha, const ClauseTypeDistribution& mu, double t,
                            SeedSpec seed) {
  return annotate(interpolated_impl(n1, n2, alpha, mu, t, seed),
                  {{"model", "interpolated"},
                   {"n", n1 + n2},
                   {"alpha", alpha},
                   {"mu", mu_to_json(MuSpec::describe(mu))},
                   {"n1", n1},
                   {"n2", n2},
                   {"t", t}},
                  seed);
}

Formula extend_with_uniform_clauses(const Formula& formula, long l, const ClauseTypeDistribution& mu,
                                    SeedSpec seed, bool subset_style) {
  if (l < 0) throw InvalidInput("cannot extend by a negative clause count");
  if (l == 0) return formula;
  const int n = formula.num_vars();
  const int k = mu.arity();
  if (formula.num_clauses() > 0 && formula.arity() != k)
    throw InvalidInput("extension clauses must match the formula's arity");
  if (n < 1 || (subset_style && n < k)) throw InvalidInput("too few variables for the extension");
  std::vector<PlacedClause> extra;
  extra.reserve(static_cast<std::size_t>(l));
  const auto base = static_cast<std::uint64_t>(formula.num_clauses());
  for (long j = 0; j < l; ++j) {
    Rng rng = seed.rng(kExtend, base + static_cast<std::uint64_t>(j));
    extra.push_back(subset_style ? draw_subset_clause(rng, 0, static_cast<std::uint32_t>(n), k, mu)
                                 : draw_iid_clause(rng, 0, static_cast<std::uint32_t>(n), k, mu));
  }
  return formula.with_clauses(extra);
}

Formula sample(const EnsembleSpec& spec, SeedSpec seed) {
  Formula f;
  switch (spec.model()) {
    case Model::BinomialSubsets: f = binomial_impl(spec.n(), spec.k(), spec.alpha(), seed); break;
    case Model::FixedM:
      f = fixed_m_impl(spec.n(), fixed_clause_count(spec.n(), spec.alpha()), spec.mu(), seed);
      break;
    case Model::Poisson: f = poisson_impl(spec.n(), spec.alpha(), spec.mu(), seed); break;
    case Model::Interpolated:
      f = interpolated_impl(spec.n1(), spec.n2(), spec.alpha(), spec.mu(), spec.t(), seed);
      break;
  }
  return with_seed(std::move(f), spec.json_text(), seed);
}

}  // namespace satconc::ensembles
