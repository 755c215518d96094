#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "satconc/distribution.hpp"
#include "satconc/formula.hpp"
#include "satconc/rng.hpp"

namespace satconc::ensembles {

/// Serializable description of a clause-type distribution.
///
/// JSON: {"family": "ksat"|"nae"|"hyp2col"|"xor", "k": int}
///     | {"family": "k_factorizing", "k": int, "J": int, "bar_mu": [p_0, ..., p_{2^J-1}]}
///     | {"family": "custom", "k": int, "support": [{"table": hex, "weight": p}, ...]}
/// Probabilities are JSON numbers or rational strings such as "1/3".
struct MuSpec {
  std::string family = "ksat";
  int k = 3;
  ColumnLaw column_law;                                     // k_factorizing
  std::vector<std::pair<std::string, Rational>> support;    // custom: (table hex, weight)

  ClauseTypeDistribution build() const;
  static MuSpec describe(const ClauseTypeDistribution& mu);  // as a custom support
};

enum class Model { BinomialSubsets, FixedM, Poisson, Interpolated };

std::string model_name(Model m);
Model parse_model(const std::string& name);

/// A random formula ensemble.
///
/// JSON: {"model": "binomial"|"fixed_m"|"poisson"|"interpolated", "n": int, "alpha": real,
///        "mu": MuSpec, "n1": int, "n2": int, "t": real}
/// `k` is taken from mu. For BinomialSubsets mu must be uniform k-SAT. For Interpolated,
/// n = n1 + n2 is implied when n is omitted.
class EnsembleSpec {
 public:
  EnsembleSpec() = default;
  EnsembleSpec(Model model, int n, double alpha, MuSpec mu, int n1 = 0, int n2 = 0, double t = 1.0);

  Model model() const { return model_; }
  int n() const { return n_; }
  int k() const { return mu_spec_.k; }
  double alpha() const { return alpha_; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  double t() const { return t_; }
  const MuSpec& mu_spec() const { return mu_spec_; }
  const ClauseTypeDistribution& mu() const { return *mu_; }

  /// Same ensemble at another density / size / interpolation time.
  EnsembleSpec with_alpha(double alpha) const;
  EnsembleSpec with_n(int n) const;
  EnsembleSpec with_blocks(int n1, int n2, double t) const;
  EnsembleSpec with_model(Model model) const;

  nlohmann::json to_json() const;
  static EnsembleSpec from_json(const nlohmann::json& j);
  const std::shared_ptr<const std::string>& json_text() const { return json_text_; }

 private:
  void finish();

  Model model_ = Model::Poisson;
  int n_ = 0;
  double alpha_ = 0.0;
  MuSpec mu_spec_;
  int n1_ = 0, n2_ = 0;
  double t_ = 1.0;
  std::shared_ptr<const ClauseTypeDistribution> mu_;
  std::shared_ptr<const std::string> json_text_;
};

nlohmann::json mu_to_json(const MuSpec& mu);
MuSpec mu_from_json(const nlohmann::json& j);

/// Smallest m with CDF(m) >= u. Used so that clause counts are monotone in the density
/// for a fixed stream.
long poisson_quantile(double mean, double u);
long binomial_quantile(long trials, double p, double u);

/// p = alpha n / (C(n,k) 2^k), the inclusion probability of each candidate k-SAT clause.
double binomial_inclusion_probability(int n, int k, double alpha);

/// Each of the C(n,k) 2^k k-SAT clauses included independently with probability p.
/// The count is drawn first, then that many distinct clauses by rejection.
Formula sample_binomial_subsets(int n, int k, double alpha, SeedSpec seed);

/// Exactly m clauses with i.i.d. uniform indices in [n] and types drawn from mu.
Formula sample_fixed_m(int n, long m, const ClauseTypeDistribution& mu, SeedSpec seed);

/// m ~ Poisson(alpha n), then as sample_fixed_m.
Formula sample_poisson(int n, double alpha, const ClauseTypeDistribution& mu, SeedSpec seed);

/// Poisson(alpha n t) clauses on [n1+n2], Poisson(alpha n1 (1-t)) on the first block and
/// Poisson(alpha n2 (1-t)) on the second; at t = 1 this is exactly sample_poisson.
Formula sample_interpolated(int n1, int n2, double alpha, const ClauseTypeDistribution& mu,
                            double t, SeedSpec seed);

/// Appends l independent clauses. Clause at position p is drawn from the stream keyed by p,
/// so extending by l and then l' equals extending by l + l'. With `subset_style` the
/// variables of each clause are k distinct indices in increasing order.
Formula extend_with_uniform_clauses(const Formula& formula, long l, const ClauseTypeDistribution& mu,
                                    SeedSpec seed, bool subset_style = false);

/// Draws one formula from the ensemble and records (spec, seed) as provenance.
Formula sample(const EnsembleSpec& spec, SeedSpec seed);

}  // namespace satconc::ensembles
