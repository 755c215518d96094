#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "satconc/counting.hpp"
#include "satconc/ensembles.hpp"
#include "satconc/rng.hpp"

namespace satconc::experiments {

using ensembles::EnsembleSpec;

/// Common knobs of every Monte Carlo estimator.
struct RunOptions {
  long samples = 1000;
  SeedSpec seed{};
  counting::Engine engine = counting::Engine::Auto;
  counting::BacktrackingOptions backtracking{};
  /// Worker threads; 0 reads SATCONC_THREADS, falling back to the hardware concurrency.
  int threads = 0;
};

struct EstimateRecord {
  std::string quantity;
  double value = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  long samples = 0;
  /// Trials whose count exceeded a resource budget; excluded from the estimate.
  long failed_trials = 0;
  /// True when the estimate conditions on Z >= 1.
  bool conditioning = false;
  /// False when the estimand is undefined on these samples (e.g. psi with every sample UNSAT).
  bool defined = true;
  std::optional<EnsembleSpec> spec;
  SeedSpec seed{};
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
};

enum class Verdict { Consistent, Violation };
std::string verdict_name(Verdict v);

/// Comparison LHS >= RHS of two estimated means.
struct InequalityReport {
  std::string inequality;
  EstimateRecord lhs;
  EstimateRecord rhs;
  double diff = 0.0;
  double diff_se = 0.0;
  double z_score = 0.0;
  Verdict verdict = Verdict::Consistent;
  /// The first run showed diff < -3 diff_se and was repeated at 4x samples on a fresh stream.
  bool escalated = false;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// diff, diff_se = sqrt(se_l^2 + se_r^2), z and verdict (violation iff diff < -3 diff_se).
InequalityReport compare(std::string inequality, EstimateRecord lhs, EstimateRecord rhs);

/// Exact test Z < 2^(n phi): Z < ceil(2^(n phi)), a power of two when n phi is integral.
BigInt count_threshold(int n, double phi);

/// Count of a formula drawn from `spec` in trial `index`; trials are keyed by seed.child(index),
/// so for a fixed index the formulas at increasing alpha are nested.
counting::CountResult sample_count(const EnsembleSpec& spec, std::uint64_t index, const RunOptions& options);

/// P_n(alpha, phi) = P{Z < 2^(n phi)} with a Wilson interval.
EstimateRecord estimate_p(const EnsembleSpec& spec, double phi, const RunOptions& options);

struct PsiEstimate {
  EstimateRecord psi;  // (1/n) E[log2 Z | Z >= 1]
  EstimateRecord eps;  // P{Z = 0}
  EstimateRecord tau;  // E[log2(1 + 1/Z) | Z >= 1]
};

PsiEstimate estimate_psi(const EnsembleSpec& spec, const RunOptions& options);

/// E log2(1 + Z) over the ensemble.
EstimateRecord estimate_log1p(const EnsembleSpec& spec, const RunOptions& options);

/// E log2(1 + Z_{n1+n2}) >= E log2(1 + Z_{n1} Z_{n2}) under the Poisson model, with the
/// two sides drawn as the endpoints t = 1 and t = 0 of the interpolated ensemble on
/// independent streams.
InequalityReport check_superadditivity(int n1, int n2, double alpha, const ensembles::MuSpec& mu,
                                       const RunOptions& options);

struct InterpolationReport {
  std::vector<EstimateRecord> points;  // E log2(1 + Z(F(t))) per grid point
  /// Adjacent comparisons points[i+1] >= points[i].
  std::vector<InequalityReport> steps;
  Verdict verdict = Verdict::Consistent;
  bool escalated = false;

  nlohmann::json to_json() const;
};

InterpolationReport check_interpolation_monotone(int n1, int n2, double alpha, const ensembles::MuSpec& mu,
                                                 const std::vector<double>& t_grid, const RunOptions& options);

struct ThresholdOptions {
  double target = 0.5;
  double tol_alpha = 0.01;
  double initial_high = 1.0;
  double max_alpha = 64.0;
};

/// Bisection on alpha for P_n(alpha, phi) = target. Every probe reuses the same trial seeds.
/// A probe is decisive when its Wilson interval excludes the target. Returns value = the
/// estimate and [ci_low, ci_high] = the final bracket; extra["status"] is "converged" or
/// "indecisive". Throws std::runtime_error when no upper bracket is found below max_alpha.
EstimateRecord locate_threshold_alpha(const EnsembleSpec& spec, double phi, const ThresholdOptions& threshold,
                                      const RunOptions& options);

struct WindowReport {
  double eps = 0.0;
  EstimateRecord alpha_eps;
  EstimateRecord alpha_half;
  EstimateRecord alpha_one_minus_eps;
  double width = 0.0;
  double relative_width = 0.0;

  nlohmann::json to_json() const;
};

WindowReport critical_window(const EnsembleSpec& spec, double phi, double eps, double tol_alpha,
                             const RunOptions& options);

struct ProfileRow {
  int n = 0;
  EstimateRecord mean;    // (1/n) E[log2 Z | Z >= 1]
  EstimateRecord stddev;  // sample std of (1/n) log2 Z given Z >= 1, bootstrap interval
};

std::vector<ProfileRow> concentration_profile(const EnsembleSpec& spec, const std::vector<int>& n_list,
                                              const RunOptions& options, int bootstrap_resamples = 1000);

struct DecayRow {
  long l = 0;
  double bound = 0.0;           // 2 (1 - 2^-k)^l
  EstimateRecord p_before;      // P{Z(F_m) < 2^(a+1)}
  EstimateRecord p_after;       // P{Z(F_{m+l}) < 2^a}
  EstimateRecord difference;    // paired per-sample difference
  bool holds = true;            // difference <= bound + 3 SE
};

struct DecayReport {
  int n = 0;
  long m = 0;
  int k = 0;
  int a = 0;
  std::vector<DecayRow> rows;
  Verdict verdict = Verdict::Consistent;
  bool escalated = false;

  nlohmann::json to_json() const;
};

/// Fixed-m uniform k-SAT with clauses over distinct variables. F_{m+l} extends each sampled F_m
/// by l fresh clauses, so the two probabilities are estimated on paired samples.
DecayReport check_geometric_decay(int n, long m, const std::vector<long>& l_list, int k, int a,
                                  const RunOptions& options);

}  // namespace satconc::experiments
