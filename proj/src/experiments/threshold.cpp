#include <stdexcept>

#include "satconc/errors.hpp"
#include "satconc/experiments.hpp"

namespace satconc::experiments {

using nlohmann::json;

EstimateRecord locate_threshold_alpha(const EnsembleSpec& spec, double phi, const ThresholdOptions& threshold,
                                      const RunOptions& options) {
  const double target = threshold.target;
  if (!(target > 0.0 && target < 1.0)) throw InvalidInput("target must lie in (0, 1)");
  if (!(threshold.tol_alpha > 0.0)) throw InvalidInput("tol_alpha must be positive");
  if (!(threshold.initial_high > 0.0) || !(threshold.max_alpha >= threshold.initial_high))
    throw InvalidInput("invalid initial bracket");

  json probes = json::array();
  long failed = 0;
  auto probe = [&](double alpha) {
    EstimateRecord r = estimate_p(spec.with_alpha(alpha), phi, options);
    failed += r.failed_trials;
    probes.push_back({{"alpha", alpha}, {"p", r.value}, {"ci_low", r.ci_low}, {"ci_high", r.ci_high}});
    return r;
  };

  // At alpha = 0 every formula has Z = 2^n >= 2^(n phi), so P = 0 < target.
  double lo = 0.0, hi = threshold.initial_high;
  double decisive_lo = 0.0, decisive_hi = 0.0;
  while (true) {
    const EstimateRecord r = probe(hi);
    if (r.ci_low > target) {
      decisive_hi = hi;
      break;
    }
    if (r.ci_high < target) decisive_lo = hi;
    if (r.value < target) lo = hi;
    hi *= 2.0;
    if (hi > threshold.max_alpha)
      throw std::runtime_error("threshold bracket failure: P_n stays below the target up to alpha = " +
                               std::to_string(threshold.max_alpha));
  }

  // Bisection on the point estimate. Probes share trial seeds, so the estimate is monotone in
  // alpha; decisive probes additionally narrow the confidence bracket.
  long indecisive = 0;
  while (hi - lo > threshold.tol_alpha) {
    const double mid = 0.5 * (lo + hi);
    const EstimateRecord r = probe(mid);
    if (r.ci_low > target)
      decisive_hi = mid;
    else if (r.ci_high < target)
      decisive_lo = std::max(decisive_lo, mid);
    else
      ++indecisive;
    if (r.value >= target)
      hi = mid;
    else
      lo = mid;
  }

  EstimateRecord rec;
  rec.quantity = "alpha_n";
  rec.value = 0.5 * (lo + hi);
  rec.ci_low = std::min(decisive_lo, rec.value);
  rec.ci_high = std::max(decisive_hi, rec.value);
  rec.std_error = (rec.ci_high - rec.ci_low) / 4.0;
  rec.samples = options.samples;
  rec.failed_trials = failed;
  rec.spec = spec;
  rec.seed = options.seed;
  rec.extra["phi"] = phi;
  rec.extra["target"] = target;
  rec.extra["n"] = spec.n();
  rec.extra["model"] = ensembles::model_name(spec.model());
  rec.extra["tol_alpha"] = threshold.tol_alpha;
  rec.extra["point_bracket"] = {lo, hi};
  rec.extra["status"] = indecisive == 0 ? "converged" : "indecisive";
  rec.extra["indecisive_probes"] = indecisive;
  rec.extra["probes"] = probes;
  rec.extra["interval"] = "last decisive bracket";
  return rec;
}

json WindowReport::to_json() const {
  return {{"quantity", "critical_window"},
          {"eps", eps},
          {"alpha_eps", alpha_eps.to_json()},
          {"alpha_half", alpha_half.to_json()},
          {"alpha_one_minus_eps", alpha_one_minus_eps.to_json()},
          {"width", width},
          {"relative_width", relative_width}};
}

WindowReport critical_window(const EnsembleSpec& spec, double phi, double eps, double tol_alpha,
                             const RunOptions& options) {
  if (!(eps > 0.0 && eps < 0.5)) throw InvalidInput("eps must lie in (0, 1/2)");
  WindowReport w;
  w.eps = eps;
  ThresholdOptions t;
  t.tol_alpha = tol_alpha;
  t.target = eps;
  w.alpha_eps = locate_threshold_alpha(spec, phi, t, options);
  t.target = 0.5;
  w.alpha_half = locate_threshold_alpha(spec, phi, t, options);
  t.target = 1.0 - eps;
  w.alpha_one_minus_eps = locate_threshold_alpha(spec, phi, t, options);
  w.width = w.alpha_one_minus_eps.value - w.alpha_eps.value;
  w.relative_width = w.alpha_half.value > 0.0 ? w.width / w.alpha_half.value : 0.0;
  return w;
}

}  // namespace satconc::experiments
