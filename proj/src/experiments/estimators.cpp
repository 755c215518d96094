#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "satconc/errors.hpp"
#include "satconc/experiments.hpp"
#include "satconc/stats.hpp"
#include "trials.hpp"

namespace satconc::experiments {

using nlohmann::json;

namespace {

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json EstimateRecord::to_json() const {
  json j;
  j["quantity"] = quantity;
  if (defined) {
    j["value"] = finite_or_null(value);
    j["std_error"] = finite_or_null(std_error);
    j["ci_low"] = finite_or_null(ci_low);
    j["ci_high"] = finite_or_null(ci_high);
  } else {
    j["value"] = nullptr;
    j["std_error"] = nullptr;
    j["ci_low"] = nullptr;
    j["ci_high"] = nullptr;
  }
  j["defined"] = defined;
  j["samples"] = samples;
  j["failed_trials"] = failed_trials;
  j["conditioning"] = conditioning ? "Z>=1" : "none";
  j["spec"] = spec ? spec->to_json() : json(nullptr);
  j["master_seed"] = seed.master_seed;
  j["stream_id"] = seed.stream_id;
  for (const auto& [key, val] : extra.items())
    if (!j.contains(key)) j[key] = val;
  return j;
}

std::string verdict_name(Verdict v) { return v == Verdict::Violation ? "violation_at_3se" : "consistent"; }

json InequalityReport::to_json() const {
  json j = {{"inequality", inequality},
            {"lhs", lhs.to_json()},
            {"rhs", rhs.to_json()},
            {"diff", diff},
            {"diff_se", diff_se},
            {"z_score", finite_or_null(z_score)},
            {"verdict", verdict_name(verdict)},
            {"escalated", escalated}};
  for (const auto& [key, val] : extra.items())
    if (!j.contains(key)) j[key] = val;
  return j;
}

InequalityReport compare(std::string inequality, EstimateRecord lhs, EstimateRecord rhs) {
  InequalityReport r;
  r.inequality = std::move(inequality);
  r.diff = lhs.value - rhs.value;
  r.diff_se = std::sqrt(lhs.std_error * lhs.std_error + rhs.std_error * rhs.std_error);
  if (r.diff_se > 0.0)
    r.z_score = r.diff / r.diff_se;
  else
    r.z_score = r.diff == 0.0 ? 0.0 : std::copysign(INFINITY, r.diff);
  r.verdict = r.diff < -3.0 * r.diff_se ? Verdict::Violation : Verdict::Consistent;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

BigInt count_threshold(int n, double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) throw InvalidInput("phi exponent must lie in [0, 1]");
  if (n < 0) throw InvalidInput("n must be non-negative");
  const double e = static_cast<double>(n) * phi;
  const double r = std::round(e);
  if (std::abs(e - r) <= 1e-9 * std::max(1.0, e)) return pow2(static_cast<unsigned>(r));
  if (e > 4000.0) throw ResourceError("non-integral threshold exponent above 4000 is not supported");
  using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<4200, boost::multiprecision::digit_base_2>>;
  const Float t = ceil(pow(Float(2), Float(e)));
  return t.convert_to<BigInt>();
}

counting::CountResult sample_count(const EnsembleSpec& spec, std::uint64_t index, const RunOptions& options) {
  const Formula f = ensembles::sample(spec, options.seed.child(index));
  return counting::count(f, options.engine, options.backtracking);
}

namespace {

void check_samples(long samples) {
  if (samples < 1) throw InvalidInput("samples must be positive");
}

EstimateRecord proportion(std::string quantity, std::size_t hits, std::size_t total, long failed) {
  EstimateRecord r;
  r.quantity = std::move(quantity);
  r.samples = static_cast<long>(total);
  r.failed_trials = failed;
  if (total == 0) {
    r.defined = false;
    return r;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(total);
  const auto ci = stats::wilson(hits, total);
  r.value = p;
  r.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(total));
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  return r;
}

EstimateRecord mean_record(std::string quantity, const stats::MeanAccumulator& acc, long failed) {
  EstimateRecord r;
  r.quantity = std::move(quantity);
  r.samples = static_cast<long>(acc.count());
  r.failed_trials = failed;
  if (acc.count() == 0) {
    r.defined = false;
    return r;
  }
  const auto ci = acc.normal_interval();
  r.value = acc.mean();
  r.std_error = acc.std_error();
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  return r;
}

void stamp(EstimateRecord& r, const EnsembleSpec& spec, const RunOptions& options) {
  r.spec = spec;
  r.seed = options.seed;
}

struct SatSample {
  bool sat = false;
  double log2_z = 0.0;
};

}  // namespace

EstimateRecord estimate_p(const EnsembleSpec& spec, double phi, const RunOptions& options) {
  check_samples(options.samples);
  const BigInt threshold = count_threshold(spec.n(), phi);
  // Z < 1 is a satisfiability question; the search can stop at the first model.
  const bool decide = threshold == 1;
  const auto results = run_trials<bool>(options.samples, options.threads, [&](long i) {
    if (decide) {
      const Formula f = ensembles::sample(spec, options.seed.child(static_cast<std::uint64_t>(i)));
      return !counting::satisfiable(f, options.engine, options.backtracking);
    }
    return sample_count(spec, static_cast<std::uint64_t>(i), options).z < threshold;
  });
  std::size_t hits = 0, total = 0;
  long failed = 0;
  for (const auto& r : results) {
    if (!r) {
      ++failed;
      continue;
    }
    ++total;
    if (*r) ++hits;
  }
  EstimateRecord rec = proportion("P_n", hits, total, failed);
  stamp(rec, spec, options);
  rec.extra["phi"] = phi;
  rec.extra["alpha"] = spec.alpha();
  rec.extra["n"] = spec.n();
  rec.extra["model"] = ensembles::model_name(spec.model());
  return rec;
}

PsiEstimate estimate_psi(const EnsembleSpec& spec, const RunOptions& options) {
  check_samples(options.samples);
  const auto results = run_trials<SatSample>(options.samples, options.threads, [&](long i) {
    const auto c = sample_count(spec, static_cast<std::uint64_t>(i), options);
    return c.satisfiable() ? SatSample{true, c.log2_z()} : SatSample{};
  });
  const double n = static_cast<double>(spec.n());
  stats::MeanAccumulator psi, tau;
  std::size_t unsat = 0, total = 0;
  long failed = 0;
  for (const auto& r : results) {
    if (!r) {
      ++failed;
      continue;
    }
    ++total;
    if (!r->sat) {
      ++unsat;
      continue;
    }
    psi.add(r->log2_z / n);
    tau.add(std::log1p(std::exp2(-r->log2_z)) / std::log(2.0));
  }
  PsiEstimate out{mean_record("psi_n", psi, failed), proportion("eps_n", unsat, total, failed),
                  mean_record("tau_n", tau, failed)};
  out.psi.conditioning = true;
  out.tau.conditioning = true;
  for (EstimateRecord* r : {&out.psi, &out.eps, &out.tau}) {
    stamp(*r, spec, options);
    r->extra["alpha"] = spec.alpha();
    r->extra["n"] = spec.n();
    r->extra["model"] = ensembles::model_name(spec.model());
    r->extra["sat_samples"] = psi.count();
  }
  if (!out.psi.defined) {
    out.psi.extra["note"] = "every sample was unsatisfiable";
    out.tau.extra["note"] = "every sample was unsatisfiable";
  }
  return out;
}

EstimateRecord estimate_log1p(const EnsembleSpec& spec, const RunOptions& options) {
  check_samples(options.samples);
  const auto results = run_trials<double>(options.samples, options.threads, [&](long i) {
    return log2_1p_big(sample_count(spec, static_cast<std::uint64_t>(i), options).z);
  });
  stats::MeanAccumulator acc;
  long failed = 0;
  for (const auto& r : results) {
    if (r)
      acc.add(*r);
    else
      ++failed;
  }
  EstimateRecord rec = mean_record("E_log2_1p_Z", acc, failed);
  stamp(rec, spec, options);
  rec.extra["alpha"] = spec.alpha();
  rec.extra["n"] = spec.n();
  rec.extra["model"] = ensembles::model_name(spec.model());
  if (spec.model() == ensembles::Model::Interpolated) {
    rec.extra["t"] = spec.t();
    rec.extra["n1"] = spec.n1();
    rec.extra["n2"] = spec.n2();
  }
  return rec;
}

std::vector<ProfileRow> concentration_profile(const EnsembleSpec& spec, const std::vector<int>& n_list,
                                              const RunOptions& options, int bootstrap_resamples) {
  check_samples(options.samples);
  std::vector<ProfileRow> rows;
  for (int n : n_list) {
    const EnsembleSpec at_n = spec.with_n(n);
    RunOptions opt = options;
    opt.seed = options.seed.child(static_cast<std::uint64_t>(n));
    const auto results = run_trials<SatSample>(opt.samples, opt.threads, [&](long i) {
      const auto c = sample_count(at_n, static_cast<std::uint64_t>(i), opt);
      return c.satisfiable() ? SatSample{true, c.log2_z()} : SatSample{};
    });
    std::vector<double> values;
    stats::MeanAccumulator acc;
    long failed = 0;
    for (const auto& r : results) {
      if (!r) {
        ++failed;
        continue;
      }
      if (!r->sat) continue;
      values.push_back(r->log2_z / n);
      acc.add(values.back());
    }
    ProfileRow row;
    row.n = n;
    row.mean = mean_record("psi_n", acc, failed);
    row.mean.conditioning = true;
    row.stddev.quantity = "std_log2_Z_over_n";
    row.stddev.conditioning = true;
    row.stddev.samples = static_cast<long>(values.size());
    row.stddev.failed_trials = failed;
    if (values.size() < 2) {
      row.stddev.defined = false;
    } else {
      const double sd = acc.stddev();
      const auto ci = stats::bootstrap_stddev(values, bootstrap_resamples, opt.seed.child(0xB007));
      row.stddev.value = sd;
      row.stddev.std_error = sd / std::sqrt(2.0 * static_cast<double>(values.size() - 1));
      row.stddev.ci_low = std::min(ci.low, sd);
      row.stddev.ci_high = std::max(ci.high, sd);
      row.stddev.extra["interval"] = "percentile bootstrap";
      row.stddev.extra["bootstrap_resamples"] = bootstrap_resamples;
    }
    for (EstimateRecord* r : {&row.mean, &row.stddev}) {
      stamp(*r, at_n, opt);
      r->extra["n"] = n;
      r->extra["alpha"] = spec.alpha();
      r->extra["model"] = ensembles::model_name(spec.model());
      r->extra["sat_samples"] = values.size();
      r->extra["trials"] = opt.samples;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace satconc::experiments
