#include <cmath>

#include "satconc/errors.hpp"
#include "satconc/experiments.hpp"
#include "satconc/stats.hpp"
#include "trials.hpp"

namespace satconc::experiments {

using nlohmann::json;

namespace {

enum : std::uint64_t { kLhsStream = 1, kRhsStream = 2, kEscalation = 0xE5CA1A7E, kGridStream = 0x100 };

RunOptions escalated(const RunOptions& options) {
  RunOptions o = options;
  o.samples = options.samples * 4;
  o.seed = options.seed.child(kEscalation);
  return o;
}

void check_blocks(int n1, int n2, int k) {
  if (n1 < k || n2 < k) throw InvalidInput("block sizes must satisfy n1, n2 >= k");
}

InequalityReport superadditivity_once(int n1, int n2, double alpha, const ensembles::MuSpec& mu,
                                      const RunOptions& options) {
  using ensembles::Model;
  const EnsembleSpec full(Model::Interpolated, n1 + n2, alpha, mu, n1, n2, 1.0);
  const EnsembleSpec split = full.with_blocks(n1, n2, 0.0);
  RunOptions lhs_opt = options, rhs_opt = options;
  lhs_opt.seed = options.seed.child(kLhsStream);
  rhs_opt.seed = options.seed.child(kRhsStream);
  EstimateRecord lhs = estimate_log1p(full, lhs_opt);
  EstimateRecord rhs = estimate_log1p(split, rhs_opt);
  lhs.quantity = "E_log2_1p_Z_n1_plus_n2";
  rhs.quantity = "E_log2_1p_Z_n1_Z_n2";
  auto report = compare("E log2(1+Z_{n1+n2}) >= E log2(1+Z_{n1} Z_{n2})", std::move(lhs), std::move(rhs));
  report.extra["n1"] = n1;
  report.extra["n2"] = n2;
  report.extra["alpha"] = alpha;
  report.extra["samples"] = options.samples;
  report.extra["master_seed"] = options.seed.master_seed;
  report.extra["stream_id"] = options.seed.stream_id;
  return report;
}

}  // namespace

InequalityReport check_superadditivity(int n1, int n2, double alpha, const ensembles::MuSpec& mu,
                                       const RunOptions& options) {
  check_blocks(n1, n2, mu.k);
  auto report = superadditivity_once(n1, n2, alpha, mu, options);
  if (report.verdict == Verdict::Violation) {
    json first = {{"diff", report.diff}, {"diff_se", report.diff_se}, {"z_score", report.z_score}};
    report = superadditivity_once(n1, n2, alpha, mu, escalated(options));
    report.escalated = true;
    report.extra["first_run"] = first;
  }
  return report;
}

json InterpolationReport::to_json() const {
  json pts = json::array(), st = json::array();
  for (const auto& p : points) pts.push_back(p.to_json());
  for (const auto& s : steps) st.push_back(s.to_json());
  return {{"quantity", "interpolation_curve"},
          {"points", pts},
          {"steps", st},
          {"verdict", verdict_name(verdict)},
          {"escalated", escalated}};
}

namespace {

InterpolationReport interpolation_once(int n1, int n2, double alpha, const ensembles::MuSpec& mu,
                                       const std::vector<double>& t_grid, const RunOptions& options) {
  InterpolationReport report;
  const EnsembleSpec base(ensembles::Model::Interpolated, n1 + n2, alpha, mu, n1, n2, 1.0);
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    RunOptions opt = options;
    opt.seed = options.seed.child(kGridStream + i);
    report.points.push_back(estimate_log1p(base.with_blocks(n1, n2, t_grid[i]), opt));
  }
  for (std::size_t i = 0; i + 1 < report.points.size(); ++i) {
    auto step = compare("E log2(1+Z(F(t_{i+1}))) >= E log2(1+Z(F(t_i)))", report.points[i + 1], report.points[i]);
    step.extra["t_low"] = t_grid[i];
    step.extra["t_high"] = t_grid[i + 1];
    step.lhs = EstimateRecord{};
    step.rhs = EstimateRecord{};
    step.lhs.quantity = report.points[i + 1].quantity;
    step.rhs.quantity = report.points[i].quantity;
    step.lhs.value = report.points[i + 1].value;
    step.rhs.value = report.points[i].value;
    step.lhs.std_error = report.points[i + 1].std_error;
    step.rhs.std_error = report.points[i].std_error;
    if (step.verdict == Verdict::Violation) report.verdict = Verdict::Violation;
    report.steps.push_back(std::move(step));
  }
  return report;
}

}  // namespace

InterpolationReport check_interpolation_monotone(int n1, int n2, double alpha, const ensembles::MuSpec& mu,
                                                 const std::vector<double>& t_grid, const RunOptions& options) {
  check_blocks(n1, n2, mu.k);
  if (t_grid.empty()) throw InvalidInput("t grid must not be empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0 && t_grid[i] <= 1.0)) throw InvalidInput("t grid values must lie in [0, 1]");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw InvalidInput("t grid must be strictly increasing");
  }
  auto report = interpolation_once(n1, n2, alpha, mu, t_grid, options);
  if (report.verdict == Verdict::Violation) {
    report = interpolation_once(n1, n2, alpha, mu, t_grid, escalated(options));
    report.escalated = true;
  }
  return report;
}

json DecayReport::to_json() const {
  json rs = json::array();
  for (const auto& r : rows)
    rs.push_back({{"l", r.l},
                  {"bound", r.bound},
                  {"p_before", r.p_before.to_json()},
                  {"p_after", r.p_after.to_json()},
                  {"difference", r.difference.to_json()},
                  {"holds", r.holds}});
  return {{"quantity", "geometric_decay"}, {"n", n},      {"m", m},
          {"k", k},                       {"a", a},      {"rows", rs},
          {"verdict", verdict_name(verdict)}, {"escalated", escalated}};
}

namespace {

struct DecaySample {
  bool before = false;
  std::vector<char> after;
};

DecayReport decay_once(int n, long m, const std::vector<long>& l_list, int k, int a, const RunOptions& options) {
  const auto mu = make_ksat(k);
  const BigInt before_threshold = pow2(static_cast<unsigned>(a + 1));
  const BigInt after_threshold = pow2(static_cast<unsigned>(a));
  const auto results = run_trials<DecaySample>(options.samples, options.threads, [&](long i) {
    const SeedSpec seed = options.seed.child(static_cast<std::uint64_t>(i));
    const Formula base = ensembles::extend_with_uniform_clauses(Formula(n, {}), m, mu, seed, true);
    DecaySample s;
    s.before = counting::count(base, options.engine, options.backtracking).z < before_threshold;
    for (long l : l_list) {
      const Formula ext = ensembles::extend_with_uniform_clauses(base, l, mu, seed, true);
      s.after.push_back(counting::count(ext, options.engine, options.backtracking).z < after_threshold);
    }
    return s;
  });

  DecayReport report;
  report.n = n;
  report.m = m;
  report.k = k;
  report.a = a;
  long failed = 0;
  for (const auto& r : results)
    if (!r) ++failed;
  const std::size_t total = results.size() - static_cast<std::size_t>(failed);
  std::size_t before_hits = 0;
  for (const auto& r : results)
    if (r && r->before) ++before_hits;

  for (std::size_t j = 0; j < l_list.size(); ++j) {
    DecayRow row;
    row.l = l_list[j];
    row.bound = 2.0 * std::pow(1.0 - std::ldexp(1.0, -k), static_cast<double>(row.l));
    std::size_t after_hits = 0;
    stats::MeanAccumulator diff;
    for (const auto& r : results) {
      if (!r) continue;
      if (r->after[j]) ++after_hits;
      diff.add(static_cast<double>(r->before) - static_cast<double>(r->after[j]));
    }
    auto fill = [&](EstimateRecord& rec, const std::string& quantity, std::size_t hits) {
      rec.quantity = quantity;
      rec.samples = static_cast<long>(total);
      rec.failed_trials = failed;
      const double p = total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
      const auto ci = stats::wilson(hits, total);
      rec.value = p;
      rec.std_error = total ? std::sqrt(p * (1.0 - p) / static_cast<double>(total)) : 0.0;
      rec.ci_low = ci.low;
      rec.ci_high = ci.high;
      rec.defined = total > 0;
    };
    fill(row.p_before, "P{Z(F_m) < 2^(a+1)}", before_hits);
    fill(row.p_after, "P{Z(F_m+l) < 2^a}", after_hits);
    row.difference.quantity = "paired_difference";
    row.difference.samples = static_cast<long>(diff.count());
    row.difference.failed_trials = failed;
    row.difference.value = diff.mean();
    row.difference.std_error = diff.std_error();
    const auto ci = diff.normal_interval();
    row.difference.ci_low = ci.low;
    row.difference.ci_high = ci.high;
    row.difference.defined = diff.count() > 0;
    for (EstimateRecord* rec : {&row.p_before, &row.p_after, &row.difference}) {
      rec->seed = options.seed;
      rec->extra["l"] = row.l;
    }
    row.holds = row.difference.value <= row.bound + 3.0 * row.difference.std_error;
    if (!row.holds) report.verdict = Verdict::Violation;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

DecayReport check_geometric_decay(int n, long m, const std::vector<long>& l_list, int k, int a,
                                  const RunOptions& options) {
  if (k < 1 || n < k) throw InvalidInput("geometric decay needs 1 <= k <= n");
  if (m < 0 || a < 0) throw InvalidInput("m and a must be non-negative");
  if (a + 1 > 4000) throw InvalidInput("threshold exponent a is too large");
  for (long l : l_list)
    if (l < 0) throw InvalidInput("l values must be non-negative");
  if (options.samples < 1) throw InvalidInput("samples must be positive");
  auto report = decay_once(n, m, l_list, k, a, options);
  if (report.verdict == Verdict::Violation) {
    report = decay_once(n, m, l_list, k, a, escalated(options));
    report.escalated = true;
  }
  return report;
}

}  // namespace satconc::experiments
