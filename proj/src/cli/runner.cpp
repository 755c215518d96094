#include <fstream>
#include <iostream>

#include "satconc/cli.hpp"
#include "satconc/errors.hpp"
#include "satconc/experiments.hpp"
#include "satconc/hypotheses.hpp"

namespace satconc::cli {

using nlohmann::json;
namespace ex = satconc::experiments;
namespace hy = satconc::hypotheses;

namespace {

ex::RunOptions run_options(const ExperimentConfig& c) {
  ex::RunOptions o;
  o.samples = c.params.at("samples").get<long>();
  o.seed = SeedSpec{c.master_seed, 0};
  o.engine = counting::parse_engine(c.params.at("engine").get<std::string>());
  return o;
}

std::vector<double> alpha_grid(const json& p, const ex::EnsembleSpec& spec) {
  auto grid = p.at("alpha_grid").get<std::vector<double>>();
  if (grid.empty()) grid.push_back(spec.alpha());
  return grid;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

ColumnLaw column_law_for(const ensembles::MuSpec& mu) {
  if (mu.family == "k_factorizing") return mu.column_law;
  if (mu.family == "ksat") return column_law_ksat();
  if (mu.family == "nae") return column_law_nae();
  if (mu.family == "hyp2col") return column_law_hyp2col();
  throw InvalidInput("the factorized route needs a k-factorizing family, not '" + mu.family + "'");
}

json h2_record(const ensembles::MuSpec& mu_spec, int l, const json& p, std::uint64_t master_seed) {
  const auto route = hy::parse_route(p.at("route").get<std::string>());
  const bool exact = p.at("exact").get<bool>();
  hy::ConvexityOptions opt;
  opt.l = l;
  opt.pairs = p.at("pairs").get<int>();
  opt.directions = p.at("directions").get<int>();
  opt.tol = p.at("tol").get<double>();
  opt.epsilon = p.at("epsilon").get<double>();
  opt.seed = SeedSpec{master_seed, static_cast<std::uint64_t>(l)};
  const auto mu = mu_spec.build();
  const int k = mu.arity();
  if (route == hy::GammaRoute::Xor && !mu.is_parity()) throw InvalidInput("the xor route needs an XOR family");

  hy::ConvexityReport rep;
  if (exact) {
    std::function<Rational(std::span<const Rational>)> gamma;
    if (route == hy::GammaRoute::Direct) {
      auto poly = std::make_shared<hy::GammaPolynomial<Rational>>(mu, l);
      gamma = [poly](std::span<const Rational> nu) { return (*poly)(nu); };
    } else if (route == hy::GammaRoute::Factorized) {
      const auto law = column_law_for(mu_spec);
      gamma = [law, k, l](std::span<const Rational> nu) {
        return hy::gamma_factorized(law, k, hy::ExactReplicaLaw(l, {nu.begin(), nu.end()}));
      };
    } else {
      gamma = [k, l](std::span<const Rational> nu) { return hy::gamma_xor(hy::ExactReplicaLaw(l, {nu.begin(), nu.end()}), k); };
    }
    rep = hy::check_convexity_exact(gamma, opt);
  } else {
    std::function<double(std::span<const double>)> gamma;
    if (route == hy::GammaRoute::Direct) {
      auto poly = std::make_shared<hy::GammaPolynomial<double>>(mu, l);
      gamma = [poly](std::span<const double> nu) { return (*poly)(nu); };
    } else if (route == hy::GammaRoute::Factorized) {
      const auto law = column_law_for(mu_spec);
      gamma = [law, k, l](std::span<const double> nu) {
        return hy::gamma_factorized(law, k, hy::ReplicaLaw(l, {nu.begin(), nu.end()}));
      };
    } else {
      gamma = [k, l](std::span<const double> nu) { return hy::gamma_xor(hy::ReplicaLaw(l, {nu.begin(), nu.end()}), k); };
    }
    rep = hy::check_convexity(gamma, opt);
  }
  return {{"quantity", "h2_convexity"},
          {"mu", ensembles::mu_to_json(mu_spec)},
          {"l", l},
          {"route", hy::route_name(route)},
          {"exact", exact},
          {"midpoint_tests", rep.midpoint_tests},
          {"second_difference_tests", rep.second_difference_tests},
          {"worst_midpoint", rep.worst_midpoint},
          {"worst_second_difference", rep.worst_second_difference},
          {"witness_a", rep.witness_a},
          {"witness_b", rep.witness_b},
          {"tol", opt.tol},
          {"pass", rep.pass}};
}

json h1_record(const ensembles::MuSpec& mu_spec, const json& p) {
  const auto mu = mu_spec.build();
  const auto a = hy::check_h1a(mu, p.at("step").get<double>(), p.at("margin").get<double>());
  const auto b = hy::check_h1b(mu);
  json curve = json::array();
  for (const auto& [theta, g] : a.curve) curve.push_back({theta, finite_or_null(g)});
  return {{"quantity", "h1"},
          {"mu", ensembles::mu_to_json(mu_spec)},
          {"h1a",
           {{"pass", a.pass},
            {"g_zero", a.g_zero},
            {"argmax", a.argmax},
            {"min_gap", finite_or_null(a.min_gap)},
            {"theta_at_min_gap", a.theta_at_min_gap},
            {"margin", p.at("margin")},
            {"step", p.at("step")},
            {"curve", curve}}},
          {"h1b", {{"pass", b.pass}, {"fails_plus", b.fails_plus}, {"fails_minus", b.fails_minus}}},
          {"pass", a.pass && b.pass}};
}

}  // namespace

Outcome execute(const ExperimentConfig& c) {
  const json& p = c.params;
  const std::string& op = c.operation;
  Outcome out;

  if (op == "check-h1") {
    out.records.push_back(h1_record(ensembles::mu_from_json(p.at("mu")), p));
    return out;
  }
  if (op == "check-h2") {
    const auto mu = ensembles::mu_from_json(p.at("mu"));
    std::vector<int> ls;
    if (p.at("l").is_array())
      ls = p.at("l").get<std::vector<int>>();
    else
      ls.push_back(p.at("l").get<int>());
    for (int l : ls) out.records.push_back(h2_record(mu, l, p, c.master_seed));
    return out;
  }

  const ex::RunOptions opt = run_options(c);
  if (op == "estimate-p") {
    const auto spec = ex::EnsembleSpec::from_json(p.at("ensemble"));
    for (double alpha : alpha_grid(p, spec))
      out.records.push_back(ex::estimate_p(spec.with_alpha(alpha), p.at("phi").get<double>(), opt).to_json());
  } else if (op == "estimate-psi") {
    const auto spec = ex::EnsembleSpec::from_json(p.at("ensemble"));
    for (double alpha : alpha_grid(p, spec)) {
      const auto r = ex::estimate_psi(spec.with_alpha(alpha), opt);
      out.records.push_back(r.psi.to_json());
      out.records.push_back(r.eps.to_json());
      out.records.push_back(r.tau.to_json());
    }
  } else if (op == "threshold") {
    const auto spec = ex::EnsembleSpec::from_json(p.at("ensemble"));
    ex::ThresholdOptions t;
    t.target = p.at("target").get<double>();
    t.tol_alpha = p.at("tol_alpha").get<double>();
    t.initial_high = p.at("initial_high").get<double>();
    t.max_alpha = p.at("max_alpha").get<double>();
    out.records.push_back(ex::locate_threshold_alpha(spec, p.at("phi").get<double>(), t, opt).to_json());
  } else if (op == "window") {
    const auto spec = ex::EnsembleSpec::from_json(p.at("ensemble"));
    out.records.push_back(ex::critical_window(spec, p.at("phi").get<double>(), p.at("eps").get<double>(),
                                              p.at("tol_alpha").get<double>(), opt)
                              .to_json());
  } else if (op == "check-superadd") {
    const auto r = ex::check_superadditivity(p.at("n1").get<int>(), p.at("n2").get<int>(), p.at("alpha").get<double>(),
                                             ensembles::mu_from_json(p.at("mu")), opt);
    out.violation = r.verdict == ex::Verdict::Violation;
    out.records.push_back(r.to_json());
  } else if (op == "check-interp") {
    const auto r = ex::check_interpolation_monotone(p.at("n1").get<int>(), p.at("n2").get<int>(),
                                                    p.at("alpha").get<double>(), ensembles::mu_from_json(p.at("mu")),
                                                    p.at("t_grid").get<std::vector<double>>(), opt);
    out.violation = r.verdict == ex::Verdict::Violation;
    out.records.push_back(r.to_json());
  } else if (op == "check-decay") {
    const auto r = ex::check_geometric_decay(p.at("n").get<int>(), p.at("m").get<long>(),
                                             p.at("l_list").get<std::vector<long>>(), p.at("k").get<int>(),
                                             p.at("a").get<int>(), opt);
    out.violation = r.verdict == ex::Verdict::Violation;
    out.records.push_back(r.to_json());
  } else if (op == "profile") {
    const auto spec = ex::EnsembleSpec::from_json(p.at("ensemble"));
    const auto rows =
        ex::concentration_profile(spec, p.at("n_list").get<std::vector<int>>(), opt, p.at("bootstrap").get<int>());
    for (const auto& row : rows) {
      out.records.push_back(row.mean.to_json());
      out.records.push_back(row.stddev.to_json());
    }
  } else {
    throw InvalidInput("unknown operation '" + op + "'");
  }
  return out;
}

int run(const ExperimentConfig& config, const Overrides& overrides, std::ostream& out, std::ostream& err) {
  try {
    const ExperimentConfig resolved = resolve(apply(config, overrides));
    const Outcome outcome = execute(resolved);
    if (resolved.output.empty()) {
      for (const auto& r : outcome.records) out << record_line(resolved, r) << '\n';
      out.flush();
    } else {
      std::ofstream file(resolved.output, std::ios::app);
      if (!file) throw InvalidInput("cannot open output file " + resolved.output);
      for (const auto& r : outcome.records) {
        file << record_line(resolved, r) << '\n';
        file.flush();
      }
    }
    if (outcome.violation) {
      err << "inequality violated at 3 standard errors after escalation\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(const std::string& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err) {
  try {
    return run(ExperimentConfig::load(config_path), overrides, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace satconc::cli
