#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "satconc/cli.hpp"
#include "satconc/counting.hpp"
#include "satconc/ensembles.hpp"
#include "satconc/formula_io.hpp"

using nlohmann::json;
using namespace satconc;

namespace {

struct ExperimentFlags {
  std::string config;
  std::uint64_t seed = 0;
  long samples = 0;
  std::string out;
  std::string engine;
};

void add_experiment_flags(CLI::App* sub, ExperimentFlags& f, bool config_required) {
  auto* c = sub->add_option("--config", f.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
  if (config_required) c->required();
  sub->add_option("--seed", f.seed, "Override master_seed");
  sub->add_option("--samples", f.samples, "Override the sample count")->check(CLI::PositiveNumber);
  sub->add_option("--out", f.out, "Append JSONL records to this file instead of the configured output");
  sub->add_option("--engine", f.engine, "Counting engine: auto, bruteforce, backtracking, xor");
}

cli::Overrides overrides_of(CLI::App* sub, const ExperimentFlags& f) {
  cli::Overrides o;
  if (sub->count("--seed")) o.seed = f.seed;
  if (sub->count("--samples")) o.samples = f.samples;
  if (sub->count("--out")) o.output = f.out;
  if (sub->count("--engine")) o.engine = f.engine;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random CSP ensembles, exact model counting and hypothesis checks"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Sample one formula from an ensemble");
  std::string ens_path, model = "poisson", family = "ksat", gen_out, format = "auto";
  int n = 20, k = 3;
  double alpha = 1.0;
  std::uint64_t gen_seed = 0, stream = 0;
  gen->add_option("--ensemble", ens_path, "Ensemble spec (JSON file); overrides the inline flags")
      ->check(CLI::ExistingFile);
  gen->add_option("--model", model, "binomial, fixed_m, poisson, interpolated");
  gen->add_option("--family", family, "ksat, nae, hyp2col, xor");
  gen->add_option("-n,--n", n, "Number of variables");
  gen->add_option("-k,--k", k, "Clause arity");
  gen->add_option("--alpha", alpha, "Clause density");
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--stream", stream, "Stream id");
  gen->add_option("--out", gen_out, "Output file (default stdout)");
  gen->add_option("--format", format, "auto, dimacs or csp")->check(CLI::IsMember({"auto", "dimacs", "csp"}));

  // count
  auto* cnt = app.add_subcommand("count", "Count the models of a formula file");
  std::string formula_path, engine = "auto";
  cnt->add_option("formula", formula_path, "DIMACS or generalized CSP file")->required()->check(CLI::ExistingFile);
  cnt->add_option("--engine", engine, "auto, bruteforce, backtracking, xor");

  // experiments
  std::vector<std::pair<CLI::App*, std::string>> ops;
  std::vector<ExperimentFlags> flags(cli::operation_names().size() + 1);
  for (std::size_t i = 0; i < cli::operation_names().size(); ++i) {
    const auto& name = cli::operation_names()[i];
    auto* sub = app.add_subcommand(name, "Run the " + name + " operation from a config");
    add_experiment_flags(sub, flags[i], true);
    ops.emplace_back(sub, name);
  }
  auto* run = app.add_subcommand("run", "Run the operation named in a config");
  add_experiment_flags(run, flags.back(), true);

  // plot
  auto* plt = app.add_subcommand("plot", "Render JSONL results to SVG");
  std::string plot_in, plot_kind, plot_out;
  plt->add_option("--in", plot_in, "JSONL results file")->required();
  plt->add_option("--kind", plot_kind, "p-vs-alpha, psi-vs-alpha, interp, std-vs-n")->required();
  plt->add_option("--out", plot_out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      ensembles::EnsembleSpec spec;
      if (!ens_path.empty()) {
        std::ifstream in(ens_path);
        spec = ensembles::EnsembleSpec::from_json(json::parse(in));
      } else {
        ensembles::MuSpec mu;
        mu.family = family;
        mu.k = k;
        spec = ensembles::EnsembleSpec(ensembles::parse_model(model), n, alpha, mu);
      }
      const Formula f = ensembles::sample(spec, SeedSpec{gen_seed, stream});
      FormulaFormat fmt = FormulaFormat::Csp;
      if (format == "dimacs" || (format == "auto" && is_pure_ksat(f))) fmt = FormulaFormat::Dimacs;
      if (gen_out.empty())
        write_formula(std::cout, f, fmt);
      else
        write_formula_file(gen_out, f, fmt);
      return 0;
    }
    if (cnt->parsed()) {
      const Formula f = read_formula_file(formula_path);
      const auto start = std::chrono::steady_clock::now();
      const auto r = counting::count(f, counting::parse_engine(engine));
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      json out = {{"z", r.z.str()},
                  {"log2_z", r.satisfiable() ? json(r.log2_z()) : json(nullptr)},
                  {"free_vars", r.free_vars},
                  {"engine", counting::engine_name(r.engine)},
                  {"wall_time_ms", ms}};
      std::cout << out.dump() << '\n';
      return 0;
    }
    if (plt->parsed()) return cli::plot(plot_in, plot_kind, plot_out, std::cerr);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (!ops[i].first->parsed()) continue;
      auto o = overrides_of(ops[i].first, flags[i]);
      o.operation = ops[i].second;
      return cli::run(flags[i].config, o, std::cout, std::cerr);
    }
    if (run->parsed()) return cli::run(flags.back().config, overrides_of(run, flags.back()), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
