#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace satconc::cli {

inline constexpr const char* kConfigSchema = "satconc.experiment/1";
inline constexpr const char* kRecordSchema = "satconc.record/1";

/// An experiment configuration file:
///
///   {"schema": "satconc.experiment/1", "operation": "estimate-psi", "master_seed": 7,
///    "output": "results.jsonl", "params": {...}}
///
/// Parameters per operation, with defaults in brackets:
///   estimate-p      ensemble, phi [0], alpha_grid [[]], samples [1000], engine [auto]
///   estimate-psi    ensemble, alpha_grid [[]], samples [1000], engine [auto]
///   threshold       ensemble, phi [0], target [0.5], tol_alpha [0.01], initial_high [1],
///                   max_alpha [64], samples [1000], engine [auto]
///   window          ensemble, phi [0], eps [0.2], tol_alpha [0.01], samples [1000], engine [auto]
///   check-superadd  n1, n2, alpha, mu, samples [10000], engine [auto]
///   check-interp    n1, n2, alpha, mu, t_grid [[0, .25, .5, .75, 1]], samples [10000], engine [auto]
///   check-decay     n, m, a, k [2], l_list [[0..6]], samples [10000], engine [auto]
///   profile         ensemble, n_list, bootstrap [1000], samples [1000], engine [auto]
///   check-h1        mu, step [0.01], margin [1e-6]
///   check-h2        mu, l [2] (int or list), route [direct], pairs [10000], directions [1000],
///                   tol [1e-12], epsilon [1e-3], exact [false]
/// An empty alpha_grid means the ensemble's own alpha. An empty output means stdout.
struct ExperimentConfig {
  std::string operation;
  std::uint64_t master_seed = 0;
  std::string output;
  nlohmann::json params = nlohmann::json::object();

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
};

const std::vector<std::string>& operation_names();

/// Validates the operation and parameters, fills defaults and canonicalizes nested specs.
/// Throws InvalidInput naming the valid operations or the offending parameter.
ExperimentConfig resolve(ExperimentConfig config);

struct Overrides {
  std::optional<std::string> operation;
  std::optional<std::uint64_t> seed;
  std::optional<long> samples;
  std::optional<std::string> output;
  std::optional<std::string> engine;
};

ExperimentConfig apply(ExperimentConfig config, const Overrides& overrides);

struct Outcome {
  /// One record body per JSONL line.
  std::vector<nlohmann::json> records;
  /// Some statistical inequality was reported violated after escalation.
  bool violation = false;
};

/// Runs a resolved configuration.
Outcome execute(const ExperimentConfig& resolved);

/// One JSONL line: {"schema": ..., "config": resolved config, "record": body}.
std::string record_line(const ExperimentConfig& resolved, const nlohmann::json& body);

/// Loads, overrides, resolves, executes and appends the records. Returns 0 on completion,
/// 2 on a reported inequality violation, 1 on error (diagnostic written to err).
int run(const std::string& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err);
int run(const ExperimentConfig& config, const Overrides& overrides, std::ostream& out, std::ostream& err);

/// Plot kinds: p-vs-alpha, psi-vs-alpha, interp, std-vs-n.
const std::vector<std::string>& plot_kinds();

/// SVG for the records of a JSONL results file. Throws InvalidInput if nothing matches the kind.
std::string render_plot(const std::vector<nlohmann::json>& lines, const std::string& kind);

std::vector<nlohmann::json> read_jsonl(const std::string& path);

/// Returns 0 on success, 1 on error.
int plot(const std::string& results_path, const std::string& kind, const std::string& out_path, std::ostream& err);

}  // namespace satconc::cli
