#include <algorithm>
#include <fstream>
#include <sstream>

#include "satconc/cli.hpp"
#include "satconc/counting.hpp"
#include "satconc/ensembles.hpp"
#include "satconc/errors.hpp"
#include "satconc/hypotheses.hpp"

namespace satconc::cli {

using nlohmann::json;

namespace {

struct OperationSpec {
  std::string name;
  std::vector<std::string> required;
  json defaults;
};

const std::vector<OperationSpec>& operations() {
  static const std::vector<OperationSpec> ops = {
      {"estimate-p", {"ensemble"}, {{"phi", 0.0}, {"alpha_grid", json::array()}, {"samples", 1000}, {"engine", "auto"}}},
      {"estimate-psi", {"ensemble"}, {{"alpha_grid", json::array()}, {"samples", 1000}, {"engine", "auto"}}},
      {"threshold",
       {"ensemble"},
       {{"phi", 0.0},
        {"target", 0.5},
        {"tol_alpha", 0.01},
        {"initial_high", 1.0},
        {"max_alpha", 64.0},
        {"samples", 1000},
        {"engine", "auto"}}},
      {"window",
       {"ensemble"},
       {{"phi", 0.0}, {"eps", 0.2}, {"tol_alpha", 0.01}, {"samples", 1000}, {"engine", "auto"}}},
      {"check-superadd", {"n1", "n2", "alpha", "mu"}, {{"samples", 10000}, {"engine", "auto"}}},
      {"check-interp",
       {"n1", "n2", "alpha", "mu"},
       {{"t_grid", {0.0, 0.25, 0.5, 0.75, 1.0}}, {"samples", 10000}, {"engine", "auto"}}},
      {"check-decay",
       {"n", "m", "a"},
       {{"k", 2}, {"l_list", {0, 1, 2, 3, 4, 5, 6}}, {"samples", 10000}, {"engine", "auto"}}},
      {"profile", {"ensemble", "n_list"}, {{"bootstrap", 1000}, {"samples", 1000}, {"engine", "auto"}}},
      {"check-h1", {"mu"}, {{"step", 0.01}, {"margin", 1e-6}}},
      {"check-h2",
       {"mu"},
       {{"l", 2},
        {"route", "direct"},
        {"pairs", 10000},
        {"directions", 1000},
        {"tol", 1e-12},
        {"epsilon", 1e-3},
        {"exact", false}}},
  };
  return ops;
}

const OperationSpec& find_operation(const std::string& name) {
  for (const auto& op : operations())
    if (op.name == name) return op;
  std::string valid;
  for (const auto& op : operations()) valid += (valid.empty() ? "" : ", ") + op.name;
  throw InvalidInput("unknown operation '" + name + "'; valid operations: " + valid);
}

}  // namespace

json ExperimentConfig::to_json() const {
  return {{"schema", kConfigSchema},
          {"operation", operation},
          {"master_seed", master_seed},
          {"output", output},
          {"params", params}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("experiment config must be a JSON object");
  const std::string schema = j.value("schema", std::string(kConfigSchema));
  if (schema != kConfigSchema)
    throw InvalidInput("unsupported config schema '" + schema + "' (expected " + kConfigSchema + ")");
  for (const auto& [key, val] : j.items())
    if (key != "schema" && key != "operation" && key != "master_seed" && key != "output" && key != "params")
      throw InvalidInput("unknown config field '" + key + "'");
  ExperimentConfig c;
  c.operation = j.value("operation", std::string());
  c.master_seed = j.value("master_seed", std::uint64_t{0});
  c.output = j.value("output", std::string());
  c.params = j.value("params", json::object());
  if (!c.params.is_object()) throw InvalidInput("'params' must be a JSON object");
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("config " + path + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

const std::vector<std::string>& operation_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& op : operations()) v.push_back(op.name);
    return v;
  }();
  return names;
}

ExperimentConfig resolve(ExperimentConfig config) {
  if (config.operation.empty()) throw InvalidInput("config does not name an operation");
  const OperationSpec& op = find_operation(config.operation);
  json p = config.params;
  for (const auto& key : op.required)
    if (!p.contains(key)) throw InvalidInput("operation " + op.name + " requires parameter '" + key + "'");
  for (const auto& [key, val] : p.items())
    if (!op.defaults.contains(key) && std::find(op.required.begin(), op.required.end(), key) == op.required.end())
      throw InvalidInput("operation " + op.name + " has no parameter '" + key + "'");
  for (const auto& [key, val] : op.defaults.items())
    if (!p.contains(key)) p[key] = val;

  try {
    if (p.contains("ensemble")) p["ensemble"] = ensembles::EnsembleSpec::from_json(p["ensemble"]).to_json();
    if (p.contains("mu")) p["mu"] = ensembles::mu_to_json(ensembles::mu_from_json(p["mu"]));
    if (p.contains("engine")) p["engine"] = counting::engine_name(counting::parse_engine(p["engine"].get<std::string>()));
    if (p.contains("route")) p["route"] = hypotheses::route_name(hypotheses::parse_route(p["route"].get<std::string>()));
    if (p.contains("samples") && p["samples"].get<long>() < 1) throw InvalidInput("samples must be positive");
  } catch (const json::exception& e) {
    throw InvalidInput("operation " + op.name + ": malformed parameter: " + e.what());
  }
  config.params = std::move(p);
  return config;
}

ExperimentConfig apply(ExperimentConfig config, const Overrides& o) {
  if (o.operation) {
    if (!config.operation.empty() && config.operation != *o.operation)
      throw InvalidInput("config names operation '" + config.operation + "' but '" + *o.operation + "' was requested");
    config.operation = *o.operation;
  }
  if (o.seed) config.master_seed = *o.seed;
  if (o.output) config.output = *o.output;
  if (o.samples) config.params["samples"] = *o.samples;
  if (o.engine) config.params["engine"] = *o.engine;
  return config;
}

std::string record_line(const ExperimentConfig& resolved, const json& body) {
  return json{{"schema", kRecordSchema}, {"config", resolved.to_json()}, {"record", body}}.dump();
}

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open results file " + path);
  std::vector<json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception&) {
      throw InvalidInput(path + ":" + std::to_string(lineno) + ": invalid JSON line");
    }
  }
  return out;
}

}  // namespace satconc::cli
