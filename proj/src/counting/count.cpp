#include "satconc/counting.hpp"
#include "satconc/errors.hpp"

namespace satconc::counting {

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::Auto: return "auto";
    case Engine::BruteForce: return "bruteforce";
    case Engine::Backtracking: return "backtracking";
    case Engine::Xor: return "xor";
  }
  return "?";
}

Engine parse_engine(const std::string& name) {
  if (name == "auto") return Engine::Auto;
  if (name == "bruteforce" || name == "brute") return Engine::BruteForce;
  if (name == "backtracking" || name == "backtrack") return Engine::Backtracking;
  if (name == "xor") return Engine::Xor;
  throw InvalidInput("unknown engine '" + name + "' (expected auto, bruteforce, backtracking, xor)");
}

bool is_xor_formula(const Formula& formula) {
  for (const auto& c : formula.clauses())
    if (c.type.parity_sign() == 0) return false;
  return true;
}

CountResult count(const Formula& formula, Engine engine, const BacktrackingOptions& options) {
  switch (engine) {
    case Engine::BruteForce: return count_bruteforce(formula);
    case Engine::Backtracking: return count_backtracking(formula, options);
    case Engine::Xor: return count_xor(formula);
    case Engine::Auto: break;
  }
  if (formula.num_clauses() > 0 && is_xor_formula(formula)) return count_xor(formula);
  if (formula.num_vars() <= 16) return count_bruteforce(formula);
  return count_backtracking(formula, options);
}

bool satisfiable(const Formula& formula, Engine engine, const BacktrackingOptions& options) {
  const bool search = engine == Engine::Backtracking ||
                      (engine == Engine::Auto && formula.num_vars() > 16 &&
                       !(formula.num_clauses() > 0 && is_xor_formula(formula)));
  if (search) return satisfiable_backtracking(formula, options);
  return count(formula, engine, options).satisfiable();
}

}  // namespace satconc::counting
