#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "satconc/counting.hpp"
#include "satconc/errors.hpp"

namespace satconc::counting {

namespace {

// A clause over distinct variables whose table is neither constant.
struct Clause {
  std::vector<std::uint32_t> vars;
  ClauseType table;
};

// Table of `c` restricted to the current partial assignment; `free_vars` receives the
// still-unassigned variables in argument order.
ClauseType restrict_clause(const Clause& c, const std::vector<Spin>& assign,
                           std::vector<std::uint32_t>& free_vars) {
  free_vars.clear();
  std::uint32_t fixed_bits = 0;
  std::uint32_t free_pos[kMaxArity];
  int u = 0;
  for (std::size_t i = 0; i < c.vars.size(); ++i) {
    const Spin s = assign[c.vars[i]];
    if (s == 0) {
      free_pos[u++] = static_cast<std::uint32_t>(i);
      free_vars.push_back(c.vars[i]);
    } else if (s > 0) {
      fixed_bits |= 1u << i;
    }
  }
  if (u == static_cast<int>(c.vars.size())) return c.table;
  ClauseType t(u);
  for (std::uint32_t j = 0; j < t.table_size(); ++j) {
    std::uint32_t src = fixed_bits;
    for (int b = 0; b < u; ++b) src |= ((j >> b) & 1u) << free_pos[b];
    if (c.table.at(src)) t.set(j, true);
  }
  return t;
}

// Removes arguments the table does not depend on.
void drop_irrelevant(std::vector<std::uint32_t>& vars, ClauseType& table) {
  for (int pos = table.arity() - 1; pos >= 0; --pos) {
    if (table.ignores(pos)) {
      table = table.restrict(pos, 1);
      vars.erase(vars.begin() + pos);
    }
  }
}

class Counter {
 public:
  Counter(const BacktrackingOptions& options, bool decide) : options_(options), decide_(decide) {}

  BigInt count_all(int n, const std::vector<Clause>& clauses) {
    std::vector<Spin> assign(static_cast<std::size_t>(n), 0);
    return solve(n, clauses, assign);
  }

 private:
  // Models of `clauses` over `nvars` variables extending the partial assignment.
  BigInt solve(int nvars, const std::vector<Clause>& clauses, std::vector<Spin>& assign) {
    const std::size_t m = clauses.size();
    std::vector<std::vector<std::uint32_t>> occurs(static_cast<std::size_t>(nvars));
    for (std::size_t c = 0; c < m; ++c)
      for (auto v : clauses[c].vars) occurs[v].push_back(static_cast<std::uint32_t>(c));

    std::vector<char> done(m, 0);
    std::vector<std::uint32_t> queue;
    std::vector<std::uint32_t> scratch;
    for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(nvars); ++v)
      if (assign[v] != 0) queue.push_back(v);

    // Returns false on conflict.
    auto examine = [&](std::size_t c) {
      if (done[c]) return true;
      ClauseType t = restrict_clause(clauses[c], assign, scratch);
      if (t.is_zero()) return false;
      if (t.is_one()) {
        done[c] = 1;
        return true;
      }
      for (int pos = 0; pos < t.arity(); ++pos) {
        const Spin forced = t.forced_value(pos);
        if (forced != 0) {
          const auto v = scratch[static_cast<std::size_t>(pos)];
          assign[v] = forced;
          queue.push_back(v);
        }
      }
      return true;
    };

    for (std::size_t c = 0; c < m; ++c)
      if (!examine(c)) return 0;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (auto c : occurs[queue[head]])
        if (!examine(c)) return 0;

    // Residual clauses over unassigned variables.
    std::vector<Clause> residual;
    for (std::size_t c = 0; c < m; ++c) {
      if (done[c]) continue;
      Clause r;
      r.table = restrict_clause(clauses[c], assign, r.vars);
      drop_irrelevant(r.vars, r.table);
      if (r.table.is_one()) continue;
      if (r.table.is_zero()) return 0;
      residual.push_back(std::move(r));
    }

    std::vector<std::uint32_t> parent(static_cast<std::size_t>(nvars));
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<char> used(static_cast<std::size_t>(nvars), 0);
    for (const auto& r : residual) {
      for (auto v : r.vars) used[v] = 1;
      for (std::size_t i = 1; i < r.vars.size(); ++i) parent[find(r.vars[i])] = find(r.vars[0]);
    }
    unsigned free = 0;
    for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(nvars); ++v)
      if (assign[v] == 0 && !used[v]) ++free;

    // Group clauses by component root, keeping clause order; relabel by first occurrence.
    std::unordered_map<std::uint32_t, std::size_t> comp_of_root;
    std::vector<std::vector<Clause>> comps;
    std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> labels;
    for (auto& r : residual) {
      const auto root = find(r.vars[0]);
      auto [it, fresh] = comp_of_root.try_emplace(root, comps.size());
      if (fresh) {
        comps.emplace_back();
        labels.emplace_back();
      }
      auto& lab = labels[it->second];
      for (auto& v : r.vars) {
        auto [lit, added] = lab.try_emplace(v, static_cast<std::uint32_t>(lab.size()));
        v = lit->second;
      }
      comps[it->second].push_back(std::move(r));
    }

    BigInt result = 1;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      result *= count_component(static_cast<int>(labels[i].size()), comps[i]);
      if (result == 0) return 0;
    }
    return decide_ ? result : BigInt(result << free);
  }

  BigInt count_component(int nvars, const std::vector<Clause>& clauses) {
    std::string key;
    key.reserve(16 + clauses.size() * 24);
    auto put = [&key](std::uint32_t x) { key.append(reinterpret_cast<const char*>(&x), sizeof x); };
    put(static_cast<std::uint32_t>(nvars));
    for (const auto& c : clauses) {
      put(static_cast<std::uint32_t>(c.vars.size()));
      for (auto v : c.vars) put(v);
      for (auto w : c.table.words()) key.append(reinterpret_cast<const char*>(&w), sizeof w);
    }
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    if (++nodes_ > options_.node_budget)
      throw ResourceError("backtracking node budget of " + std::to_string(options_.node_budget) + " exceeded");

    std::vector<std::uint32_t> occ(static_cast<std::size_t>(nvars), 0);
    for (const auto& c : clauses)
      for (auto v : c.vars) ++occ[v];
    const auto branch = static_cast<std::uint32_t>(std::max_element(occ.begin(), occ.end()) - occ.begin());

    BigInt total = 0;
    for (Spin value : {Spin{1}, Spin{-1}}) {
      std::vector<Spin> assign(static_cast<std::size_t>(nvars), 0);
      assign[branch] = value;
      total += solve(nvars, clauses, assign);
      if (decide_ && total != 0) break;
    }
    if (cache_.size() >= options_.cache_limit) cache_.clear();
    cache_.emplace(std::move(key), total);
    return total;
  }

  BacktrackingOptions options_;
  // Stop at the first model; results are then 0 or 1.
  bool decide_ = false;
  std::uint64_t nodes_ = 0;
  std::unordered_map<std::string, BigInt> cache_;
};

std::optional<std::vector<Clause>> normalize(const Formula& formula) {
  std::vector<Clause> clauses;
  clauses.reserve(formula.num_clauses());
  for (const auto& pc : formula.clauses()) {
    auto [vars, table] = restrict_to_diagonal(pc.vars, pc.type);
    Clause c{std::move(vars), std::move(table)};
    drop_irrelevant(c.vars, c.table);
    if (c.table.is_one()) continue;
    if (c.table.is_zero()) return std::nullopt;
    clauses.push_back(std::move(c));
  }
  return clauses;
}

}  // namespace

CountResult count_backtracking(const Formula& formula, const BacktrackingOptions& options) {
  CountResult res;
  res.engine = Engine::Backtracking;
  res.free_vars = free_variables(formula);
  const auto clauses = normalize(formula);
  if (!clauses) {
    res.z = 0;
    return res;
  }
  Counter counter(options, false);
  res.z = counter.count_all(formula.num_vars(), *clauses);
  return res;
}

bool satisfiable_backtracking(const Formula& formula, const BacktrackingOptions& options) {
  const auto clauses = normalize(formula);
  if (!clauses) return false;
  Counter counter(options, true);
  return counter.count_all(formula.num_vars(), *clauses) != 0;
}

}  // namespace satconc::counting
