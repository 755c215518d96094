#include "satconc/formula_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "satconc/errors.hpp"

namespace satconc {

namespace {

constexpr const char* kProvenanceTag = "provenance";

void write_provenance(std::ostream& out, const char* comment, const Formula& f) {
  if (!f.provenance()) return;
  const auto& p = *f.provenance();
  out << comment << ' ' << kProvenanceTag << " {\"ensemble\":" << p.ensemble_json()
      << ",\"master_seed\":" << p.master_seed << ",\"stream_id\":" << p.stream_id << "}\n";
}

// The provenance payload is written by us; parse it back with a minimal scan so the
// formula layer does not depend on a JSON library.
std::optional<Provenance> parse_provenance(const std::string& payload) {
  const std::string head = "{\"ensemble\":";
  const std::string seed_key = ",\"master_seed\":";
  const std::string stream_key = ",\"stream_id\":";
  if (payload.rfind(head, 0) != 0) return std::nullopt;
  const auto seed_at = payload.rfind(seed_key);
  const auto stream_at = payload.rfind(stream_key);
  if (seed_at == std::string::npos || stream_at == std::string::npos || stream_at < seed_at)
    return std::nullopt;
  Provenance p;
  p.ensemble = std::make_shared<const std::string>(payload.substr(head.size(), seed_at - head.size()));
  p.master_seed = std::stoull(payload.substr(seed_at + seed_key.size(), stream_at - seed_at - seed_key.size()));
  p.stream_id = std::stoull(payload.substr(stream_at + stream_key.size()));
  return p;
}

std::optional<Provenance> provenance_from_comment(const std::string& rest) {
  std::istringstream ss(rest);
  std::string tag;
  ss >> tag;
  if (tag != kProvenanceTag) return std::nullopt;
  std::string payload;
  std::getline(ss >> std::ws, payload);
  return parse_provenance(payload);
}

}  // namespace

void write_dimacs(std::ostream& out, const Formula& f) {
  if (!is_pure_ksat(f)) throw InvalidInput("DIMACS output requires a pure k-SAT formula");
  write_provenance(out, "c", f);
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const auto& c : f.clauses()) {
    const auto s = static_cast<std::uint32_t>(c.type.single_forbidden());
    for (std::size_t i = 0; i < c.vars.size(); ++i) {
      const long var = static_cast<long>(c.vars[i]) + 1;
      // forbidden spin -1 -> positive literal
      out << (((s >> i) & 1u) ? -var : var) << ' ';
    }
    out << "0\n";
  }
}

void write_csp(std::ostream& out, const Formula& f) {
  write_provenance(out, "#", f);
  out << "g csp " << f.num_vars() << ' ' << f.arity() << '\n';
  for (const auto& c : f.clauses()) {
    out << 'c';
    for (auto v : c.vars) out << ' ' << (v + 1);
    out << ' ' << c.type.to_hex() << '\n';
  }
}

void write_formula(std::ostream& out, const Formula& f, FormulaFormat format) {
  if (format == FormulaFormat::Dimacs) write_dimacs(out, f);
  else write_csp(out, f);
}

Formula read_dimacs(std::istream& in) {
  std::string line;
  int n = -1;
  long declared = -1;
  std::optional<Provenance> prov;
  std::vector<PlacedClause> clauses;
  std::vector<long> lits;
  int k = -1;
  auto flush = [&] {
    if (k < 0) k = static_cast<int>(lits.size());
    if (static_cast<int>(lits.size()) != k || k == 0)
      throw InvalidInput("DIMACS clauses must all have the same positive length");
    PlacedClause c;
    std::uint32_t forbidden = 0;
    for (int i = 0; i < k; ++i) {
      const long l = lits[static_cast<std::size_t>(i)];
      const long v = l > 0 ? l : -l;
      if (v > n) throw InvalidInput("DIMACS literal exceeds declared variable count");
      c.vars.push_back(static_cast<std::uint32_t>(v - 1));
      if (l < 0) forbidden |= 1u << i;
    }
    c.type = ClauseType::forbid_one(k, forbidden);
    clauses.push_back(std::move(c));
    lits.clear();
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == 'c') {
      if (auto p = provenance_from_comment(line.substr(1))) prov = p;
      continue;
    }
    std::istringstream ss(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      if (!(ss >> p >> cnf >> n >> declared) || cnf != "cnf" || n < 0 || declared < 0)
        throw InvalidInput("malformed DIMACS header: " + line);
      continue;
    }
    if (n < 0) throw InvalidInput("DIMACS clause before the p cnf header");
    long lit;
    while (ss >> lit) {
      if (lit == 0) flush();
      else lits.push_back(lit);
    }
    if (!ss.eof()) throw InvalidInput("malformed DIMACS clause line: " + line);
  }
  if (n < 0) throw InvalidInput("missing DIMACS header");
  if (!lits.empty()) flush();
  if (static_cast<long>(clauses.size()) != declared)
    throw InvalidInput("DIMACS clause count differs from the header");
  return Formula(n, std::move(clauses), std::move(prov));
}

Formula read_csp(std::istream& in) {
  std::string line;
  int n = -1, k = -1;
  std::optional<Provenance> prov;
  std::vector<PlacedClause> clauses;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (auto p = provenance_from_comment(line.substr(1))) prov = p;
      continue;
    }
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "g") {
      std::string csp;
      if (!(ss >> csp >> n >> k) || csp != "csp" || n < 0 || k < 0 || k > kMaxArity)
        throw InvalidInput("malformed csp header: " + line);
      continue;
    }
    if (tag != "c") throw InvalidInput("unexpected line in csp file: " + line);
    if (n < 0) throw InvalidInput("csp clause before the g csp header");
    PlacedClause c;
    for (int i = 0; i < k; ++i) {
      long v;
      if (!(ss >> v) || v < 1 || v > n) throw InvalidInput("bad clause index in: " + line);
      c.vars.push_back(static_cast<std::uint32_t>(v - 1));
    }
    std::string hex, extra;
    if (!(ss >> hex) || (ss >> extra)) throw InvalidInput("bad clause table in: " + line);
    c.type = ClauseType::from_hex(k, hex);
    clauses.push_back(std::move(c));
  }
  if (n < 0) throw InvalidInput("missing csp header");
  return Formula(n, std::move(clauses), std::move(prov));
}

Formula read_formula(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("p cnf", 0) == 0) {
      std::istringstream again(text);
      return read_dimacs(again);
    }
    if (line.rfind("g csp", 0) == 0) {
      std::istringstream again(text);
      return read_csp(again);
    }
  }
  throw InvalidInput("no 'p cnf' or 'g csp' header found");
}

Formula read_formula_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open formula file: " + path);
  return read_formula(in);
}

void write_formula_file(const std::string& path, const Formula& f, FormulaFormat format) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write formula file: " + path);
  write_formula(out, f, format);
}

}  // namespace satconc
