#pragma once

#include <iosfwd>
#include <string>

#include "satconc/formula.hpp"

namespace satconc {

/// Text formats for formulas.
///
/// DIMACS CNF (pure k-SAT only): optional `c provenance <json>` comment, `p cnf <n> <m>`, then one
/// clause per line as 1-based signed literals terminated by 0. Literal +v is satisfied by x_v = +1,
/// so the clause forbids the tuple with x_v = -1 for positive literals.
///
/// Generalized CSP: optional `# provenance <json>` line, header `g csp <n> <k>`, then one clause
/// per line `c <idx_1> ... <idx_k> <table-hex>` with 1-based indices. The hex string spells the
/// 2^k-bit table most significant digit first; bit j is phi at tuple position j.
/// Lines starting with `#` are otherwise ignored.
enum class FormulaFormat { Dimacs, Csp };

void write_dimacs(std::ostream& out, const Formula& f);
void write_csp(std::ostream& out, const Formula& f);
void write_formula(std::ostream& out, const Formula& f, FormulaFormat format);

Formula read_dimacs(std::istream& in);
Formula read_csp(std::istream& in);
/// Sniffs the header line to choose a parser.
Formula read_formula(std::istream& in);

Formula read_formula_file(const std::string& path);
void write_formula_file(const std::string& path, const Formula& f, FormulaFormat format);

}  // namespace satconc
