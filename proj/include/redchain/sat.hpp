#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "redchain/errors.hpp"

namespace redchain::sat {

/// A clause is a set of nonzero signed variable indices, stored sorted by
/// variable index (positive literal first on ties, which cannot occur after
/// normalization since a clause holding v and -v is a tautology).
using Clause = std::vector<int>;

struct Formula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  bool operator==(const Formula&) const = default;
};

struct Assignment {
  std::vector<bool> values;  // values[i] is the value of variable i+1

  bool value(int var) const { return values.at(static_cast<std::size_t>(var) - 1); }
  bool operator==(const Assignment&) const = default;
};

/// Normalize a clause: sort by |literal|, drop duplicate literals.
/// Throws clause_too_large if more than 3 distinct literals remain.
Clause normalize_clause(const std::vector<int>& literals, int num_vars);

Formula parse_dimacs(std::istream& in);
Formula parse_dimacs(const std::string& text);

std::string to_dimacs(const Formula& f);

struct SimplifyResult {
  Formula formula;
  std::vector<int> var_map;  // var_map[i] = original index of new variable i+1
};

/// Drop duplicate clauses (first occurrence kept) and tautologies, then
/// compact away variables that no longer occur.
SimplifyResult simplify(const Formula& f);

/// Lexicographically smallest satisfying assignment (false < true, variable 1
/// most significant), or nullopt. Requires num_vars <= 24.
std::optional<Assignment> solve_brute(const Formula& f);

struct EvalResult {
  bool satisfied;
  std::vector<int> sat_counts;  // per clause, number of satisfied literals
};

EvalResult eval(const Formula& f, const Assignment& a);

/// Reproducible pseudo-random 3-CNF formulas (exactly 3 distinct variables
/// per clause). Fixed generator so corpora are stable across platforms.
std::vector<Formula> generate_corpus(int count, int num_vars, int num_clauses, std::uint64_t seed);

}  // namespace redchain::sat
