#include "redchain/sat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace redchain::sat {

Clause normalize_clause(const std::vector<int>& literals, int num_vars) {
  Clause c;
  for (int lit : literals) {
    if (lit == 0 || std::abs(lit) > num_vars)
      fail(errc::literal_out_of_range, "literal out of range: " + std::to_string(lit));
    if (std::find(c.begin(), c.end(), lit) == c.end()) c.push_back(lit);
  }
  if (c.empty()) fail(errc::invalid_argument, "empty clause");
  if (c.size() > 3)
    fail(errc::clause_too_large, "clause has " + std::to_string(c.size()) + " distinct literals");
  std::sort(c.begin(), c.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a > b;
  });
  return c;
}

Formula parse_dimacs(std::istream& in) {
  std::string line;
  int num_vars = -1;
  long declared_clauses = -1;
  std::vector<int> pending;
  Formula f;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    if (line[0] == 'p') {
      std::istringstream h(line);
      std::string p, cnf;
      if (!(h >> p >> cnf >> num_vars >> declared_clauses) || cnf != "cnf" || num_vars < 0 ||
          declared_clauses < 0)
        fail(errc::malformed_header, "bad DIMACS header: " + line);
      saw_header = true;
      f.num_vars = num_vars;
      continue;
    }
    if (!saw_header) fail(errc::malformed_header, "clause data before header");
    std::istringstream ls(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        f.clauses.push_back(normalize_clause(pending, num_vars));
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
  }
  if (!saw_header) fail(errc::malformed_header, "missing DIMACS header");
  if (!pending.empty()) fail(errc::missing_terminator, "clause not terminated by 0");
  if (declared_clauses != static_cast<long>(f.clauses.size()))
    fail(errc::malformed_header, "clause count does not match header");
  return f;
}

Formula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string to_dimacs(const Formula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) {
    for (int lit : c) out << lit << " ";
    out << "0\n";
  }
  return out.str();
}

SimplifyResult simplify(const Formula& f) {
  std::set<std::vector<int>> seen;  // clause as sorted literal set
  std::vector<Clause> kept;
  for (const auto& c : f.clauses) {
    bool tautology = false;
    for (int lit : c) {
      if (std::find(c.begin(), c.end(), -lit) != c.end()) {
        tautology = true;
        break;
      }
    }
    if (tautology) continue;
    std::vector<int> key(c);
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;
    kept.push_back(c);
  }

  std::set<int> used;
  for (const auto& c : kept)
    for (int lit : c) used.insert(std::abs(lit));

  SimplifyResult r;
  std::map<int, int> renumber;
  for (int old : used) {
    r.var_map.push_back(old);
    renumber[old] = static_cast<int>(r.var_map.size());
  }
  r.formula.num_vars = static_cast<int>(used.size());
  for (const auto& c : kept) {
    Clause nc;
    for (int lit : c) nc.push_back(lit > 0 ? renumber[lit] : -renumber[-lit]);
    r.formula.clauses.push_back(nc);
  }
  return r;
}

std::optional<Assignment> solve_brute(const Formula& f) {
  if (f.num_vars > 24) fail(errc::too_many_variables, "solve_brute: more than 24 variables");
  const int n = f.num_vars;
  const std::uint32_t total = 1u << n;
  for (std::uint32_t a = 0; a < total; ++a) {
    Assignment asg;
    asg.values.resize(static_cast<std::size_t>(n));
    // variable 1 is the most significant bit so ascending a is lexicographic
    for (int i = 0; i < n; ++i) asg.values[static_cast<std::size_t>(i)] = (a >> (n - 1 - i)) & 1u;
    bool ok = true;
    for (const auto& c : f.clauses) {
      bool sat = false;
      for (int lit : c) {
        if (asg.value(std::abs(lit)) == (lit > 0)) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) return asg;
  }
  return std::nullopt;
}

EvalResult eval(const Formula& f, const Assignment& a) {
  if (static_cast<int>(a.values.size()) != f.num_vars)
    fail(errc::invalid_argument, "eval: assignment not total");
  EvalResult r{true, {}};
  for (const auto& c : f.clauses) {
    int count = 0;
    for (int lit : c)
      if (a.value(std::abs(lit)) == (lit > 0)) ++count;
    r.sat_counts.push_back(count);
    if (count == 0) r.satisfied = false;
  }
  return r;
}

namespace {

// splitmix64: fixed, platform-independent stream
struct Rng {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

}  // namespace

std::vector<Formula> generate_corpus(int count, int num_vars, int num_clauses, std::uint64_t seed) {
  if (count < 1 || num_vars < 3 || num_vars > 5 || num_clauses < 1 || num_clauses > 6)
    fail(errc::invalid_argument, "generate_corpus: bounds are count>=1, vars in [3,5], clauses in [1,6]");
  Rng rng{seed};
  std::vector<Formula> out;
  for (int i = 0; i < count; ++i) {
    Formula f;
    f.num_vars = num_vars;
    for (int c = 0; c < num_clauses; ++c) {
      std::vector<int> vars;
      while (static_cast<int>(vars.size()) < 3) {
        int v = 1 + rng.below(num_vars);
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      }
      std::vector<int> lits;
      for (int v : vars) lits.push_back(rng.next() & 1 ? v : -v);
      f.clauses.push_back(normalize_clause(lits, num_vars));
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace redchain::sat
