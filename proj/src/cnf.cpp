#include "isat/cnf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "isat/rng.hpp"

namespace isat {

namespace {

Clause make_clause(const std::vector<int>& lits, int num_vars, int clause_no) {
  Clause clause;
  for (int lit : lits) {
    const int var = std::abs(lit);
    if (var > num_vars) {
      throw ParseError("clause " + std::to_string(clause_no) + ": variable " +
                       std::to_string(var) + " exceeds declared count " +
                       std::to_string(num_vars));
    }
    Literal l{var, lit < 0};
    if (std::find(clause.literals.begin(), clause.literals.end(), l) !=
        clause.literals.end()) {
      continue;  // duplicate literal, drop
    }
    clause.literals.push_back(l);
  }
  if (clause.literals.empty()) {
    throw ParseError("clause " + std::to_string(clause_no) + " is empty");
  }
  if (clause.literals.size() > 3) {
    throw ParseError("clause " + std::to_string(clause_no) + " has " +
                     std::to_string(clause.literals.size()) +
                     " literals; only 3SAT input is supported");
  }
  for (const auto& l : clause.literals) {
    if (std::find(clause.literals.begin(), clause.literals.end(),
                  Literal{l.var, !l.negated}) != clause.literals.end()) {
      clause.tautological = true;
      break;
    }
  }
  return clause;
}

}  // namespace

CnfInstance parse_dimacs(std::istream& in) {
  CnfInstance instance;
  bool have_problem_line = false;
  int declared_clauses = 0;
  std::vector<int> pending;
  std::string line;

  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok[0] == 'c') continue;
    if (tok[0] == '%') break;  // SATLIB end-of-instance marker
    if (tok == "p") {
      if (have_problem_line) throw ParseError("duplicate problem line");
      std::string fmt;
      if (!(ls >> fmt >> instance.num_vars >> declared_clauses) ||
          fmt != "cnf" || instance.num_vars < 0 || declared_clauses < 0) {
        throw ParseError("malformed problem line: " + line);
      }
      have_problem_line = true;
      continue;
    }
    if (!have_problem_line) {
      throw ParseError("clause data before problem line");
    }
    ls.clear();
    ls.str(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        instance.clauses.push_back(make_clause(pending, instance.num_vars,
                                               instance.num_clauses() + 1));
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
    if (!ls.eof()) throw ParseError("unexpected token in clause data: " + line);
  }

  if (!have_problem_line) throw ParseError("missing problem line");
  if (!pending.empty()) {
    // terminator missing at EOF; accept the trailing clause
    instance.clauses.push_back(
        make_clause(pending, instance.num_vars, instance.num_clauses() + 1));
  }
  if (instance.clauses.empty()) throw ParseError("instance has no clauses");
  instance.clause_count_mismatch =
      instance.num_clauses() != declared_clauses;
  return instance;
}

CnfInstance parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

CnfInstance parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_dimacs(in);
}

std::string to_dimacs(const CnfInstance& instance) {
  std::ostringstream out;
  out << "p cnf " << instance.num_vars << ' ' << instance.num_clauses()
      << '\n';
  for (const auto& clause : instance.clauses) {
    for (const auto& l : clause.literals) {
      out << (l.negated ? -l.var : l.var) << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

bool clause_satisfied(const Clause& clause, const BooleanAssignment& a) {
  for (const auto& l : clause.literals) {
    if (a[l.var - 1] != l.negated) return true;
  }
  return false;
}

int count_satisfied(const CnfInstance& instance, const BooleanAssignment& a) {
  if (static_cast<int>(a.size()) != instance.num_vars) {
    throw std::invalid_argument("assignment length " +
                                std::to_string(a.size()) +
                                " does not match variable count " +
                                std::to_string(instance.num_vars));
  }
  int satisfied = 0;
  for (const auto& clause : instance.clauses) {
    if (clause_satisfied(clause, a)) ++satisfied;
  }
  return satisfied;
}

MaxSatResult max_3sat_brute_force(const CnfInstance& instance) {
  const int n = instance.num_vars;
  if (n > 28) {
    throw std::invalid_argument("brute force limited to 28 variables");
  }
  const int m = instance.num_clauses();
  // occurrence lists and per-clause true-literal counters, walked in Gray
  // code order so each step touches one variable
  std::vector<std::vector<std::pair<int, bool>>> occurrences(n);
  std::vector<int> true_count(m, 0);
  for (int c = 0; c < m; ++c) {
    for (const auto& l : instance.clauses[c].literals) {
      occurrences[l.var - 1].push_back({c, l.negated});
      if (l.negated) ++true_count[c];  // all-false start
    }
  }
  int satisfied = 0;
  for (int c = 0; c < m; ++c) {
    if (true_count[c] > 0) ++satisfied;
  }
  BooleanAssignment current(n, false);
  MaxSatResult best{current, satisfied};
  const std::uint64_t total = n == 0 ? 1 : (1ULL << n);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    const int v = __builtin_ctzll(idx);
    const bool now_true = !current[v];
    current[v] = now_true;
    for (const auto& [c, negated] : occurrences[v]) {
      const int delta = (negated != now_true) ? +1 : -1;
      true_count[c] += delta;
      if (delta > 0 && true_count[c] == 1) ++satisfied;
      if (delta < 0 && true_count[c] == 0) --satisfied;
    }
    if (satisfied > best.satisfied) {
      best.satisfied = satisfied;
      best.assignment = current;
      if (best.satisfied == m) break;  // cannot improve further
    }
  }
  return best;
}

CnfInstance random_3sat(int n, int m, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("random_3sat requires n >= 3");
  Rng rng(seed);
  CnfInstance instance;
  instance.num_vars = n;
  instance.clauses.reserve(m);
  for (int c = 0; c < m; ++c) {
    auto vars = sample_without_replacement(n, 3, rng);
    std::sort(vars.begin(), vars.end());
    Clause clause;
    for (int v : vars) {
      clause.literals.push_back(Literal{v + 1, rng_below(rng, 2) == 1});
    }
    instance.clauses.push_back(std::move(clause));
  }
  return instance;
}

}  // namespace isat
