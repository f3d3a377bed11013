#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace isat {

struct Literal {
  int var = 0;           // 1-based variable index
  bool negated = false;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.var == b.var && a.negated == b.negated;
  }
};

// A disjunction of 1..3 distinct literals. Duplicate literals are removed at
// parse time; a clause holding both x and !x is kept but flagged tautological
// and skipped by the encoders (it constrains nothing).
struct Clause {
  std::vector<Literal> literals;
  bool tautological = false;

  bool contains_var(int var) const {
    for (const auto& l : literals)
      if (l.var == var) return true;
    return false;
  }
};

struct CnfInstance {
  int num_vars = 0;
  std::vector<Clause> clauses;
  bool clause_count_mismatch = false;  // declared m differed from parsed count

  int num_clauses() const { return static_cast<int>(clauses.size()); }
};

using BooleanAssignment = std::vector<bool>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// DIMACS CNF reader. Accepts `c` comments, one `p cnf n m` problem line and
// zero-terminated clauses; a line starting with `%` ends the file (SATLIB
// convention). Clauses of more than three distinct literals are rejected.
CnfInstance parse_dimacs(std::istream& in);
CnfInstance parse_dimacs(const std::string& text);
CnfInstance parse_dimacs_file(const std::string& path);

std::string to_dimacs(const CnfInstance& instance);

bool clause_satisfied(const Clause& clause, const BooleanAssignment& a);

// Number of clauses with at least one true literal. All of them satisfied
// means the instance is all-SAT under `a`.
int count_satisfied(const CnfInstance& instance, const BooleanAssignment& a);

// Random 3SAT instance: m clauses over n >= 3 variables, each clause drawn as
// three distinct variables with independent uniform polarities.
CnfInstance random_3sat(int n, int m, std::uint64_t seed);

struct MaxSatResult {
  BooleanAssignment assignment;
  int satisfied = 0;
};

// Exhaustive Max-3SAT optimum over all 2^n assignments, n <= 28. The
// instance is satisfiable iff satisfied == num_clauses().
MaxSatResult max_3sat_brute_force(const CnfInstance& instance);

}  // namespace isat
