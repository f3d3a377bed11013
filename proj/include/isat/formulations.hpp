#pragma once

#include <array>
#include <string>
#include <vector>

#include "isat/cnf.hpp"
#include "isat/ising.hpp"

namespace isat {

enum class FormulationId { Mis3m, Ilp, Chancellor, Nusslein2nm, NussleinNm };

std::string formulation_name(FormulationId id);
FormulationId formulation_from_name(const std::string& name);

struct SpinRole {
  enum class Kind { Variable, Literal, Slack, ClauseAncilla, Dual };
  Kind kind = Kind::Variable;
  int var = 0;           // 1-based SAT variable, 0 when not applicable
  int clause = -1;       // 0-based clause index, -1 when not applicable
  bool negated = false;  // literal polarity / dual polarity (true = negative)
  int bit = -1;          // slack bit position, -1 when not applicable

  friend bool operator==(const SpinRole& a, const SpinRole& b) {
    return a.kind == b.kind && a.var == b.var && a.clause == b.clause &&
           a.negated == b.negated && a.bit == b.bit;
  }
};

std::string role_kind_name(SpinRole::Kind kind);
SpinRole::Kind role_kind_from_name(const std::string& name);

// An encoded instance: the Ising model together with the role of every spin,
// which is what decode and the clause-aware decomposer need.
struct FormulationModel {
  FormulationId id = FormulationId::Chancellor;
  IsingModel ising;
  std::vector<SpinRole> roles;
  CnfInstance source;

  // lookup tables derived from roles
  std::vector<std::vector<int>> spins_by_var;     // [var] -> spin ids, 1-based
  std::vector<std::vector<int>> spins_by_clause;  // [clause] -> spin ids

  int size() const { return ising.size(); }
  void rebuild_lookups();
};

struct DecodeReport {
  BooleanAssignment assignment;
  std::vector<int> contradictions;  // vars with conflicting evidence
  std::vector<int> dont_cares;      // vars with no evidence (resolved false)
};

// Every encoder multiplies its QUBO by 4 before the Ising transform, which
// clears the /4 denominators and yields integer h, J and offset; a positive
// scalar does not change the minimizers.
FormulationModel encode(const CnfInstance& instance, FormulationId id);
FormulationModel encode_mis(const CnfInstance& instance);
FormulationModel encode_ilp(const CnfInstance& instance);
FormulationModel encode_chancellor(const CnfInstance& instance);
FormulationModel encode_nusslein_2nm(const CnfInstance& instance);
FormulationModel encode_nusslein_nm(const CnfInstance& instance);

DecodeReport decode(const FormulationModel& model, const SpinState& s);

// All spins whose role references the clause, plus all spins whose role
// references any variable occurring in the clause. Sorted ascending.
std::vector<int> clause_spins(const FormulationModel& model, int clause);

// Per-clause QUBO stencil over (a, b, c, ancilla) used by the n+m encoding.
// Literals are canonically ordered with positive ones first; one stencil per
// negation count d in 0..3. A valid stencil adds exactly 0 to the Hamiltonian
// when the clause is satisfied and exactly 1 otherwise, minimizing over the
// ancilla.
struct ClauseStencil {
  std::array<double, 4> linear{};   // a, b, c, k
  std::array<double, 6> quad{};     // ab, ac, bc, ak, bk, ck
  double constant = 0.0;
};

const ClauseStencil& nm_stencil(int negated_count);
bool verify_stencil(const ClauseStencil& stencil, int negated_count);

// Brute-force search for a valid stencil with the fewest nonzero couplings;
// fallback for deriving replacements if the built-in table is ever edited.
ClauseStencil fit_stencil(int negated_count);

}  // namespace isat
