#include "isat/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace isat {

namespace {

// l = coeff*x + base over one binary variable: (1, 0) for a positive literal,
// (-1, 1) for a negated one.
struct Affine {
  int spin = -1;
  double coeff = 0.0;
  double base = 0.0;
};

Affine literal_affine(const Literal& l, int spin) {
  return l.negated ? Affine{spin, -1.0, 1.0} : Affine{spin, 1.0, 0.0};
}

void add_affine(QuboModel& q, const Affine& u, double w) {
  q.add_linear(u.spin, w * u.coeff);
  q.add_offset(w * u.base);
}

void add_affine_product(QuboModel& q, const Affine& u, const Affine& v,
                        double w) {
  // x*x = x on binaries, so same-spin products fold onto the diagonal
  q.add(u.spin, v.spin, w * u.coeff * v.coeff);
  q.add_linear(u.spin, w * u.coeff * v.base);
  q.add_linear(v.spin, w * v.coeff * u.base);
  q.add_offset(w * u.base * v.base);
}

FormulationModel finalize(FormulationId id, QuboModel qubo,
                          std::vector<SpinRole> roles,
                          const CnfInstance& instance) {
  qubo.scale(4.0);  // clears the /4 of the Ising transform, keeps minimizers
  FormulationModel model;
  model.id = id;
  model.ising = qubo_to_ising(qubo);
  model.roles = std::move(roles);
  model.source = instance;
  model.rebuild_lookups();
  return model;
}

bool encoded(const Clause& clause) { return !clause.tautological; }

}  // namespace

std::string formulation_name(FormulationId id) {
  switch (id) {
    case FormulationId::Mis3m: return "mis";
    case FormulationId::Ilp: return "ilp";
    case FormulationId::Chancellor: return "chancellor";
    case FormulationId::Nusslein2nm: return "nusslein2nm";
    case FormulationId::NussleinNm: return "nussleinnm";
  }
  throw std::logic_error("unknown formulation id");
}

FormulationId formulation_from_name(const std::string& name) {
  if (name == "mis") return FormulationId::Mis3m;
  if (name == "ilp") return FormulationId::Ilp;
  if (name == "chancellor") return FormulationId::Chancellor;
  if (name == "nusslein2nm") return FormulationId::Nusslein2nm;
  if (name == "nussleinnm") return FormulationId::NussleinNm;
  throw std::invalid_argument("unknown formulation: " + name);
}

std::string role_kind_name(SpinRole::Kind kind) {
  switch (kind) {
    case SpinRole::Kind::Variable: return "variable";
    case SpinRole::Kind::Literal: return "literal";
    case SpinRole::Kind::Slack: return "slack";
    case SpinRole::Kind::ClauseAncilla: return "ancilla";
    case SpinRole::Kind::Dual: return "dual";
  }
  throw std::logic_error("unknown role kind");
}

SpinRole::Kind role_kind_from_name(const std::string& name) {
  if (name == "variable") return SpinRole::Kind::Variable;
  if (name == "literal") return SpinRole::Kind::Literal;
  if (name == "slack") return SpinRole::Kind::Slack;
  if (name == "ancilla") return SpinRole::Kind::ClauseAncilla;
  if (name == "dual") return SpinRole::Kind::Dual;
  throw std::invalid_argument("unknown role kind: " + name);
}

void FormulationModel::rebuild_lookups() {
  spins_by_var.assign(source.num_vars + 1, {});
  spins_by_clause.assign(source.num_clauses(), {});
  for (int s = 0; s < static_cast<int>(roles.size()); ++s) {
    const auto& role = roles[s];
    if (role.var >= 1) spins_by_var[role.var].push_back(s);
    if (role.clause >= 0) spins_by_clause[role.clause].push_back(s);
  }
}

FormulationModel encode(const CnfInstance& instance, FormulationId id) {
  switch (id) {
    case FormulationId::Mis3m: return encode_mis(instance);
    case FormulationId::Ilp: return encode_ilp(instance);
    case FormulationId::Chancellor: return encode_chancellor(instance);
    case FormulationId::Nusslein2nm: return encode_nusslein_2nm(instance);
    case FormulationId::NussleinNm: return encode_nusslein_nm(instance);
  }
  throw std::logic_error("unknown formulation id");
}

// One QUBO variable per literal occurrence: -1 on every vertex, +2 on each
// within-clause pair (the clause triangle) and +2 on each pair of occurrences
// that are opposite polarities of the same variable (conflict edges).
FormulationModel encode_mis(const CnfInstance& instance) {
  std::vector<SpinRole> roles;
  for (int c = 0; c < instance.num_clauses(); ++c) {
    const auto& clause = instance.clauses[c];
    if (!encoded(clause)) continue;
    for (const auto& l : clause.literals) {
      roles.push_back({SpinRole::Kind::Literal, l.var, c, l.negated, -1});
    }
  }
  const int n = static_cast<int>(roles.size());
  QuboModel qubo(n);
  int base = 0;
  for (const auto& clause : instance.clauses) {
    if (!encoded(clause)) continue;
    const int len = static_cast<int>(clause.literals.size());
    for (int a = 0; a < len; ++a) {
      qubo.add_linear(base + a, -1.0);
      for (int b = a + 1; b < len; ++b) qubo.add(base + a, base + b, 2.0);
    }
    base += len;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (roles[a].var == roles[b].var && roles[a].negated != roles[b].negated) {
        qubo.add(a, b, 2.0);
      }
    }
  }
  return finalize(FormulationId::Mis3m, std::move(qubo), std::move(roles),
                  instance);
}

// Each clause becomes the squared slack equality (l1 + l2 + l3 - 2*s1 - s0 -
// 1)^2; shorter clauses shrink the slack range accordingly (one bit for two
// literals, none for unit clauses).
FormulationModel encode_ilp(const CnfInstance& instance) {
  const int n = instance.num_vars;
  std::vector<SpinRole> roles;
  for (int v = 1; v <= n; ++v) {
    roles.push_back({SpinRole::Kind::Variable, v, -1, false, -1});
  }
  std::vector<std::vector<int>> slack_spins(instance.num_clauses());
  for (int c = 0; c < instance.num_clauses(); ++c) {
    const auto& clause = instance.clauses[c];
    if (!encoded(clause)) continue;
    const int bits = static_cast<int>(clause.literals.size()) - 1;
    for (int b = 0; b < bits; ++b) {
      slack_spins[c].push_back(static_cast<int>(roles.size()));
      roles.push_back({SpinRole::Kind::Slack, 0, c, false, b});
    }
  }
  QuboModel qubo(static_cast<int>(roles.size()));
  for (int c = 0; c < instance.num_clauses(); ++c) {
    const auto& clause = instance.clauses[c];
    if (!encoded(clause)) continue;
    std::vector<Affine> terms;
    double constant = -1.0;
    for (const auto& l : clause.literals) {
      Affine a = literal_affine(l, l.var - 1);
      constant += a.base;
      a.base = 0.0;
      terms.push_back(a);
    }
    for (int b = 0; b < static_cast<int>(slack_spins[c].size()); ++b) {
      terms.push_back({slack_spins[c][b], -static_cast<double>(1 << b), 0.0});
    }
    // (sum_t c_t y_t + c0)^2
    for (std::size_t t = 0; t < terms.size(); ++t) {
      qubo.add_linear(terms[t].spin,
                      terms[t].coeff * terms[t].coeff +
                          2.0 * constant * terms[t].coeff);
      for (std::size_t u = t + 1; u < terms.size(); ++u) {
        qubo.add(terms[t].spin, terms[u].spin,
                 2.0 * terms[t].coeff * terms[u].coeff);
      }
    }
    qubo.add_offset(constant * constant);
  }
  return finalize(FormulationId::Ilp, std::move(qubo), std::move(roles),
                  instance);
}

// Per clause with ancilla a: -(a+1)(l1+l2+l3) + 2a + sum_{j<k} l_j l_k. The
// minimum over the ancilla is -1 when the clause is satisfied and 0 otherwise.
FormulationModel encode_chancellor(const CnfInstance& instance) {
  const int n = instance.num_vars;
  std::vector<SpinRole> roles;
  for (int v = 1; v <= n; ++v) {
    roles.push_back({SpinRole::Kind::Variable, v, -1, false, -1});
  }
  std::vector<int> ancilla(instance.num_clauses(), -1);
  for (int c = 0; c < instance.num_clauses(); ++c) {
    if (!encoded(instance.clauses[c])) continue;
    ancilla[c] = static_cast<int>(roles.size());
    roles.push_back({SpinRole::Kind::ClauseAncilla, 0, c, false, -1});
  }
  QuboModel qubo(static_cast<int>(roles.size()));
  for (int c = 0; c < instance.num_clauses(); ++c) {
    const auto& clause = instance.clauses[c];
    if (!encoded(clause)) continue;
    const Affine anc{ancilla[c], 1.0, 0.0};
    std::vector<Affine> lits;
    for (const auto& l : clause.literals) {
      lits.push_back(literal_affine(l, l.var - 1));
    }
    for (const auto& lit : lits) {
      add_affine_product(qubo, anc, lit, -1.0);
      add_affine(qubo, lit, -1.0);
    }
    add_affine(qubo, anc, 2.0);
    for (std::size_t a = 0; a < lits.size(); ++a) {
      for (std::size_t b = a + 1; b < lits.size(); ++b) {
        add_affine_product(qubo, lits[a], lits[b], 1.0);
      }
    }
  }
  return finalize(FormulationId::Chancellor, std::move(qubo), std::move(roles),
                  instance);
}

// Dual-rail encoding: each variable owns a (positive, negative) spin pair
// one-hot encoded as 10 = true, 01 = false. Literal occurrence counts R feed
// the linear terms, co-occurrence counts the quadratic ones, and each clause
// ancilla contributes +2 with -1 couplings to its literals, which makes every
// satisfied clause contribute exactly -1.
FormulationModel encode_nusslein_2nm(const CnfInstance& instance) {
  const int n = instance.num_vars;
  std::vector<SpinRole> roles;
  for (int v = 1; v <= n; ++v) {
    roles.push_back({SpinRole::Kind::Dual, v, -1, false, -1});
    roles.push_back({SpinRole::Kind::Dual, v, -1, true, -1});
  }
  int encoded_clauses = 0;
  for (const auto& clause : instance.clauses) {
    if (encoded(clause)) ++encoded_clauses;
  }
  std::vector<int> ancilla(instance.num_clauses(), -1);
  for (int c = 0; c < instance.num_clauses(); ++c) {
    if (!encoded(instance.clauses[c])) continue;
    ancilla[c] = static_cast<int>(roles.size());
    roles.push_back({SpinRole::Kind::ClauseAncilla, 0, c, false, -1});
  }
  QuboModel qubo(static_cast<int>(roles.size()));
  auto dual_spin = [](const Literal& l) {
    return 2 * (l.var - 1) + (l.negated ? 1 : 0);
  };
  for (int c = 0; c < instance.num_clauses(); ++c) {
    const auto& clause = instance.clauses[c];
    if (!encoded(clause)) continue;
    const int len = static_cast<int>(clause.literals.size());
    for (int a = 0; a < len; ++a) {
      const int sa = dual_spin(clause.literals[a]);
      qubo.add_linear(sa, -1.0);
      qubo.add(sa, ancilla[c], -1.0);
      for (int b = a + 1; b < len; ++b) {
        qubo.add(sa, dual_spin(clause.literals[b]), 1.0);
      }
    }
    qubo.add_linear(ancilla[c], 2.0);
  }
  for (int v = 0; v < n; ++v) {
    qubo.add(2 * v, 2 * v + 1, static_cast<double>(encoded_clauses + 1));
  }
  return finalize(FormulationId::Nusslein2nm, std::move(qubo),
                  std::move(roles), instance);
}

namespace {

// Built-in stencils, canonical literal order (positives first). Each uses the
// four couplings ab, ak, bk, ck. Entry layout matches ClauseStencil.
const std::array<ClauseStencil, 4> kNmStencils = {{
    // d=0, (a v b v c)
    {{-1, -1, 0, 0}, {1, 0, 0, 1, 1, -1}, 1},
    // d=1, (a v b v !c)
    {{-1, -1, 0, -1}, {1, 0, 0, 1, 1, 1}, 1},
    // d=2, (a v !b v !c)
    {{0, 1, 0, 0}, {-1, 0, 0, 1, -1, 1}, 0},
    // d=3, (!a v !b v !c)
    {{0, 0, 0, 1}, {1, 0, 0, -1, -1, 1}, 0},
}};

double stencil_value(const ClauseStencil& st, int a, int b, int c, int k) {
  return st.constant + st.linear[0] * a + st.linear[1] * b + st.linear[2] * c +
         st.linear[3] * k + st.quad[0] * a * b + st.quad[1] * a * c +
         st.quad[2] * b * c + st.quad[3] * a * k + st.quad[4] * b * k +
         st.quad[5] * c * k;
}

bool pattern_satisfied(int negated_count, int a, int b, int c) {
  const int vals[3] = {a, b, c};
  for (int t = 0; t < 3; ++t) {
    const bool neg = t >= 3 - negated_count;
    if ((vals[t] != 0) != neg) return true;
  }
  return false;
}

bool stencils_verified_once() {
  for (int d = 0; d <= 3; ++d) {
    if (!verify_stencil(kNmStencils[d], d)) {
      throw std::logic_error(
          "n+m clause stencil for negation count " + std::to_string(d) +
          " violates the per-clause increment property");
    }
  }
  return true;
}

void add_stencil(QuboModel& qubo, const ClauseStencil& st,
                 const std::array<int, 4>& spins) {
  static const int pair_idx[6][2] = {{0, 1}, {0, 2}, {1, 2},
                                     {0, 3}, {1, 3}, {2, 3}};
  for (int t = 0; t < 4; ++t) {
    if (st.linear[t] != 0.0) qubo.add_linear(spins[t], st.linear[t]);
  }
  for (int p = 0; p < 6; ++p) {
    if (st.quad[p] != 0.0) {
      qubo.add(spins[pair_idx[p][0]], spins[pair_idx[p][1]], st.quad[p]);
    }
  }
  qubo.add_offset(st.constant);
}

}  // namespace

const ClauseStencil& nm_stencil(int negated_count) {
  if (negated_count < 0 || negated_count > 3) {
    throw std::out_of_range("negation count must be in 0..3");
  }
  return kNmStencils[negated_count];
}

bool verify_stencil(const ClauseStencil& stencil, int negated_count) {
  for (int a = 0; a <= 1; ++a) {
    for (int b = 0; b <= 1; ++b) {
      for (int c = 0; c <= 1; ++c) {
        const double m = std::min(stencil_value(stencil, a, b, c, 0),
                                  stencil_value(stencil, a, b, c, 1));
        const double want = pattern_satisfied(negated_count, a, b, c) ? 0 : 1;
        if (m != want) return false;
      }
    }
  }
  return true;
}

// Clause by clause, add the pattern stencil for the clause's negation count;
// two-literal and unit clauses expand 1-sat directly and need no ancilla.
FormulationModel encode_nusslein_nm(const CnfInstance& instance) {
  static const bool verified = stencils_verified_once();
  (void)verified;

  const int n = instance.num_vars;
  std::vector<SpinRole> roles;
  for (int v = 1; v <= n; ++v) {
    roles.push_back({SpinRole::Kind::Variable, v, -1, false, -1});
  }
  std::vector<int> ancilla(instance.num_clauses(), -1);
  for (int c = 0; c < instance.num_clauses(); ++c) {
    const auto& clause = instance.clauses[c];
    if (!encoded(clause) || clause.literals.size() < 3) continue;
    ancilla[c] = static_cast<int>(roles.size());
    roles.push_back({SpinRole::Kind::ClauseAncilla, 0, c, false, -1});
  }
  QuboModel qubo(static_cast<int>(roles.size()));
  for (int c = 0; c < instance.num_clauses(); ++c) {
    const auto& clause = instance.clauses[c];
    if (!encoded(clause)) continue;
    // canonical order: positive literals first
    std::vector<Literal> lits;
    for (const auto& l : clause.literals)
      if (!l.negated) lits.push_back(l);
    int negated_count = 0;
    for (const auto& l : clause.literals) {
      if (l.negated) {
        lits.push_back(l);
        ++negated_count;
      }
    }
    if (lits.size() == 3) {
      add_stencil(qubo, kNmStencils[negated_count],
                  {lits[0].var - 1, lits[1].var - 1, lits[2].var - 1,
                   ancilla[c]});
    } else if (lits.size() == 2) {
      // 1 - sat = (1-l1)(1-l2)
      Affine a = literal_affine(lits[0], lits[0].var - 1);
      Affine b = literal_affine(lits[1], lits[1].var - 1);
      a.coeff = -a.coeff;
      a.base = 1.0 - a.base;
      b.coeff = -b.coeff;
      b.base = 1.0 - b.base;
      add_affine_product(qubo, a, b, 1.0);
    } else {
      Affine a = literal_affine(lits[0], lits[0].var - 1);
      a.coeff = -a.coeff;
      a.base = 1.0 - a.base;
      add_affine(qubo, a, 1.0);
    }
  }
  return finalize(FormulationId::NussleinNm, std::move(qubo), std::move(roles),
                  instance);
}

ClauseStencil fit_stencil(int negated_count) {
  // S = A(a,b,c) + k*B(a,b,c) with A quadratic and B affine. For each integer
  // B in [-3,3]^4 the required corner values of A are forced by the target
  // min_k S = 1 - sat; A exists iff its cubic coefficient vanishes.
  ClauseStencil best;
  int best_couplings = -1;
  double best_mass = 0.0;
  for (int bk = -3; bk <= 3; ++bk) {
    for (int ba = -3; ba <= 3; ++ba) {
      for (int bb = -3; bb <= 3; ++bb) {
        for (int bc = -3; bc <= 3; ++bc) {
          double av[8];
          for (int st = 0; st < 8; ++st) {
            const int a = st & 1, b = (st >> 1) & 1, c = (st >> 2) & 1;
            const double bval = bk + ba * a + bb * b + bc * c;
            const double target =
                pattern_satisfied(negated_count, a, b, c) ? 0.0 : 1.0;
            av[st] = target - std::min(0.0, bval);
          }
          // corner values -> polynomial coefficients
          const double c0 = av[0];
          const double la = av[1] - c0, lb = av[2] - c0, lc = av[4] - c0;
          const double qab = av[3] - av[1] - av[2] + c0;
          const double qac = av[5] - av[1] - av[4] + c0;
          const double qbc = av[6] - av[2] - av[4] + c0;
          const double cubic = av[7] - av[3] - av[5] - av[6] + av[1] + av[2] +
                               av[4] - c0;
          if (cubic != 0.0) continue;
          ClauseStencil cand;
          cand.constant = c0;
          cand.linear = {la, lb, lc, static_cast<double>(bk)};
          cand.quad = {qab, qac, qbc, static_cast<double>(ba),
                       static_cast<double>(bb), static_cast<double>(bc)};
          int couplings = 0;
          double mass = std::abs(c0);
          for (double x : cand.linear) mass += std::abs(x);
          for (double x : cand.quad) {
            if (x != 0.0) ++couplings;
            mass += std::abs(x);
          }
          if (best_couplings < 0 || couplings < best_couplings ||
              (couplings == best_couplings && mass < best_mass)) {
            best = cand;
            best_couplings = couplings;
            best_mass = mass;
          }
        }
      }
    }
  }
  if (best_couplings < 0 || !verify_stencil(best, negated_count)) {
    throw std::logic_error("stencil fit failed");
  }
  return best;
}

namespace {

void decode_mis(const FormulationModel& model, const SpinState& s,
                DecodeReport& report) {
  const int n = model.source.num_vars;
  std::vector<int> pos(n + 1, 0), neg(n + 1, 0);
  for (int i = 0; i < model.size(); ++i) {
    if (s[i] <= 0) continue;  // only literals set to 1 vote
    const auto& role = model.roles[i];
    if (role.negated) {
      ++neg[role.var];
    } else {
      ++pos[role.var];
    }
  }
  for (int v = 1; v <= n; ++v) {
    if (pos[v] == 0 && neg[v] == 0) {
      report.dont_cares.push_back(v);
    } else if (pos[v] == neg[v]) {
      report.dont_cares.push_back(v);  // tied evidence, treated as no signal
    } else {
      if (pos[v] > 0 && neg[v] > 0) report.contradictions.push_back(v);
      report.assignment[v - 1] = pos[v] > neg[v];
    }
  }
}

void decode_dual(const FormulationModel& model, const SpinState& s,
                 DecodeReport& report) {
  const int n = model.source.num_vars;
  for (int v = 1; v <= n; ++v) {
    const bool p = s[2 * (v - 1)] > 0;
    const bool q = s[2 * (v - 1) + 1] > 0;
    if (p && q) {
      report.contradictions.push_back(v);
      report.assignment[v - 1] = true;
    } else if (!p && !q) {
      report.dont_cares.push_back(v);
    } else {
      report.assignment[v - 1] = p;
    }
  }
}

}  // namespace

DecodeReport decode(const FormulationModel& model, const SpinState& s) {
  if (static_cast<int>(s.size()) != model.size()) {
    throw std::invalid_argument("spin state length does not match model");
  }
  DecodeReport report;
  report.assignment.assign(model.source.num_vars, false);
  switch (model.id) {
    case FormulationId::Mis3m:
      decode_mis(model, s, report);
      break;
    case FormulationId::Nusslein2nm:
      decode_dual(model, s, report);
      break;
    default:
      // 1-1 correspondence: variable spin +1 means true
      for (int i = 0; i < model.size(); ++i) {
        const auto& role = model.roles[i];
        if (role.kind == SpinRole::Kind::Variable) {
          report.assignment[role.var - 1] = s[i] > 0;
        }
      }
      break;
  }
  return report;
}

std::vector<int> clause_spins(const FormulationModel& model, int clause) {
  if (clause < 0 || clause >= model.source.num_clauses()) {
    throw std::out_of_range("clause index out of range");
  }
  std::set<int> spins;
  for (int s : model.spins_by_clause[clause]) spins.insert(s);
  for (const auto& l : model.source.clauses[clause].literals) {
    for (int s : model.spins_by_var[l.var]) spins.insert(s);
  }
  return {spins.begin(), spins.end()};
}

}  // namespace isat
