#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "isat/cnf.hpp"
#include "isat/formulations.hpp"
#include "isat/subsolvers.hpp"

using namespace isat;

namespace {

// all global minimizers by exhaustive enumeration (small models only)
std::pair<double, std::vector<SpinState>> all_minimizers(
    const IsingModel& model) {
  const int n = model.size();
  REQUIRE(n <= 20);
  double best = 0.0;
  std::vector<SpinState> states;
  for (std::uint64_t idx = 0; idx < (1ULL << n); ++idx) {
    SpinState s(n);
    for (int i = 0; i < n; ++i) s[i] = (idx >> i) & 1 ? +1 : -1;
    const double e = model.energy(s);
    if (states.empty() || e < best) {
      best = e;
      states.assign(1, s);
    } else if (e == best) {
      states.push_back(s);
    }
  }
  return {best, states};
}

// ising ground energy implied by the Max-3SAT optimum; encoders scale the
// QUBO by 4
double expected_ground(FormulationId id, const CnfInstance& instance) {
  const int best = max_3sat_brute_force(instance).satisfied;
  const int m = instance.num_clauses();
  switch (id) {
    case FormulationId::Mis3m:
    case FormulationId::Chancellor:
    case FormulationId::Nusslein2nm:
      return -4.0 * best;
    case FormulationId::Ilp:
    case FormulationId::NussleinNm:
      return 4.0 * (m - best);
  }
  return 0.0;
}

bool is_integer(double x) { return x == std::floor(x); }

const std::vector<FormulationId> kAll = {
    FormulationId::Mis3m, FormulationId::Ilp, FormulationId::Chancellor,
    FormulationId::Nusslein2nm, FormulationId::NussleinNm};

}  // namespace

TEST_CASE("spin count formulas on a uf20-91-scale instance") {
  const auto instance = random_3sat(20, 91, 3);
  CHECK(encode_mis(instance).size() == 273);            // 3m
  CHECK(encode_ilp(instance).size() == 202);            // n + 2m
  CHECK(encode_chancellor(instance).size() == 111);     // n + m
  CHECK(encode_nusslein_2nm(instance).size() == 131);   // 2n + m
  CHECK(encode_nusslein_nm(instance).size() == 111);    // <= n + m
}

TEST_CASE("encoders emit integer weights") {
  const auto instance = random_3sat(6, 12, 11);
  for (auto id : kAll) {
    const auto model = encode(instance, id);
    for (double h : model.ising.fields()) CHECK(is_integer(h));
    for (const auto& c : model.ising.couplings()) CHECK(is_integer(c.w));
    CHECK(is_integer(model.ising.offset()));
  }
}

TEST_CASE("MIS single clause ground states") {
  const auto instance = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
  const auto model = encode_mis(instance);
  REQUIRE(model.size() == 3);
  auto [ground, states] = all_minimizers(model.ising);
  CHECK(ground == -4.0);  // 4 * (-1)
  REQUIRE(states.size() == 3);
  for (const auto& s : states) {
    int set_count = 0;
    for (auto v : s) set_count += v > 0;
    CHECK(set_count == 1);  // exactly one literal selected
  }
}

TEST_CASE("MIS conflict edge between opposite literals") {
  const auto instance = parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 2 3 0\n");
  const auto model = encode_mis(instance);
  REQUIRE(model.size() == 6);
  // spins 0 (x1 in clause 0) and 3 (!x1 in clause 1) conflict; QUBO weight 2
  // scaled by 4 becomes an Ising coupling of 2
  double w = 0.0;
  for (const auto& c : model.ising.couplings()) {
    if (c.i == 0 && c.j == 3) w = c.w;
  }
  CHECK(w == 2.0);
}

TEST_CASE("ILP single clause reaches zero exactly on satisfying states") {
  const auto instance = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
  const auto model = encode_ilp(instance);
  REQUIRE(model.size() == 5);  // 3 vars + 2 slack bits
  // x=(1,0,0), slacks (0,0) is a ground state at energy 0
  const SpinState state = {+1, -1, -1, -1, -1};
  CHECK(model.ising.energy(state) == 0.0);
  auto [ground, states] = all_minimizers(model.ising);
  CHECK(ground == 0.0);
  for (const auto& s : states) {
    const auto report = decode(model, s);
    CHECK(count_satisfied(instance, report.assignment) == 1);
  }
}

TEST_CASE("ILP spin count example") {
  const auto instance = random_3sat(4, 4, 5);
  CHECK(encode_ilp(instance).size() == 12);  // n + 2m
}

TEST_CASE("ILP negated literal expansion keeps the slack equality") {
  // clause (x1 v !x2 v x3): e = x1 + (1-x2) + x3 - 2 s1 - s0 - 1
  const auto instance = parse_dimacs("p cnf 3 1\n1 -2 3 0\n");
  const auto model = encode_ilp(instance);
  // satisfied with x=(0,0,0) via the negated literal; slack 0 gives energy 0
  CHECK(model.ising.energy({-1, -1, -1, -1, -1}) == 0.0);
  // x=(1,0,1): three true literals, slack must be 2 (s1=1,s0=0)
  CHECK(model.ising.energy({+1, -1, +1, -1, +1}) == 0.0);
  // all literals false: best slack still pays the unit penalty (4 after x4)
  CHECK(model.ising.energy({-1, +1, -1, -1, -1}) == 4.0);
}

TEST_CASE("Chancellor spin count and ground structure") {
  const auto uf = random_3sat(20, 91, 1);
  CHECK(encode_chancellor(uf).size() == 111);

  const auto instance = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
  const auto model = encode_chancellor(instance);
  REQUIRE(model.size() == 4);
  auto [ground, states] = all_minimizers(model.ising);
  CHECK(ground == -4.0);
  for (const auto& s : states) {
    const auto report = decode(model, s);
    CHECK(count_satisfied(instance, report.assignment) == 1);
  }
  // and no satisfying variable block is missing: 7 satisfying assignments
  std::set<std::vector<bool>> decoded;
  for (const auto& s : states) {
    decoded.insert(std::vector<bool>(decode(model, s).assignment));
  }
  CHECK(decoded.size() == 7);
}

TEST_CASE("Chancellor two-clause ground decodes satisfy both clauses") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto instance = random_3sat(5, 2, seed);
    if (max_3sat_brute_force(instance).satisfied != 2) continue;
    const auto model = encode_chancellor(instance);
    auto [ground, states] = all_minimizers(model.ising);
    CHECK(ground == -8.0);
    for (const auto& s : states) {
      CHECK(count_satisfied(instance, decode(model, s).assignment) == 2);
    }
  }
}

TEST_CASE("Nusslein 2n+m encoding") {
  const auto uf = random_3sat(20, 91, 2);
  CHECK(encode_nusslein_2nm(uf).size() == 131);

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto instance = random_3sat(4, 5, seed);
    const int best = max_3sat_brute_force(instance).satisfied;
    const auto model = encode_nusslein_2nm(instance);
    REQUIRE(model.size() == 13);
    auto [ground, states] = all_minimizers(model.ising);
    CHECK(ground == -4.0 * best);
    for (const auto& s : states) {
      const auto report = decode(model, s);
      CHECK(count_satisfied(instance, report.assignment) == best);
    }
  }
}

TEST_CASE("Nusslein 2n+m decode rules") {
  const auto instance = parse_dimacs("p cnf 2 1\n1 2 0\n");
  const auto model = encode_nusslein_2nm(instance);
  REQUIRE(model.size() == 5);
  // var1 dual (1,0) -> true; var2 dual (0,1) -> false
  auto report = decode(model, {+1, -1, -1, +1, -1});
  CHECK(report.assignment == BooleanAssignment{true, false});
  CHECK(report.contradictions.empty());
  CHECK(report.dont_cares.empty());
  // (0,0) -> don't care, (1,1) -> contradiction
  report = decode(model, {-1, -1, +1, +1, -1});
  CHECK(report.dont_cares == std::vector<int>{1});
  CHECK(report.contradictions == std::vector<int>{2});
  CHECK(report.assignment[0] == false);
}

TEST_CASE("Nusslein n+m stencils satisfy the increment property") {
  for (int d = 0; d <= 3; ++d) {
    CHECK(verify_stencil(nm_stencil(d), d));
    const auto fitted = fit_stencil(d);
    CHECK(verify_stencil(fitted, d));
    // the fitter should not do worse than the built-in table
    int fitted_couplings = 0, builtin_couplings = 0;
    for (double w : fitted.quad) fitted_couplings += w != 0.0;
    for (double w : nm_stencil(d).quad) builtin_couplings += w != 0.0;
    CHECK(fitted_couplings <= builtin_couplings);
  }
  // a broken stencil is rejected
  ClauseStencil broken = nm_stencil(0);
  broken.constant += 1.0;
  CHECK_FALSE(verify_stencil(broken, 0));
}

TEST_CASE("Nusslein n+m single clause ground set") {
  const auto instance = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
  const auto model = encode_nusslein_nm(instance);
  REQUIRE(model.size() == 4);
  auto [ground, states] = all_minimizers(model.ising);
  CHECK(ground == 0.0);
  std::set<std::vector<bool>> decoded;
  for (const auto& s : states) {
    const auto report = decode(model, s);
    CHECK(count_satisfied(instance, report.assignment) == 1);
    decoded.insert(std::vector<bool>(report.assignment));
  }
  CHECK(decoded.size() == 7);  // exactly the satisfying assignments
}

TEST_CASE("Nusslein n+m short clauses need no ancilla") {
  const auto instance = parse_dimacs("p cnf 3 3\n1 2 3 0\n1 2 0\n-3 0\n");
  const auto model = encode_nusslein_nm(instance);
  CHECK(model.size() == 4);  // 3 vars + 1 ancilla for the 3-literal clause
  auto [ground, states] = all_minimizers(model.ising);
  CHECK(ground == expected_ground(FormulationId::NussleinNm, instance));
}

TEST_CASE("decode worked examples") {
  // MIS majority vote with contradiction: x1 occurs twice positive, once
  // negated, all three literal spins set
  const auto instance =
      parse_dimacs("p cnf 3 3\n1 2 3 0\n1 -2 3 0\n-1 2 -3 0\n");
  const auto mis = encode_mis(instance);
  SpinState s(mis.size(), -1);
  s[0] = +1;  // x1 in clause 0
  s[3] = +1;  // x1 in clause 1
  s[6] = +1;  // !x1 in clause 2
  auto report = decode(mis, s);
  CHECK(report.assignment[0] == true);
  CHECK(report.contradictions == std::vector<int>{1});
  // vars 2 and 3 have no set literals: don't care, resolved false
  CHECK(report.dont_cares == std::vector<int>{2, 3});
  CHECK(report.assignment[1] == false);
  CHECK(report.assignment[2] == false);

  // Chancellor: variable spin -1 decodes to false
  const auto ch = encode_chancellor(instance);
  SpinState t(ch.size(), -1);
  t[1] = +1;
  report = decode(ch, t);
  CHECK(report.assignment == BooleanAssignment{false, true, false});
}

TEST_CASE("clause_spins role unions") {
  const auto instance = parse_dimacs("p cnf 4 2\n1 2 3 0\n2 3 4 0\n");
  const auto ch = encode_chancellor(instance);
  // clause 0 over vars {1,2,3}: its ancilla (spin 4) plus the var spins
  CHECK(clause_spins(ch, 0) == std::vector<int>{0, 1, 2, 4});
  CHECK(clause_spins(ch, 1) == std::vector<int>{1, 2, 3, 5});
  CHECK_THROWS_AS(clause_spins(ch, 2), std::out_of_range);

  const auto ilp = encode_ilp(instance);
  // vars 0..3, slacks: clause0 -> 4,5; clause1 -> 6,7
  CHECK(clause_spins(ilp, 0) == std::vector<int>{0, 1, 2, 4, 5});
  CHECK(clause_spins(ilp, 1) == std::vector<int>{1, 2, 3, 6, 7});

  const auto dual = encode_nusslein_2nm(instance);
  // both duals of each var plus the clause ancilla
  CHECK(clause_spins(dual, 0) == std::vector<int>{0, 1, 2, 3, 4, 5, 8});

  const auto mis = encode_mis(instance);
  // clause 0 spins {0,1,2} plus the occurrences of vars 2,3 in clause 1
  CHECK(clause_spins(mis, 0) == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("tautological clauses are excluded from encodings") {
  const auto instance = parse_dimacs("p cnf 3 2\n1 -1 2 0\n1 2 3 0\n");
  CHECK(encode_mis(instance).size() == 3);            // only clause 1
  CHECK(encode_chancellor(instance).size() == 4);     // 3 vars + 1 ancilla
  CHECK(encode_ilp(instance).size() == 5);
  CHECK(encode_nusslein_2nm(instance).size() == 7);
  // the excluded clause still counts as satisfied by any assignment
  CHECK(count_satisfied(instance, {false, false, false}) == 1);
  CHECK(count_satisfied(instance, {true, false, false}) == 2);
}

TEST_CASE("oracle equivalence on random instances") {
  int checked = 0;
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto instance = random_3sat(4, 6, seed);
    for (auto id : kAll) {
      const auto model = encode(instance, id);
      if (model.size() > 20) continue;
      const Solution sol = brute_force(model.ising);
      CHECK(sol.energy == expected_ground(id, instance));
      const auto report = decode(model, sol.state);
      CHECK(count_satisfied(instance, report.assignment) ==
            max_3sat_brute_force(instance).satisfied);
      ++checked;
    }
  }
  CHECK(checked == 50);
}

TEST_CASE("per-clause increments are nonnegative") {
  // n+m adds 0 or 1 per clause, so its ground energy is monotone under
  // clause addition; the Chancellor form contributes -1 per satisfied
  // clause, so monotonicity holds for the ground energy shifted by +1 per
  // clause (the unsatisfied-clause count)
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto instance = random_3sat(4, 4, seed);
    const auto extended = random_3sat(4, 5, seed + 1000);
    CnfInstance larger = instance;
    larger.clauses.push_back(extended.clauses.back());

    const double nm_before =
        brute_force(encode(instance, FormulationId::NussleinNm).ising).energy;
    const double nm_after =
        brute_force(encode(larger, FormulationId::NussleinNm).ising).energy;
    CHECK(nm_after >= nm_before);

    const double ch_before =
        brute_force(encode(instance, FormulationId::Chancellor).ising).energy;
    const double ch_after =
        brute_force(encode(larger, FormulationId::Chancellor).ising).energy;
    CHECK(ch_after + 4.0 * larger.num_clauses() >=
          ch_before + 4.0 * instance.num_clauses());
  }
}

TEST_CASE("short clauses are encoded by every formulation") {
  const auto instance = parse_dimacs("p cnf 3 3\n1 0\n-1 2 0\n1 2 3 0\n");
  for (auto id : kAll) {
    const auto model = encode(instance, id);
    const Solution sol = brute_force(model.ising);
    CHECK(sol.energy == expected_ground(id, instance));
    const auto report = decode(model, sol.state);
    CHECK(count_satisfied(instance, report.assignment) == 3);
  }
}
