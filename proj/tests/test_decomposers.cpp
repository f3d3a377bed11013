#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "isat/decomposers.hpp"
#include "isat/formulations.hpp"
#include "isat/rng.hpp"

using namespace isat;

namespace {

SpinState random_state(int n, Rng& rng) {
  SpinState s(n);
  for (auto& v : s) v = rng_below(rng, 2) == 0 ? -1 : +1;
  return s;
}

IsingModel random_model(int n, Rng& rng, double density = 0.5) {
  std::vector<double> h(n);
  for (auto& v : h) v = static_cast<double>(rng_below(rng, 9) - 4);
  std::vector<Coupling> couplings;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng_unit(rng) < density) {
        const double w = static_cast<double>(rng_below(rng, 9) - 4);
        if (w != 0.0) couplings.push_back({i, j, w});
      }
    }
  }
  return IsingModel(n, std::move(h), couplings, 0.0);
}

}  // namespace

TEST_CASE("extract_subproblem folds frozen couplings into fields") {
  IsingModel model(2, {0.0, 0.0}, std::vector<Coupling>{{0, 1, 3.0}}, 0.0);
  const SpinState frozen = {+1, +1};
  const auto sub = extract_subproblem(model, frozen, {0});
  REQUIRE(sub.model.size() == 1);
  CHECK(sub.model.field(0) == 3.0);  // h' = 0 + 3 * (+1)
  CHECK(sub.model.offset() == 0.0);
  CHECK(sub.model.couplings().empty());
}

TEST_CASE("extract_subproblem with all spins is the identity") {
  Rng rng(1);
  const auto model = random_model(8, rng);
  const auto state = random_state(8, rng);
  const auto sub = extract_subproblem(model, state, {0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(sub.model.fields() == model.fields());
  CHECK(sub.model.offset() == model.offset());
  REQUIRE(sub.model.couplings().size() == model.couplings().size());
  for (std::size_t k = 0; k < model.couplings().size(); ++k) {
    CHECK(sub.model.couplings()[k].w == model.couplings()[k].w);
  }
}

TEST_CASE("freezing energy identity holds exhaustively") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 8;
    const auto model = random_model(n, rng);
    const auto state = random_state(n, rng);
    const int k = 1 + rng_below(rng, n);
    auto selected = sample_without_replacement(n, k, rng);
    const auto sub = extract_subproblem(model, state, selected);
    for (std::uint64_t idx = 0; idx < (1ULL << sub.model.size()); ++idx) {
      SpinState sigma(sub.model.size());
      for (int t = 0; t < sub.model.size(); ++t) {
        sigma[t] = (idx >> t) & 1 ? +1 : -1;
      }
      SpinState merged = state;
      for (std::size_t t = 0; t < sub.selected.size(); ++t) {
        merged[sub.selected[t]] = sigma[t];
      }
      CHECK(sub.model.energy(sigma) == model.energy(merged));
    }
  }
}

TEST_CASE("extract_subproblem rejects bad selections") {
  Rng rng(3);
  const auto model = random_model(4, rng);
  const auto state = random_state(4, rng);
  CHECK_THROWS_AS(extract_subproblem(model, state, {0, 9}),
                  std::out_of_range);
  CHECK_THROWS_AS(extract_subproblem(model, state, {1, 1}),
                  std::invalid_argument);
}

TEST_CASE("energy impact picks the highest flip deltas") {
  // isolated spins, all at -1: flipping spin i to +1 changes energy by 2*h_i
  IsingModel model(3, {-1.0, 0.0, 2.5}, std::vector<Coupling>{}, 0.0);
  const SpinState state = {-1, -1, -1};
  // deltas: (-2, 0, +5)
  auto d = make_decomposer(DecomposerKind::EnergyImpact, nullptr);
  Rng rng(0);
  CHECK(d->select(model, state, 2, rng) == std::vector<int>{1, 2});
  CHECK(d->select(model, state, 8, rng) == std::vector<int>{0, 1, 2});

  // ties broken by lower index
  IsingModel flat(4, {1, 1, 1, 1}, std::vector<Coupling>{}, 0.0);
  CHECK(d->select(flat, {-1, -1, -1, -1}, 2, rng) == std::vector<int>{0, 1});

  // magnitude variant prefers |delta|
  auto mag = make_decomposer(DecomposerKind::EnergyImpact, nullptr, true);
  IsingModel signs(2, {-3.0, 1.0}, std::vector<Coupling>{}, 0.0);
  // deltas at all -1: (-6, +2); magnitude picks spin 0, signed picks spin 1
  CHECK(mag->select(signs, {-1, -1}, 1, rng) == std::vector<int>{0});
  CHECK(d->select(signs, {-1, -1}, 1, rng) == std::vector<int>{1});
}

TEST_CASE("random decomposer cardinality and determinism") {
  Rng setup(4);
  const auto model = random_model(100, setup, 0.05);
  const auto state = random_state(100, setup);
  auto d = make_decomposer(DecomposerKind::Random, nullptr);
  Rng r1(7), r2(7);
  const auto a = d->select(model, state, 45, r1);
  CHECK(a.size() == 45);
  CHECK(std::set<int>(a.begin(), a.end()).size() == 45);
  auto d2 = make_decomposer(DecomposerKind::Random, nullptr);
  CHECK(d2->select(model, state, 45, r2) == a);
  CHECK(d->select(model, state, 1000, r1).size() == 100);
}

TEST_CASE("pseudorandom windows partition each pass") {
  Rng setup(5);
  const auto model = random_model(10, setup, 0.3);
  const auto state = random_state(10, setup);
  auto d = make_decomposer(DecomposerKind::Pseudorandom, nullptr);
  Rng rng(11);
  const auto w1 = d->select(model, state, 4, rng);
  const auto w2 = d->select(model, state, 4, rng);
  const auto w3 = d->select(model, state, 4, rng);
  CHECK(w1.size() == 4);
  CHECK(w2.size() == 4);
  CHECK(w3.size() == 2);  // pass remainder
  std::set<int> all;
  for (const auto* w : {&w1, &w2, &w3}) all.insert(w->begin(), w->end());
  CHECK(all.size() == 10);  // exactly-once coverage per pass
  std::set<int> overlap;
  std::set_intersection(w1.begin(), w1.end(), w2.begin(), w2.end(),
                        std::inserter(overlap, overlap.begin()));
  CHECK(overlap.empty());

  // next pass reshuffles and starts over
  const auto w4 = d->select(model, state, 4, rng);
  CHECK(w4.size() == 4);

  // deterministic under the same seed
  auto d2 = make_decomposer(DecomposerKind::Pseudorandom, nullptr);
  Rng rng2(11);
  CHECK(d2->select(model, state, 4, rng2) == w1);
}

TEST_CASE("bfs covers connected graphs and grows connected subsets") {
  // path graph 0-1-2-3-4
  std::vector<Coupling> path;
  for (int i = 0; i < 4; ++i) path.push_back({i, i + 1, 1.0});
  IsingModel model(5, std::vector<double>(5, 0.0), path, 0.0);
  auto d = make_decomposer(DecomposerKind::Bfs, nullptr);
  Rng rng(3);
  CHECK(d->select(model, SpinState(5, -1), 10, rng).size() == 5);

  // connectivity of a grown cluster: consecutive path vertices
  const auto sel = d->select(model, SpinState(5, -1), 3, rng);
  CHECK(sel.size() == 3);
  CHECK(sel[2] - sel[0] == 2);  // contiguous on a path graph

  // star graph: center plus two leaves when started from the center
  std::vector<Coupling> star;
  for (int leaf = 1; leaf < 6; ++leaf) star.push_back({0, leaf, 1.0});
  IsingModel starm(6, std::vector<double>(6, 0.0), star, 0.0);
  for (int seed = 0; seed < 20; ++seed) {
    Rng r(seed);
    const auto picked = d->select(starm, SpinState(6, -1), 3, r);
    if (std::find(picked.begin(), picked.end(), 0) != picked.end() &&
        picked[0] == 0) {
      CHECK(picked.size() == 3);
    }
  }
}

TEST_CASE("bfs restarts on disconnected components") {
  // two disjoint edges: 0-1, 2-3
  std::vector<Coupling> edges{{0, 1, 1.0}, {2, 3, 1.0}};
  IsingModel model(4, std::vector<double>(4, 0.0), edges, 0.0);
  auto d = make_decomposer(DecomposerKind::Bfs, nullptr);
  Rng rng(1);
  const auto sel = d->select(model, SpinState(4, -1), 4, rng);
  CHECK(sel == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("sat decomposer unions whole clause groups") {
  const auto instance = parse_dimacs("p cnf 4 2\n1 2 3 0\n2 3 4 0\n");
  const auto fmodel = encode_chancellor(instance);
  auto d = make_decomposer(DecomposerKind::SatClause, &fmodel);
  Rng rng(2);
  // capacity 4 fits exactly one clause group (ancilla + 3 vars)
  const auto sel = d->select(fmodel.ising, SpinState(6, -1), 4, rng);
  REQUIRE(sel.size() == 4);
  const bool clause0 = sel == std::vector<int>{0, 1, 2, 4};
  const bool clause1 = sel == std::vector<int>{1, 2, 3, 5};
  CHECK((clause0 || clause1));

  // generous capacity: drawing every clause covers all spins
  const auto all = d->select(fmodel.ising, SpinState(6, -1), 100, rng);
  CHECK(all.size() == 6);

  // capacity below one clause group truncates, variable spins first
  const auto truncated = d->select(fmodel.ising, SpinState(6, -1), 3, rng);
  REQUIRE(truncated.size() == 3);
  for (int s : truncated) {
    CHECK(fmodel.roles[s].kind == SpinRole::Kind::Variable);
  }

  CHECK_THROWS_AS(make_decomposer(DecomposerKind::SatClause, nullptr),
                  std::invalid_argument);
}

TEST_CASE("selection capacity bound holds for every decomposer") {
  Rng setup(6);
  const auto instance = random_3sat(8, 20, 9);
  const auto fmodel = encode_chancellor(instance);
  const auto state = random_state(fmodel.size(), setup);
  for (auto kind :
       {DecomposerKind::EnergyImpact, DecomposerKind::Random,
        DecomposerKind::Pseudorandom, DecomposerKind::Bfs,
        DecomposerKind::SatClause}) {
    auto d = make_decomposer(kind, &fmodel);
    Rng rng(13);
    for (int it = 0; it < 10; ++it) {
      const auto sel = d->select(fmodel.ising, state, 7, rng);
      CHECK(sel.size() <= 7);
      CHECK(std::set<int>(sel.begin(), sel.end()).size() == sel.size());
      CHECK(std::is_sorted(sel.begin(), sel.end()));
    }
  }
}
