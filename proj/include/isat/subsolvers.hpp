#pragma once

#include <cstdint>
#include <string>

#include "isat/ising.hpp"
#include "isat/rng.hpp"

namespace isat {

enum class SubsolverKind { BruteForce, Tabu, Anneal };

std::string subsolver_name(SubsolverKind kind);
SubsolverKind subsolver_from_name(const std::string& name);

struct SubsolverConfig {
  SubsolverKind kind = SubsolverKind::Tabu;
  int tabu_tenure = 10;
  long tabu_steps = -1;  // negative selects the default budget of 500*n flips
  double anneal_t0 = 40.0;
  double anneal_t1 = 8.0;
  long anneal_steps = -1;  // negative selects 200*n steps
  bool incumbent_clamp = true;
};

struct Solution {
  SpinState state;
  double energy = 0.0;
  long evals = 0;
};

// Exhaustive minimum over all 2^n states, n <= 28. Ties resolve to the
// lexicographically smallest state with -1 < +1.
Solution brute_force(const IsingModel& model);

// Best-improvement Tabu search over single flips: each step flips the
// admissible spin with the most negative flip delta (ties by index) and makes
// it tabu for `tenure` steps; a tabu move is admissible when it reaches a new
// best energy, and when everything is tabu the earliest-expiring move is
// taken. Returns the best state seen, so the result is never worse than the
// start when incumbent clamping is on.
Solution tabu_search(const IsingModel& model, const SpinState& start,
                     const SubsolverConfig& cfg, Rng& rng);

// Metropolis single-flip annealing with geometric cooling from t0 to t1.
Solution anneal(const IsingModel& model, const SpinState& start,
                const SubsolverConfig& cfg, Rng& rng);

Solution solve_ising(const IsingModel& model, const SpinState& start,
                     const SubsolverConfig& cfg, Rng& rng);

}  // namespace isat
