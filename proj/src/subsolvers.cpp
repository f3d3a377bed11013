#include "isat/subsolvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isat {

std::string subsolver_name(SubsolverKind kind) {
  switch (kind) {
    case SubsolverKind::BruteForce: return "brute";
    case SubsolverKind::Tabu: return "tabu";
    case SubsolverKind::Anneal: return "anneal";
  }
  throw std::logic_error("unknown subsolver kind");
}

SubsolverKind subsolver_from_name(const std::string& name) {
  if (name == "brute") return SubsolverKind::BruteForce;
  if (name == "tabu") return SubsolverKind::Tabu;
  if (name == "anneal") return SubsolverKind::Anneal;
  throw std::invalid_argument("unknown subsolver: " + name);
}

Solution brute_force(const IsingModel& model) {
  const int n = model.size();
  if (n > 28) {
    throw std::invalid_argument("brute force limited to 28 spins, got " +
                                std::to_string(n));
  }
  SpinState state(n, -1);
  double energy = model.energy(state);
  SpinState best_state = state;
  double best_energy = energy;
  long evals = 1;
  // Gray-code walk: consecutive indices differ in one spin
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    const int bit = __builtin_ctzll(idx);
    energy += model.flip_delta(state, bit);
    state[bit] = -state[bit];
    ++evals;
    if (energy < best_energy ||
        (energy == best_energy && state < best_state)) {
      best_energy = energy;
      best_state = state;
    }
  }
  return {std::move(best_state), best_energy, evals};
}

Solution tabu_search(const IsingModel& model, const SpinState& start,
                     const SubsolverConfig& cfg, Rng& rng) {
  const int n = model.size();
  if (static_cast<int>(start.size()) != n) {
    throw std::invalid_argument("start state length does not match model");
  }
  if (n == 0) return {start, model.energy(start), 0};

  SpinState state = start;
  double energy = model.energy(state);
  std::vector<double> flip(n);
  auto refresh_flips = [&] {
    for (int i = 0; i < n; ++i) flip[i] = model.flip_energy(state, i);
  };
  refresh_flips();

  // with clamping on, the start state counts as the initial incumbent
  SpinState best_state = state;
  double best_energy = energy;
  bool have_best = cfg.incumbent_clamp;
  const long budget = cfg.tabu_steps >= 0 ? cfg.tabu_steps : 500L * n;
  const long stall_limit = std::max<long>(100, 4L * n);
  std::vector<long> tabu_until(n, -1);
  long evals = 1;
  long stalled = 0;

  for (long step = 0; step < budget; ++step) {
    int move = -1;
    double move_delta = 0.0;
    for (int i = 0; i < n; ++i) {
      const double delta = -static_cast<double>(state[i]) * flip[i];
      const bool tabu = tabu_until[i] > step;
      if (tabu && !(have_best && energy + delta < best_energy)) continue;
      if (move < 0 || delta < move_delta) {
        move = i;
        move_delta = delta;
      }
    }
    if (move < 0) {
      // everything is tabu (tenure >= n): take the earliest-expiring move
      for (int i = 0; i < n; ++i) {
        if (move < 0 || tabu_until[i] < tabu_until[move]) move = i;
      }
      move_delta = -static_cast<double>(state[move]) * flip[move];
    }

    energy += move_delta;
    const std::int8_t old = state[move];
    state[move] = -old;
    for (const auto& [j, w] : model.neighbors(move)) {
      flip[j] -= 4.0 * w * old;
    }
    tabu_until[move] = step + 1 + cfg.tabu_tenure;
    ++evals;
    if (!have_best || energy < best_energy) {
      best_energy = energy;
      best_state = state;
      have_best = true;
      stalled = 0;
    } else if (energy == best_energy) {
      best_state = state;  // plateau drift keeps the walk moving
    } else if (++stalled >= stall_limit) {
      // diversify: kick the incumbent and clear the tabu list
      state = have_best ? best_state : state;
      for (int kick = std::max(1, n / 5); kick > 0; --kick) {
        state[rng_below(rng, n)] *= -1;
      }
      energy = model.energy(state);
      refresh_flips();
      std::fill(tabu_until.begin(), tabu_until.end(), -1);
      stalled = 0;
      ++evals;
    }
  }
  return {std::move(best_state), best_energy, evals};
}

Solution anneal(const IsingModel& model, const SpinState& start,
                const SubsolverConfig& cfg, Rng& rng) {
  const int n = model.size();
  if (static_cast<int>(start.size()) != n) {
    throw std::invalid_argument("start state length does not match model");
  }
  if (cfg.anneal_t0 <= 0.0 || cfg.anneal_t1 <= 0.0 ||
      cfg.anneal_t1 > cfg.anneal_t0) {
    throw std::invalid_argument("anneal schedule requires t0 >= t1 > 0");
  }
  SpinState state = start;
  double energy = model.energy(state);
  SpinState best_state = state;
  double best_energy = energy;
  bool have_best = cfg.incumbent_clamp;
  long evals = 1;
  if (n == 0) return {std::move(best_state), best_energy, evals};

  const long steps = cfg.anneal_steps >= 0 ? cfg.anneal_steps : 200L * n;
  const double ratio =
      steps > 1 ? std::pow(cfg.anneal_t1 / cfg.anneal_t0,
                           1.0 / static_cast<double>(steps - 1))
                : 1.0;
  double temperature = cfg.anneal_t0;
  for (long step = 0; step < steps; ++step) {
    const int i = rng_below(rng, n);
    const double delta = model.flip_delta(state, i);
    if (delta < 0.0 || rng_unit(rng) < std::exp(-delta / temperature)) {
      state[i] = -state[i];
      energy += delta;
      ++evals;
      if (!have_best || energy < best_energy) {
        best_energy = energy;
        best_state = state;
        have_best = true;
      }
    }
    temperature *= ratio;
  }
  if (!have_best) {
    best_state = state;
    best_energy = energy;
  }
  return {std::move(best_state), best_energy, evals};
}

Solution solve_ising(const IsingModel& model, const SpinState& start,
                     const SubsolverConfig& cfg, Rng& rng) {
  switch (cfg.kind) {
    case SubsolverKind::BruteForce: return brute_force(model);
    case SubsolverKind::Tabu: return tabu_search(model, start, cfg, rng);
    case SubsolverKind::Anneal: return anneal(model, start, cfg, rng);
  }
  throw std::logic_error("unknown subsolver kind");
}

}  // namespace isat
