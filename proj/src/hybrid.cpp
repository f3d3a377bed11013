#include "isat/hybrid.hpp"

#include <algorithm>
#include <stdexcept>

namespace isat {

std::string path_name(SolvePath path) {
  switch (path) {
    case SolvePath::SoftwareTabu: return "software";
    case SolvePath::ChipEmulated: return "chip";
  }
  throw std::logic_error("unknown solve path");
}

SolvePath path_from_name(const std::string& name) {
  if (name == "software") return SolvePath::SoftwareTabu;
  if (name == "chip") return SolvePath::ChipEmulated;
  throw std::invalid_argument("unknown solve path: " + name);
}

std::optional<double> energy_rate(double solution_energy,
                                  double ground_energy) {
  if (ground_energy == 0.0) {
    if (solution_energy == 0.0) return 100.0;
    return std::nullopt;
  }
  if (ground_energy > 0.0 && solution_energy < 0.0) return std::nullopt;
  const double rate = 100.0 * solution_energy / ground_energy;
  return std::clamp(rate, 0.0, 100.0);
}

IterationRecord run_iteration(const FormulationModel& fmodel,
                              GlobalState& state, Decomposer& decomposer,
                              const HybridConfig& cfg, Rng& rng) {
  IterationRecord record;
  auto selected =
      decomposer.select(fmodel.ising, state.spins, cfg.capacity, rng);
  SubProblem sub = extract_subproblem(fmodel.ising, state.spins,
                                      std::move(selected));
  const SpinState incumbent = sub.restriction();
  const double incumbent_energy = sub.model.energy(incumbent);

  SpinState candidate;
  double candidate_energy = 0.0;
  if (cfg.path == SolvePath::SoftwareTabu) {
    // each sub-problem is searched from its own random state, as in the
    // qbsolv local phase; the incumbent comparison below keeps the global
    // trajectory monotone while admitting equal-energy block optima
    SpinState start(sub.model.size());
    for (auto& v : start) v = rng_below(rng, 2) == 0 ? -1 : +1;
    Solution sol = solve_ising(sub.model, start, cfg.subsolver, rng);
    candidate = std::move(sol.state);
    candidate_energy = sol.energy;
  } else {
    ChipConfig chip_cfg = cfg.chip;
    chip_cfg.emu = cfg.subsolver;
    QuantizedModel qm = preprocess(sub, chip_cfg);
    ChipResult chip = chip_solve(qm, chip_cfg, rng);
    record.clamp_count = qm.clamp_count;
    record.zeroed_count = qm.zeroed_count;
    record.removed_count = static_cast<int>(qm.removed.size());
    if (cfg.record_energy_rates) {
      // reference ground from the software control arm on the same sub-model
      SubsolverConfig ground_cfg;
      ground_cfg.kind = SubsolverKind::Tabu;
      Rng ground_rng(0);
      Solution ground =
          tabu_search(sub.model, incumbent, ground_cfg, ground_rng);
      record.energy_rate = energy_rate(chip.energy, ground.energy);
    }
    candidate = std::move(chip.state);
    candidate_energy = chip.energy;
  }

  const bool improves = candidate_energy <= incumbent_energy;
  if (!cfg.incumbent_clamp || improves) {
    for (std::size_t t = 0; t < sub.selected.size(); ++t) {
      state.spins[sub.selected[t]] = candidate[t];
    }
    record.accepted = true;
  }
  state.energy = fmodel.ising.energy(state.spins);
  state.assignment = decode(fmodel, state.spins).assignment;
  record.energy = state.energy;
  return record;
}

RepeatRecord run_repeat(const FormulationModel& fmodel,
                        const HybridConfig& cfg, std::uint64_t repeat_seed) {
  Rng rng(repeat_seed);
  auto decomposer = make_decomposer(cfg.decomposer, &fmodel,
                                    cfg.impact_by_magnitude);
  GlobalState state;
  state.spins.resize(fmodel.size());
  for (auto& s : state.spins) s = rng_below(rng, 2) == 0 ? -1 : +1;
  state.energy = fmodel.ising.energy(state.spins);
  state.assignment = decode(fmodel, state.spins).assignment;

  RepeatRecord record;
  record.seed = repeat_seed;
  const int m = fmodel.source.num_clauses();
  for (int it = 1; it <= cfg.iteration_limit; ++it) {
    IterationRecord ir = run_iteration(fmodel, state, *decomposer, cfg, rng);
    record.trajectory.push_back(ir.energy);
    record.clamp_total += ir.clamp_count;
    record.zeroed_total += ir.zeroed_count;
    record.removed_total += ir.removed_count;
    if (ir.energy_rate.has_value()) {
      record.energy_rates.push_back(*ir.energy_rate);
    } else if (cfg.path == SolvePath::ChipEmulated &&
               cfg.record_energy_rates) {
      ++record.undefined_energy_rates;
    }
    record.iterations = it;
    if (count_satisfied(fmodel.source, state.assignment) == m) {
      record.all_sat = true;
      record.iterations_to_allsat = it;
      break;
    }
  }
  if (!record.all_sat) record.iterations_to_allsat = cfg.iteration_limit;
  record.final_energy = state.energy;
  return record;
}

RunMetrics run_hybrid(const FormulationModel& fmodel,
                      const HybridConfig& cfg) {
  if (cfg.repeats < 1 || cfg.iteration_limit < 1) {
    throw std::invalid_argument("repeats and iteration limit must be >= 1");
  }
  if (cfg.path == SolvePath::ChipEmulated &&
      cfg.capacity > cfg.chip.problem_capacity()) {
    throw std::invalid_argument(
        "capacity " + std::to_string(cfg.capacity) +
        " exceeds chip problem capacity " +
        std::to_string(cfg.chip.problem_capacity()));
  }
  RunMetrics metrics;
  metrics.repeats.reserve(cfg.repeats);
  for (int r = 0; r < cfg.repeats; ++r) {
    metrics.repeats.push_back(
        run_repeat(fmodel, cfg, derive_seed(cfg.seed, r)));
  }
  long sat = 0;
  long iteration_sum = 0;
  double rate_sum = 0.0;
  long rate_count = 0;
  for (const auto& r : metrics.repeats) {
    if (r.all_sat) ++sat;
    iteration_sum += r.iterations_to_allsat;
    for (double rate : r.energy_rates) {
      rate_sum += rate;
      ++rate_count;
    }
  }
  metrics.all_sat_rate = static_cast<double>(sat) / cfg.repeats;
  metrics.mean_iterations =
      static_cast<double>(iteration_sum) / cfg.repeats;
  if (rate_count > 0) metrics.mean_energy_rate = rate_sum / rate_count;
  return metrics;
}

RunMetrics run_hybrid(const CnfInstance& instance, const HybridConfig& cfg) {
  return run_hybrid(encode(instance, cfg.formulation), cfg);
}

}  // namespace isat
