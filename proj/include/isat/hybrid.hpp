#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isat/chip.hpp"
#include "isat/cnf.hpp"
#include "isat/decomposers.hpp"
#include "isat/formulations.hpp"
#include "isat/subsolvers.hpp"

namespace isat {

enum class SolvePath { SoftwareTabu, ChipEmulated };

std::string path_name(SolvePath path);
SolvePath path_from_name(const std::string& name);

struct HybridConfig {
  FormulationId formulation = FormulationId::Chancellor;
  DecomposerKind decomposer = DecomposerKind::Bfs;
  SolvePath path = SolvePath::SoftwareTabu;
  int capacity = 45;
  int iteration_limit = 500;
  int repeats = 100;
  std::uint64_t seed = 1;
  SubsolverConfig subsolver;  // software engine / chip emulation engine
  ChipConfig chip;
  bool impact_by_magnitude = false;
  bool incumbent_clamp = true;
  // chip path: solve each sub-problem with Tabu as well and record the chip
  // energy as a percentage of that reference ground
  bool record_energy_rates = true;
};

struct GlobalState {
  SpinState spins;
  BooleanAssignment assignment;
  double energy = 0.0;
};

struct IterationRecord {
  double energy = 0.0;  // global energy after the iteration
  bool accepted = false;
  std::optional<double> energy_rate;  // chip path only
  int clamp_count = 0;
  int zeroed_count = 0;
  int removed_count = 0;
};

struct RepeatRecord {
  std::uint64_t seed = 0;
  bool all_sat = false;
  int iterations = 0;            // iterations actually executed
  int iterations_to_allsat = 0;  // = iteration limit when not reached
  double final_energy = 0.0;
  std::vector<double> trajectory;       // global energy per iteration
  std::vector<double> energy_rates;     // defined samples, chip path
  int undefined_energy_rates = 0;
  long clamp_total = 0;
  long zeroed_total = 0;
  long removed_total = 0;
};

struct RunMetrics {
  std::vector<RepeatRecord> repeats;
  double all_sat_rate = 0.0;
  double mean_iterations = 0.0;  // timeouts count at the iteration limit
  std::optional<double> mean_energy_rate;
};

// Percentage of the reference ground energy attained by a sub-problem
// solution. Defined as 100*(solution/ground) clamped into [0, 100] when the
// ground is negative, 100 when both are zero; sign-incompatible combinations
// are undefined and excluded from means.
std::optional<double> energy_rate(double solution_energy,
                                  double ground_energy);

// One decompose -> preprocess/solve -> merge step. Returns the record and
// updates the state; with incumbent clamping the global energy never rises.
IterationRecord run_iteration(const FormulationModel& fmodel,
                              GlobalState& state, Decomposer& decomposer,
                              const HybridConfig& cfg, Rng& rng);

// Random initial state, then iterations until the decoded assignment
// satisfies every clause or the iteration limit is reached.
RepeatRecord run_repeat(const FormulationModel& fmodel,
                        const HybridConfig& cfg, std::uint64_t repeat_seed);

// Encodes once and executes `repeats` independent repeats with seeds derived
// from cfg.seed.
RunMetrics run_hybrid(const CnfInstance& instance, const HybridConfig& cfg);
RunMetrics run_hybrid(const FormulationModel& fmodel, const HybridConfig& cfg);

}  // namespace isat
