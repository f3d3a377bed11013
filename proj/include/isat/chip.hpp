#pragma once

#include <string>
#include <vector>

#include "isat/decomposers.hpp"
#include "isat/ising.hpp"
#include "isat/rng.hpp"
#include "isat/subsolvers.hpp"

namespace isat {

enum class RemovalMode { Off, Rigorous, Heuristic };

std::string removal_name(RemovalMode mode);
RemovalMode removal_from_name(const std::string& name);

// Constraint model of the all-to-all RO array: integer couplings within
// [-j_max, +j_max], a local-field budget that grows with the number of
// oscillators merged into the reference group, and a noisy sampled readout.
struct ChipConfig {
  int total_spins = 49;  // including the reference group
  int lfro_count = 4;
  int j_max = 14;
  double scale = 12.0;
  RemovalMode removal = RemovalMode::Rigorous;
  double removal_n = 5.0;  // heuristic threshold |h| > N * max|J|
  int readout_samples = 8;
  double readout_flip_prob = 0.02;
  bool quadratic_h_range = false;
  SubsolverConfig emu;  // engine run on the quantized model

  int problem_capacity() const { return total_spins - lfro_count; }
  int h_max() const;
};

// Local-field range for g merged reference oscillators: j_max*g by default
// (two coupling sites per member), or j_max*g^2 under the quadratic model
// where a merged group couples through a g x g block.
int h_range(int g, bool quadratic = false, int j_max = 14);

struct ForcedSpin {
  int spin = 0;        // index into the pre-removal model
  std::int8_t value = 0;
};

struct ReducedModel {
  IsingModel model;
  std::vector<int> kept;  // reduced index -> original index
  std::vector<ForcedSpin> removed;
};

// Removes spins whose local field dominates their couplings, fixing
// s_i = -sign(h_i): rigorously when |h_i| > sum_j |J~_ij| (lossless), or
// heuristically when |h_i| > N * max_j |J~_ij|. Folding is applied
// iteratively until no further spin qualifies.
ReducedModel remove_forced_spins(const IsingModel& model, RemovalMode mode,
                                 double heuristic_n = 5.0);

// Multiplies h and J by k and rounds half away from zero; the offset scales
// without rounding. `zeroed` counts nonzero weights that rounded to zero.
IsingModel scale_and_round(const IsingModel& model, double k,
                           int* zeroed = nullptr);

// Clamps J into [-j_max, j_max] and h into [-h_max, h_max]; `clamp_count`
// counts altered weights.
IsingModel truncate_clamp(const IsingModel& model, int j_max, int h_max,
                          int* clamp_count = nullptr);

struct QuantizedModel {
  IsingModel model;     // hardware-compatible reduced model
  IsingModel original;  // the sub-Hamiltonian before preprocessing
  std::vector<int> kept;
  std::vector<ForcedSpin> removed;
  double scale = 1.0;
  int h_max = 0;
  int clamp_count = 0;
  int zeroed_count = 0;

  // solver state on the quantized model -> full sub-problem state
  SpinState reinflate(const SpinState& reduced) const;
};

// remove_forced_spins -> scale_and_round -> truncate_clamp, with the
// bookkeeping needed to reinflate solutions and to report energies on the
// original sub-Hamiltonian.
QuantizedModel preprocess(const SubProblem& sub, const ChipConfig& cfg);

struct ChipResult {
  SpinState state;      // full sub-problem state after readout + reinflation
  double energy = 0.0;  // evaluated on the original sub-Hamiltonian
  long evals = 0;
};

// Emulated chip run: the configured engine settles the quantized model from a
// random initial state, then every spin is read out by majority vote over
// noisy samples (ties toward +1) and removed spins are reinserted.
ChipResult chip_solve(const QuantizedModel& qm, const ChipConfig& cfg,
                      Rng& rng);

SpinState emulate_readout(const SpinState& s, int samples, double flip_prob,
                          Rng& rng);

}  // namespace isat
