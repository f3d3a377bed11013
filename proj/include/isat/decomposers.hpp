#pragma once

#include <memory>
#include <string>
#include <vector>

#include "isat/formulations.hpp"
#include "isat/ising.hpp"
#include "isat/rng.hpp"

namespace isat {

enum class DecomposerKind { EnergyImpact, Random, Pseudorandom, Bfs, SatClause };

std::string decomposer_name(DecomposerKind kind);
DecomposerKind decomposer_from_name(const std::string& name);

// Capacity-bounded sub-model: the selected spins keep their couplings, every
// frozen neighbor folds into the local fields, and the frozen-frozen part of
// the Hamiltonian accumulates into the offset, so that for any sub-state σ
// sub.energy(σ) equals the global energy of the frozen state overwritten
// with σ on the selected spins.
struct SubProblem {
  std::vector<int> selected;  // ascending global spin ids
  IsingModel model;
  SpinState frozen;  // the global state used for freezing

  SpinState restriction() const {
    SpinState s(selected.size());
    for (std::size_t t = 0; t < selected.size(); ++t) s[t] = frozen[selected[t]];
    return s;
  }
};

SubProblem extract_subproblem(const IsingModel& model, const SpinState& state,
                              std::vector<int> selected);

// Spin-subset selection strategy. Instances hold per-run state (the
// pseudorandom window cursor), so use one instance per repeat.
class Decomposer {
 public:
  virtual ~Decomposer() = default;
  virtual std::vector<int> select(const IsingModel& model,
                                  const SpinState& state, int capacity,
                                  Rng& rng) = 0;
};

// `fmodel` is required for the SAT-clause decomposer and ignored otherwise.
// `impact_by_magnitude` switches the energy-impact ranking from signed flip
// deltas to absolute values.
std::unique_ptr<Decomposer> make_decomposer(DecomposerKind kind,
                                            const FormulationModel* fmodel,
                                            bool impact_by_magnitude = false);

}  // namespace isat
