#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace isat {

// Spin vector over {-1, +1}.
using SpinState = std::vector<std::int8_t>;

// QUBO accumulator: F(x) = offset + sum_i Q_ii x_i + sum_{i!=j} Q_ij x_i x_j
// over binary x. Entries are kept as given (Q_ij and Q_ji are distinct
// slots); zero entries are dropped. The offset collects constants produced by
// negated-literal substitutions so encoded energies stay exact.
class QuboModel {
 public:
  QuboModel() = default;
  explicit QuboModel(int n) : n_(n) {}

  int size() const { return n_; }
  double offset() const { return offset_; }

  void add(int i, int j, double w);
  void add_linear(int i, double w) { add(i, i, w); }
  void add_offset(double w) { offset_ += w; }
  void scale(double k);

  double at(int i, int j) const;
  const std::map<std::pair<int, int>, double>& entries() const {
    return entries_;
  }

  double energy(const std::vector<bool>& x) const;

 private:
  int n_ = 0;
  double offset_ = 0.0;
  std::map<std::pair<int, int>, double> entries_;
};

struct Coupling {
  int i = 0;
  int j = 0;  // i < j
  double w = 0.0;
};

// Immutable Ising model: F(s) = offset + sum_i h_i s_i + sum_{i<j} J_ij s_i s_j.
// Couplings are stored strictly upper triangular with no zero entries; the
// offset carries the constants dropped by the spin form so that energies stay
// comparable across pipeline stages.
class IsingModel {
 public:
  IsingModel() = default;
  IsingModel(int n, std::vector<double> h,
             const std::map<std::pair<int, int>, double>& couplings,
             double offset);
  IsingModel(int n, std::vector<double> h, const std::vector<Coupling>& couplings,
             double offset);

  int size() const { return n_; }
  double offset() const { return offset_; }
  const std::vector<double>& fields() const { return h_; }
  double field(int i) const { return h_[i]; }
  const std::vector<Coupling>& couplings() const { return couplings_; }

  // Symmetrized neighbor view: j appears in neighbors(i) iff a nonzero
  // coupling is stored between i and j, with weight J_ij + J_ji.
  const std::vector<std::pair<int, double>>& neighbors(int i) const {
    return adjacency_[i];
  }

  double energy(const SpinState& s) const;

  // E(s_i = +1) - E(s_i = -1), independent of the current value of s_i.
  double flip_energy(const SpinState& s, int i) const;

  // Energy change from flipping spin i out of its current value.
  double flip_delta(const SpinState& s, int i) const;

 private:
  void build_adjacency();

  int n_ = 0;
  std::vector<double> h_;
  std::vector<Coupling> couplings_;
  double offset_ = 0.0;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

// Isomorphic transform under x_i = (s_i + 1)/2: h_i = Q_ii/2 + sum_j
// (Q_ij + Q_ji)/4, J_ij = (Q_ij + Q_ji)/4 for i < j, offset = sum_i Q_ii/2 +
// sum_{i<j} (Q_ij + Q_ji)/4, so that F_qubo(x) = F_ising(s(x)) exactly.
IsingModel qubo_to_ising(const QuboModel& q);

SpinState spins_from_bits(const std::vector<bool>& x);
std::vector<bool> bits_from_spins(const SpinState& s);

}  // namespace isat
