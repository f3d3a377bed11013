#include "isat/ising.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace isat {

void QuboModel::add(int i, int j, double w) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    throw std::out_of_range("QUBO index out of range");
  }
  if (w == 0.0) return;
  auto key = std::make_pair(i, j);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, w);
  } else {
    it->second += w;
    if (it->second == 0.0) entries_.erase(it);
  }
}

void QuboModel::scale(double k) {
  for (auto& [key, w] : entries_) w *= k;
  offset_ *= k;
}

double QuboModel::at(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? 0.0 : it->second;
}

double QuboModel::energy(const std::vector<bool>& x) const {
  double e = offset_;
  for (const auto& [key, w] : entries_) {
    if (x[key.first] && x[key.second]) e += w;
  }
  return e;
}

IsingModel::IsingModel(int n, std::vector<double> h,
                       const std::map<std::pair<int, int>, double>& couplings,
                       double offset)
    : n_(n), h_(std::move(h)), offset_(offset) {
  if (static_cast<int>(h_.size()) != n_) {
    throw std::invalid_argument("field vector length does not match size");
  }
  std::map<std::pair<int, int>, double> folded;
  for (const auto& [key, w] : couplings) {
    auto [i, j] = key;
    if (i == j) throw std::invalid_argument("self-coupling not allowed");
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n_) throw std::out_of_range("coupling index out of range");
    folded[{i, j}] += w;
  }
  couplings_.reserve(folded.size());
  for (const auto& [key, w] : folded) {
    if (w != 0.0) couplings_.push_back({key.first, key.second, w});
  }
  build_adjacency();
}

IsingModel::IsingModel(int n, std::vector<double> h,
                       const std::vector<Coupling>& couplings, double offset)
    : IsingModel(n, std::move(h),
                 [&] {
                   std::map<std::pair<int, int>, double> m;
                   for (const auto& c : couplings) m[{c.i, c.j}] += c.w;
                   return m;
                 }(),
                 offset) {}

void IsingModel::build_adjacency() {
  adjacency_.assign(n_, {});
  for (const auto& c : couplings_) {
    adjacency_[c.i].emplace_back(c.j, c.w);
    adjacency_[c.j].emplace_back(c.i, c.w);
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
  }
}

double IsingModel::energy(const SpinState& s) const {
  if (static_cast<int>(s.size()) != n_) {
    throw std::invalid_argument("spin state length " + std::to_string(s.size()) +
                                " does not match model size " +
                                std::to_string(n_));
  }
  double e = offset_;
  for (int i = 0; i < n_; ++i) e += h_[i] * s[i];
  for (const auto& c : couplings_) e += c.w * s[c.i] * s[c.j];
  return e;
}

double IsingModel::flip_energy(const SpinState& s, int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("spin index out of range");
  double acc = h_[i];
  for (const auto& [j, w] : adjacency_[i]) acc += w * s[j];
  return 2.0 * acc;
}

double IsingModel::flip_delta(const SpinState& s, int i) const {
  return -static_cast<double>(s[i]) * flip_energy(s, i);
}

IsingModel qubo_to_ising(const QuboModel& q) {
  const int n = q.size();
  std::vector<double> h(n, 0.0);
  std::map<std::pair<int, int>, double> j;
  double offset = q.offset();
  for (const auto& [key, w] : q.entries()) {
    const auto [a, b] = key;
    if (a == b) {
      h[a] += w / 2.0;
      offset += w / 2.0;
    } else {
      h[a] += w / 4.0;
      h[b] += w / 4.0;
      const int lo = std::min(a, b);
      const int hi = std::max(a, b);
      j[{lo, hi}] += w / 4.0;
      offset += w / 4.0;
    }
  }
  return IsingModel(n, std::move(h), j, offset);
}

SpinState spins_from_bits(const std::vector<bool>& x) {
  SpinState s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? +1 : -1;
  return s;
}

std::vector<bool> bits_from_spins(const SpinState& s) {
  std::vector<bool> x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) x[i] = s[i] > 0;
  return x;
}

}  // namespace isat
