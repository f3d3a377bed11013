#include "isat/decomposers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace isat {

std::string decomposer_name(DecomposerKind kind) {
  switch (kind) {
    case DecomposerKind::EnergyImpact: return "energy-impact";
    case DecomposerKind::Random: return "random";
    case DecomposerKind::Pseudorandom: return "pseudorandom";
    case DecomposerKind::Bfs: return "bfs";
    case DecomposerKind::SatClause: return "sat";
  }
  throw std::logic_error("unknown decomposer kind");
}

DecomposerKind decomposer_from_name(const std::string& name) {
  if (name == "energy-impact") return DecomposerKind::EnergyImpact;
  if (name == "random") return DecomposerKind::Random;
  if (name == "pseudorandom") return DecomposerKind::Pseudorandom;
  if (name == "bfs") return DecomposerKind::Bfs;
  if (name == "sat") return DecomposerKind::SatClause;
  throw std::invalid_argument("unknown decomposer: " + name);
}

SubProblem extract_subproblem(const IsingModel& model, const SpinState& state,
                              std::vector<int> selected) {
  const int n = model.size();
  std::sort(selected.begin(), selected.end());
  std::vector<int> local(n, -1);
  for (std::size_t t = 0; t < selected.size(); ++t) {
    const int g = selected[t];
    if (g < 0 || g >= n) throw std::out_of_range("selected spin out of range");
    if (local[g] >= 0) throw std::invalid_argument("duplicate selected spin");
    local[g] = static_cast<int>(t);
  }

  std::vector<double> h(selected.size());
  double offset = model.offset();
  for (int g = 0; g < n; ++g) {
    if (local[g] < 0) offset += model.field(g) * state[g];
  }
  for (std::size_t t = 0; t < selected.size(); ++t) {
    h[t] = model.field(selected[t]);
  }
  std::vector<Coupling> couplings;
  for (const auto& c : model.couplings()) {
    const int li = local[c.i];
    const int lj = local[c.j];
    if (li >= 0 && lj >= 0) {
      couplings.push_back({li, lj, c.w});
    } else if (li >= 0) {
      h[li] += c.w * state[c.j];
    } else if (lj >= 0) {
      h[lj] += c.w * state[c.i];
    } else {
      offset += c.w * state[c.i] * state[c.j];
    }
  }
  SubProblem sub;
  sub.model = IsingModel(static_cast<int>(selected.size()), std::move(h),
                         couplings, offset);
  sub.selected = std::move(selected);
  sub.frozen = state;
  return sub;
}

namespace {

struct EnergyImpactDecomposer : Decomposer {
  explicit EnergyImpactDecomposer(bool by_magnitude)
      : by_magnitude_(by_magnitude) {}

  std::vector<int> select(const IsingModel& model, const SpinState& state,
                          int capacity, Rng&) override {
    const int n = model.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> score(n);
    for (int i = 0; i < n; ++i) {
      const double delta = model.flip_delta(state, i);
      score[i] = by_magnitude_ ? std::abs(delta) : delta;
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (score[a] != score[b]) return score[a] > score[b];
      return a < b;
    });
    order.resize(std::min(capacity, n));
    std::sort(order.begin(), order.end());
    return order;
  }

  bool by_magnitude_;
};

struct RandomDecomposer : Decomposer {
  std::vector<int> select(const IsingModel& model, const SpinState&,
                          int capacity, Rng& rng) override {
    auto sel = sample_without_replacement(model.size(),
                                          std::min(capacity, model.size()), rng);
    std::sort(sel.begin(), sel.end());
    return sel;
  }
};

// Sliding window over a persistent permutation: consecutive calls within a
// pass are disjoint, every spin is selected exactly once per pass, and the
// order reshuffles when the pass ends.
struct PseudorandomDecomposer : Decomposer {
  std::vector<int> select(const IsingModel& model, const SpinState&,
                          int capacity, Rng& rng) override {
    const int n = model.size();
    if (static_cast<int>(perm_.size()) != n) {
      perm_.resize(n);
      std::iota(perm_.begin(), perm_.end(), 0);
      shuffle_vec(perm_, rng);
      cursor_ = 0;
    }
    if (cursor_ >= n) {
      shuffle_vec(perm_, rng);
      cursor_ = 0;
    }
    const int take = std::min(capacity, n - cursor_);
    std::vector<int> sel(perm_.begin() + cursor_,
                         perm_.begin() + cursor_ + take);
    cursor_ += take;
    std::sort(sel.begin(), sel.end());
    return sel;
  }

  std::vector<int> perm_;
  int cursor_ = 0;
};

struct BfsDecomposer : Decomposer {
  std::vector<int> select(const IsingModel& model, const SpinState&,
                          int capacity, Rng& rng) override {
    const int n = model.size();
    const int want = std::min(capacity, n);
    std::vector<char> visited(n, 0);
    std::vector<int> sel;
    sel.reserve(want);
    std::deque<int> frontier;
    auto enqueue = [&](int v) {
      visited[v] = 1;
      sel.push_back(v);
      frontier.push_back(v);
    };
    while (static_cast<int>(sel.size()) < want) {
      if (frontier.empty()) {
        // fresh component: uniform unvisited source
        int pick = rng_below(rng, n - static_cast<int>(sel.size()));
        for (int v = 0; v < n; ++v) {
          if (!visited[v] && pick-- == 0) {
            enqueue(v);
            break;
          }
        }
        continue;
      }
      const int u = frontier.front();
      frontier.pop_front();
      std::vector<int> nbrs;
      for (const auto& [v, w] : model.neighbors(u)) {
        (void)w;
        if (!visited[v]) nbrs.push_back(v);
      }
      shuffle_vec(nbrs, rng);
      for (int v : nbrs) {
        if (static_cast<int>(sel.size()) >= want) break;
        if (!visited[v]) enqueue(v);
      }
    }
    std::sort(sel.begin(), sel.end());
    return sel;
  }
};

// Draws whole clauses (without replacement) and unions their spin groups; a
// clause whose spins would push the union past capacity stops the draw, except
// that a first clause too large on its own is truncated, variable spins first.
struct SatClauseDecomposer : Decomposer {
  explicit SatClauseDecomposer(const FormulationModel* fmodel)
      : fmodel_(fmodel) {
    if (fmodel_ == nullptr) {
      throw std::invalid_argument(
          "sat decomposer requires a formulation model with roles");
    }
  }

  std::vector<int> select(const IsingModel&, const SpinState&, int capacity,
                          Rng& rng) override {
    const int m = fmodel_->source.num_clauses();
    std::vector<int> clauses(m);
    std::iota(clauses.begin(), clauses.end(), 0);
    shuffle_vec(clauses, rng);
    std::set<int> sel;
    for (int c : clauses) {
      const auto group = clause_spins(*fmodel_, c);
      std::set<int> merged = sel;
      merged.insert(group.begin(), group.end());
      if (static_cast<int>(merged.size()) > capacity) {
        if (!sel.empty()) break;
        // single oversized clause: keep variable-ish spins ahead of ancillas
        std::vector<int> ordered;
        for (int s : group) {
          if (fmodel_->roles[s].var >= 1) ordered.push_back(s);
        }
        for (int s : group) {
          if (fmodel_->roles[s].var < 1) ordered.push_back(s);
        }
        ordered.resize(capacity);
        sel.insert(ordered.begin(), ordered.end());
        break;
      }
      sel.swap(merged);
    }
    return {sel.begin(), sel.end()};
  }

  const FormulationModel* fmodel_;
};

}  // namespace

std::unique_ptr<Decomposer> make_decomposer(DecomposerKind kind,
                                            const FormulationModel* fmodel,
                                            bool impact_by_magnitude) {
  switch (kind) {
    case DecomposerKind::EnergyImpact:
      return std::make_unique<EnergyImpactDecomposer>(impact_by_magnitude);
    case DecomposerKind::Random:
      return std::make_unique<RandomDecomposer>();
    case DecomposerKind::Pseudorandom:
      return std::make_unique<PseudorandomDecomposer>();
    case DecomposerKind::Bfs:
      return std::make_unique<BfsDecomposer>();
    case DecomposerKind::SatClause:
      return std::make_unique<SatClauseDecomposer>(fmodel);
  }
  throw std::logic_error("unknown decomposer kind");
}

}  // namespace isat
