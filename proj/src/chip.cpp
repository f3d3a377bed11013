#include "isat/chip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isat {

std::string removal_name(RemovalMode mode) {
  switch (mode) {
    case RemovalMode::Off: return "off";
    case RemovalMode::Rigorous: return "rigorous";
    case RemovalMode::Heuristic: return "heuristic";
  }
  throw std::logic_error("unknown removal mode");
}

RemovalMode removal_from_name(const std::string& name) {
  if (name == "off") return RemovalMode::Off;
  if (name == "rigorous") return RemovalMode::Rigorous;
  if (name == "heuristic") return RemovalMode::Heuristic;
  throw std::invalid_argument("unknown removal mode: " + name);
}

int h_range(int g, bool quadratic, int j_max) {
  if (g < 1) throw std::invalid_argument("LFRO count must be >= 1");
  return quadratic ? j_max * g * g : j_max * g;
}

int ChipConfig::h_max() const {
  return h_range(lfro_count, quadratic_h_range, j_max);
}

ReducedModel remove_forced_spins(const IsingModel& model, RemovalMode mode,
                                 double heuristic_n) {
  const int n = model.size();
  std::vector<double> h(model.fields());
  std::vector<char> alive(n, 1);
  std::vector<ForcedSpin> removed;

  if (mode != RemovalMode::Off) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        double sum = 0.0, maxabs = 0.0;
        for (const auto& [j, w] : model.neighbors(i)) {
          if (!alive[j]) continue;
          sum += std::abs(w);
          maxabs = std::max(maxabs, std::abs(w));
        }
        const double bound =
            mode == RemovalMode::Rigorous ? sum : heuristic_n * maxabs;
        if (std::abs(h[i]) > bound) {
          // a very negative field forces +1, a very positive one forces -1
          const std::int8_t value = h[i] < 0 ? +1 : -1;
          for (const auto& [j, w] : model.neighbors(i)) {
            if (alive[j]) h[j] += w * value;
          }
          alive[i] = 0;
          removed.push_back({i, value});
          changed = true;
        }
      }
    }
  }

  ReducedModel out;
  std::vector<int> local(n, -1);
  for (int i = 0; i < n; ++i) {
    if (alive[i]) {
      local[i] = static_cast<int>(out.kept.size());
      out.kept.push_back(i);
    }
  }
  std::vector<double> h_red;
  h_red.reserve(out.kept.size());
  double offset = model.offset();
  for (int i = 0; i < n; ++i) {
    if (alive[i]) h_red.push_back(h[i]);
  }
  for (const auto& f : removed) {
    offset += model.field(f.spin) * f.value;
  }
  // couplings between two removed spins fold into the offset
  std::vector<std::int8_t> forced(n, 0);
  for (const auto& f : removed) forced[f.spin] = f.value;
  std::vector<Coupling> couplings;
  for (const auto& c : model.couplings()) {
    if (alive[c.i] && alive[c.j]) {
      couplings.push_back({local[c.i], local[c.j], c.w});
    } else if (!alive[c.i] && !alive[c.j]) {
      offset += c.w * forced[c.i] * forced[c.j];
    }
    // mixed pairs were already folded into h during removal
  }
  out.model = IsingModel(static_cast<int>(out.kept.size()), std::move(h_red),
                         couplings, offset);
  out.removed = std::move(removed);
  return out;
}

namespace {

double round_half_away(double x) {
  return x < 0.0 ? -std::floor(-x + 0.5) : std::floor(x + 0.5);
}

}  // namespace

IsingModel scale_and_round(const IsingModel& model, double k, int* zeroed) {
  if (k <= 0.0) throw std::invalid_argument("scale factor must be positive");
  int zero_count = 0;
  std::vector<double> h(model.size());
  for (int i = 0; i < model.size(); ++i) {
    h[i] = round_half_away(model.field(i) * k);
    if (h[i] == 0.0 && model.field(i) != 0.0) ++zero_count;
  }
  std::vector<Coupling> couplings;
  for (const auto& c : model.couplings()) {
    const double w = round_half_away(c.w * k);
    if (w == 0.0) {
      ++zero_count;
      continue;
    }
    couplings.push_back({c.i, c.j, w});
  }
  if (zeroed != nullptr) *zeroed = zero_count;
  return IsingModel(model.size(), std::move(h), couplings,
                    model.offset() * k);
}

IsingModel truncate_clamp(const IsingModel& model, int j_max, int h_max,
                          int* clamp_count) {
  int clamps = 0;
  auto clamp = [&clamps](double w, double limit) {
    if (w > limit) {
      ++clamps;
      return limit;
    }
    if (w < -limit) {
      ++clamps;
      return -limit;
    }
    return w;
  };
  std::vector<double> h(model.size());
  for (int i = 0; i < model.size(); ++i) {
    h[i] = clamp(model.field(i), h_max);
  }
  std::vector<Coupling> couplings;
  for (const auto& c : model.couplings()) {
    couplings.push_back({c.i, c.j, clamp(c.w, j_max)});
  }
  if (clamp_count != nullptr) *clamp_count = clamps;
  return IsingModel(model.size(), std::move(h), couplings, model.offset());
}

SpinState QuantizedModel::reinflate(const SpinState& reduced) const {
  SpinState full(original.size(), 0);
  for (std::size_t t = 0; t < kept.size(); ++t) full[kept[t]] = reduced[t];
  for (const auto& f : removed) full[f.spin] = f.value;
  return full;
}

QuantizedModel preprocess(const SubProblem& sub, const ChipConfig& cfg) {
  if (sub.model.size() > cfg.problem_capacity()) {
    throw std::invalid_argument(
        "sub-problem of " + std::to_string(sub.model.size()) +
        " spins exceeds chip capacity " +
        std::to_string(cfg.problem_capacity()));
  }
  QuantizedModel qm;
  qm.original = sub.model;
  qm.scale = cfg.scale;
  qm.h_max = cfg.h_max();

  ReducedModel reduced =
      remove_forced_spins(sub.model, cfg.removal, cfg.removal_n);
  qm.kept = std::move(reduced.kept);
  qm.removed = std::move(reduced.removed);
  IsingModel scaled = scale_and_round(reduced.model, cfg.scale,
                                      &qm.zeroed_count);
  qm.model = truncate_clamp(scaled, cfg.j_max, qm.h_max, &qm.clamp_count);
  return qm;
}

SpinState emulate_readout(const SpinState& s, int samples, double flip_prob,
                          Rng& rng) {
  SpinState out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (flip_prob <= 0.0) {
      out[i] = s[i];
      continue;
    }
    int plus = 0;
    for (int k = 0; k < samples; ++k) {
      std::int8_t sample = s[i];
      if (rng_unit(rng) < flip_prob) sample = -sample;
      if (sample > 0) ++plus;
    }
    out[i] = 2 * plus >= samples ? +1 : -1;  // ties read as +1
  }
  return out;
}

ChipResult chip_solve(const QuantizedModel& qm, const ChipConfig& cfg,
                      Rng& rng) {
  const int n = qm.model.size();
  SpinState init(n);
  for (int i = 0; i < n; ++i) init[i] = rng_below(rng, 2) == 0 ? -1 : +1;
  Solution sol = solve_ising(qm.model, init, cfg.emu, rng);
  SpinState read = emulate_readout(sol.state, cfg.readout_samples,
                                   cfg.readout_flip_prob, rng);
  ChipResult result;
  result.state = qm.reinflate(read);
  result.energy = qm.original.energy(result.state);
  result.evals = sol.evals;
  return result;
}

}  // namespace isat
