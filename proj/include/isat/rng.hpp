#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace isat {

// All randomness in the toolkit flows through mt19937_64 seeded from user
// seeds. Sampling helpers below avoid std::uniform_int_distribution so that
// identical seeds give identical streams on every standard library.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derived stream seed for repeat/cell `index` under a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

// Uniform integer in [0, n), n >= 1. Rejection sampling keeps it unbiased.
inline int rng_below(Rng& rng, int n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return static_cast<int>(v % bound);
}

// Uniform double in [0, 1).
inline double rng_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
    std::swap(v[i], v[rng_below(rng, i + 1)]);
  }
}

// k distinct indices from [0, n), uniform, in random order.
inline std::vector<int> sample_without_replacement(int n, int k, Rng& rng) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  if (k > n) k = n;
  for (int i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + rng_below(rng, n - i)]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace isat
