#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "greedylab/normed_space.hpp"

namespace greedylab {

// Saturates at UINT64_MAX.
std::uint64_t binomial(int n, int k);

// Calls fn(subset) for every k-subset of pool in lexicographic order of
// positions. fn returns false to stop early. Returns false if stopped.
template <class Fn>
bool for_each_subset(const std::vector<Index>& pool, int k, Fn&& fn) {
  int n = static_cast<int>(pool.size());
  if (k < 0 || k > n) return true;
  std::vector<int> pos(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(i)] = i;
  std::vector<Index> subset(static_cast<std::size_t>(k));
  for (;;) {
    for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])];
    if (!fn(subset)) return false;
    int i = k - 1;
    while (i >= 0 && pos[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++pos[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// All subsets of pool with size in [kmin, kmax], by size then lexicographically.
std::vector<IndexSet> subsets_by_size(const std::vector<Index>& pool, int kmin, int kmax);

// k distinct elements drawn uniformly from pool (sorted).
template <class R>
std::vector<Index> sample_subset(const std::vector<Index>& pool, int k, R& rng) {
  std::vector<Index> p = pool;
  for (int i = 0; i < k; ++i) {
    auto j = static_cast<std::size_t>(i) + rng.below(p.size() - static_cast<std::size_t>(i));
    std::swap(p[static_cast<std::size_t>(i)], p[j]);
  }
  p.resize(static_cast<std::size_t>(k));
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace greedylab
