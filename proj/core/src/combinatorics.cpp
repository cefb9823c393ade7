#include "greedylab/combinatorics.hpp"

#include <algorithm>

namespace greedylab {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __extension__ unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<IndexSet> subsets_by_size(const std::vector<Index>& pool, int kmin, int kmax) {
  std::vector<IndexSet> out;
  for (int k = std::max(0, kmin); k <= kmax; ++k) {
    for_each_subset(pool, k, [&](const std::vector<Index>& s) {
      out.emplace_back(s);
      return true;
    });
  }
  return out;
}

}  // namespace greedylab
