#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library beyond the vector types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "greedylab/normed_space.hpp"

namespace oracle {

inline double lp(const std::vector<double>& x, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

// All subsets of {0..n-1} as bit masks with popcount k.
inline std::vector<std::uint32_t> masks(int n, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (__builtin_popcount(s) == k) out.push_back(s);
  }
  return out;
}

// Weak greedy test on 0-based masks.
inline bool weak_greedy(const std::vector<double>& x, std::uint32_t mask, double tau) {
  double in = HUGE_VAL, out = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (mask >> i & 1u) {
      in = std::min(in, std::abs(x[i]));
    } else {
      out = std::max(out, std::abs(x[i]));
    }
  }
  return mask == 0 || in >= tau * out;
}

inline std::vector<double> drop(std::vector<double> x, std::uint32_t mask) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (mask >> i & 1u) x[i] = 0.0;
  }
  return x;
}

// Worst tau-weak greedy residual of size m, for a lattice lp norm.
inline double gamma(const std::vector<double>& x, int m, double tau, double p) {
  double best = 0.0;
  for (auto s : masks(static_cast<int>(x.size()), m)) {
    if (weak_greedy(x, s, tau)) best = std::max(best, lp(drop(x, s), p));
  }
  return best;
}

// sigma_m for an lp norm: best |A| <= m projection residual (lattice norms).
inline double sigma(const std::vector<double>& x, int m, double p) {
  double best = lp(x, p);
  for (int k = 0; k <= m; ++k) {
    for (auto s : masks(static_cast<int>(x.size()), k)) best = std::min(best, lp(drop(x, s), p));
  }
  return best;
}

inline std::vector<double> dense(const greedylab::CoeffVector& x) { return {x.dense().begin(), x.dense().end()}; }

}  // namespace oracle
