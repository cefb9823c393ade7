#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "greedylab/normed_space.hpp"

namespace greedylab {

struct GreedyOptions {
  std::size_t cap = 1'000'000;
  // Absolute slack: Lambda qualifies when min_Lambda |x_n| + tie_tolerance >= tau max_{not Lambda} |x_n|.
  double tie_tolerance = 0.0;
};

struct WeakGreedyFamily {
  CoeffVector x;
  int m = 0;
  double tau = 1.0;
  // Lexicographic order.
  std::vector<IndexSet> sets;
  bool truncated = false;
  std::vector<std::string> warnings;
};

void check_tau(double tau);

bool is_weak_greedy_set(const CoeffVector& x, const IndexSet& lambda, double tau, double tie_tolerance = 0.0);

// Number of size-m tau-weak greedy sets, without materializing them.
std::size_t count_weak_greedy_sets(const CoeffVector& x, int m, double tau, double tie_tolerance = 0.0);

WeakGreedyFamily weak_greedy_sets(const CoeffVector& x, int m, double tau, const GreedyOptions& opts = {});

CoeffVector project(const CoeffVector& x, const IndexSet& a);
// x - P_A x.
CoeffVector project_complement(const CoeffVector& x, const IndexSet& a);
CoeffVector partial_sum(const CoeffVector& x, int m);

struct ResidualValue {
  double value = 0.0;
  // Set achieving the value (first in lexicographic order).
  IndexSet witness;
  bool truncated = false;
  std::vector<std::string> warnings;
};

ResidualValue greedy_residual(const CoeffVector& x, int m, double tau, const NormOracle& oracle,
                              const GreedyOptions& opts = {});

CoeffVector truncate(const CoeffVector& x, double alpha);
CoeffVector threshold(const CoeffVector& x, double eps);

}  // namespace greedylab
