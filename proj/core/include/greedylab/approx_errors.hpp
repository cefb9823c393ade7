#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "greedylab/greedy_engine.hpp"
#include "greedylab/normed_space.hpp"

namespace greedylab {

struct SolverOptions {
  double tol = 1e-9;
  int max_iters = 10'000;
  // Use coordinate descent even when the oracle admits the closed form.
  bool force_iterative = false;
  // Enumerate every support even for symmetric lattice norms.
  bool force_enumeration = false;
  std::size_t support_budget = 1'000'000;
};

struct BestApproxResult {
  IndexSet support;
  std::vector<double> coeffs;
  double value = 0.0;
  int solver_iterations = 0;
  bool converged = true;
};

BestApproxResult best_coeffs_on_support(const CoeffVector& x, const IndexSet& lambda, const NormOracle& oracle,
                                        const SolverOptions& opts = {});

struct ErrorValue {
  double value = 0.0;
  // Support (sigma_m, sigma_tilde_m, chebyshev) or {1..n} for the partial
  // sum attaining sigma_hat_m.
  IndexSet witness;
  bool converged = true;
  bool truncated = false;
};

// True when best approximation on a support is x - P_Lambda x.
bool has_closed_form(const NormOracle& oracle, const SolverOptions& opts);

ErrorValue sigma_m(const CoeffVector& x, int m, const NormOracle& oracle, const SolverOptions& opts = {});
ErrorValue sigma_tilde_m(const CoeffVector& x, int m, const NormOracle& oracle, const SolverOptions& opts = {});
ErrorValue sigma_hat_m(const CoeffVector& x, int m, const NormOracle& oracle);
ErrorValue chebyshev_residual(const CoeffVector& x, int m, double tau, const NormOracle& oracle,
                              const SolverOptions& opts = {}, const GreedyOptions& gopts = {});

}  // namespace greedylab
