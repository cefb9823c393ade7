#include "greedylab/approx_errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "greedylab/combinatorics.hpp"

namespace greedylab {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;

struct Descent {
  std::vector<double> r;
  double value = 0.0;
  int cycles = 0;
  bool converged = false;
};

// Minimizes ||r|| over the coordinates in lambda, starting from r.
Descent coordinate_descent(std::vector<double> r, const IndexSet& lambda, const NormOracle& oracle,
                           const std::vector<double>& unit_norms, const SolverOptions& opts) {
  Descent d;
  d.value = oracle.eval_dense(r);
  auto eval_at = [&](std::size_t i, double v) {
    double keep = r[i];
    r[i] = v;
    double f = oracle.eval_dense(r);
    r[i] = keep;
    return f;
  };
  for (d.cycles = 1; d.cycles <= opts.max_iters; ++d.cycles) {
    double before = d.value;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
      auto i = static_cast<std::size_t>(lambda[k] - 1);
      double f0 = eval_at(i, 0.0);
      // Any minimizer v satisfies |v| ||e_i|| - f0 <= ||r(v)|| <= f0.
      double radius = 2.0 * f0 / unit_norms[k];
      double lo = -radius;
      double hi = radius;
      double c = hi - kInvPhi * (hi - lo);
      double e = lo + kInvPhi * (hi - lo);
      double fc = eval_at(i, c);
      double fe = eval_at(i, e);
      double width_stop = 1e-13 * std::max(1.0, radius);
      while (hi - lo > width_stop) {
        if (fc <= fe) {
          hi = e;
          e = c;
          fe = fc;
          c = hi - kInvPhi * (hi - lo);
          fc = eval_at(i, c);
        } else {
          lo = c;
          c = e;
          fc = fe;
          e = lo + kInvPhi * (hi - lo);
          fe = eval_at(i, e);
        }
      }
      double best_v = r[i];
      double best_f = d.value;
      for (auto [v, f] : {std::pair{c, fc}, std::pair{e, fe}, std::pair{0.0, f0}}) {
        if (f < best_f) {
          best_f = f;
          best_v = v;
        }
      }
      r[i] = best_v;
      d.value = best_f;
    }
    if (before - d.value < opts.tol * (1.0 + d.value)) {
      d.converged = true;
      break;
    }
  }
  d.cycles = std::min(d.cycles, opts.max_iters);
  d.r = std::move(r);
  return d;
}

double residual_norm(const CoeffVector& x, const IndexSet& a, const NormOracle& oracle, std::vector<double>& work) {
  for (Index n : a) work[static_cast<std::size_t>(n - 1)] = 0.0;
  double v = oracle.eval_dense(work);
  for (Index n : a) work[static_cast<std::size_t>(n - 1)] = x[n];
  return v;
}

// Indices of the m largest magnitudes, ties broken by smaller index.
IndexSet top_magnitudes(const CoeffVector& x, int m) {
  std::vector<Index> order(static_cast<std::size_t>(x.ambient_dim()));
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return std::abs(x[a]) > std::abs(x[b]); });
  order.resize(static_cast<std::size_t>(m));
  return IndexSet(std::move(order));
}

void check_order(const CoeffVector& x, int m) {
  if (m < 0 || m > x.ambient_dim()) throw DomainError("order outside [0, n]");
}

template <class Fn>
ErrorValue min_over_supports(const CoeffVector& x, int m, const SolverOptions& opts, Fn&& value_of) {
  int n = x.ambient_dim();
  if (binomial(n, m) > opts.support_budget) {
    throw BudgetError("support enumeration C(" + std::to_string(n) + "," + std::to_string(m) +
                      ") exceeds the budget; lower the dimension or the order");
  }
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  ErrorValue best;
  best.value = INFINITY;
  for_each_subset(pool, m, [&](const std::vector<Index>& s) {
    IndexSet a(s);
    auto [v, ok] = value_of(a);
    if (v < best.value) {
      best.value = v;
      best.witness = a;
      best.converged = ok;
    }
    return true;
  });
  return best;
}

}  // namespace

bool has_closed_form(const NormOracle& oracle, const SolverOptions& opts) {
  return oracle.metadata().lattice && !opts.force_iterative;
}

BestApproxResult best_coeffs_on_support(const CoeffVector& x, const IndexSet& lambda, const NormOracle& oracle,
                                        const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw DomainError("solver tolerance must be positive");
  if (!lambda.empty() && lambda.max() > x.ambient_dim()) throw DomainError("support outside ambient dimension");
  BestApproxResult res;
  res.support = lambda;
  std::vector<double> base(x.dense().begin(), x.dense().end());
  if (lambda.empty()) {
    res.value = oracle.eval_dense(base);
    return res;
  }
  if (has_closed_form(oracle, opts)) {
    for (Index n : lambda) res.coeffs.push_back(x[n]);
    res.value = residual_norm(x, lambda, oracle, base);
    return res;
  }
  std::vector<double> unit_norms;
  for (Index n : lambda) {
    std::vector<double> e(base.size(), 0.0);
    e[static_cast<std::size_t>(n - 1)] = 1.0;
    unit_norms.push_back(oracle.eval_dense(e));
  }
  std::vector<double> from_projection = base;
  for (Index n : lambda) from_projection[static_cast<std::size_t>(n - 1)] = 0.0;
  Descent d1 = coordinate_descent(from_projection, lambda, oracle, unit_norms, opts);
  Descent d2 = coordinate_descent(base, lambda, oracle, unit_norms, opts);
  const Descent& best = d2.value < d1.value ? d2 : d1;
  res.value = best.value;
  res.solver_iterations = d1.cycles + d2.cycles;
  res.converged = best.converged;
  for (Index n : lambda) res.coeffs.push_back(x[n] - best.r[static_cast<std::size_t>(n - 1)]);
  return res;
}

ErrorValue sigma_m(const CoeffVector& x, int m, const NormOracle& oracle, const SolverOptions& opts) {
  check_order(x, m);
  if (m == 0) return {oracle(x), {}, true, false};
  const auto& meta = oracle.metadata();
  if (has_closed_form(oracle, opts)) {
    std::vector<double> work(x.dense().begin(), x.dense().end());
    if (meta.symmetric && !opts.force_enumeration) {
      IndexSet g = top_magnitudes(x, m);
      return {residual_norm(x, g, oracle, work), g, true, false};
    }
    return min_over_supports(x, m, opts, [&](const IndexSet& a) {
      return std::pair{residual_norm(x, a, oracle, work), true};
    });
  }
  // Spans over smaller supports are contained in spans over size-m supports.
  return min_over_supports(x, m, opts, [&](const IndexSet& a) {
    auto r = best_coeffs_on_support(x, a, oracle, opts);
    return std::pair{r.value, r.converged};
  });
}

ErrorValue sigma_tilde_m(const CoeffVector& x, int m, const NormOracle& oracle, const SolverOptions& opts) {
  check_order(x, m);
  if (m == 0) return {oracle(x), {}, true, false};
  std::vector<double> work(x.dense().begin(), x.dense().end());
  if (oracle.metadata().lattice && oracle.metadata().symmetric && !opts.force_enumeration) {
    IndexSet g = top_magnitudes(x, m);
    return {residual_norm(x, g, oracle, work), g, true, false};
  }
  return min_over_supports(x, m, opts, [&](const IndexSet& a) {
    return std::pair{residual_norm(x, a, oracle, work), true};
  });
}

ErrorValue sigma_hat_m(const CoeffVector& x, int m, const NormOracle& oracle) {
  if (m < 0) throw DomainError("order must be nonnegative");
  std::vector<double> work(x.dense().begin(), x.dense().end());
  ErrorValue best;
  best.value = oracle.eval_dense(work);
  int top = std::min(m, x.ambient_dim());
  for (int k = 1; k <= top; ++k) {
    work[static_cast<std::size_t>(k - 1)] = 0.0;
    double v = oracle.eval_dense(work);
    if (v < best.value) {
      best.value = v;
      best.witness = IndexSet::range(1, k);
    }
  }
  return best;
}

ErrorValue chebyshev_residual(const CoeffVector& x, int m, double tau, const NormOracle& oracle,
                              const SolverOptions& opts, const GreedyOptions& gopts) {
  WeakGreedyFamily fam = weak_greedy_sets(x, m, tau, gopts);
  ErrorValue worst;
  worst.value = -1.0;
  worst.truncated = fam.truncated;
  for (const auto& s : fam.sets) {
    auto r = best_coeffs_on_support(x, s, oracle, opts);
    worst.converged = worst.converged && r.converged;
    if (r.value > worst.value) {
      worst.value = r.value;
      worst.witness = s;
    }
  }
  return worst;
}

}  // namespace greedylab
