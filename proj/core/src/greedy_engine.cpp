#include "greedylab/greedy_engine.hpp"

#include <algorithm>
#include <cmath>

#include "greedylab/combinatorics.hpp"

namespace greedylab {

void check_tau(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("tau must lie in (0, 1]");
}

bool is_weak_greedy_set(const CoeffVector& x, const IndexSet& lambda, double tau, double tie_tolerance) {
  check_tau(tau);
  int n = x.ambient_dim();
  if (!lambda.empty() && lambda.max() > n) throw DomainError("weak greedy set outside ambient dimension");
  double min_in = INFINITY;
  double max_out = 0.0;
  std::size_t k = 0;
  for (Index i = 1; i <= n; ++i) {
    double v = std::abs(x[i]);
    if (k < lambda.size() && lambda[k] == i) {
      min_in = std::min(min_in, v);
      ++k;
    } else {
      max_out = std::max(max_out, v);
    }
  }
  return min_in + tie_tolerance >= tau * max_out;
}

namespace {

struct Level {
  std::vector<Index> required;
  std::vector<Index> pool;
  std::size_t eq_count = 0;  // pool members with |x_n| equal to the level
  double mu = 0.0;
  int k = 0;
};

// One level per distinct magnitude mu: Lambda = required + S with S a
// k-subset of pool meeting the members equal to mu. Every weak greedy set
// appears at exactly one level, the one of its smallest magnitude.
std::vector<Level> levels(const CoeffVector& x, int m, double tau, double tol) {
  int n = x.ambient_dim();
  std::vector<double> mags(static_cast<std::size_t>(n));
  for (Index i = 1; i <= n; ++i) mags[static_cast<std::size_t>(i - 1)] = std::abs(x[i]);
  std::vector<double> distinct = mags;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<Level> out;
  for (double mu : distinct) {
    Level lv;
    lv.mu = mu;
    std::vector<Index> eq;
    std::vector<Index> mid;
    for (Index i = 1; i <= n; ++i) {
      double v = mags[static_cast<std::size_t>(i - 1)];
      if (tau * v > mu + tol) {
        lv.required.push_back(i);
      } else if (v == mu) {
        eq.push_back(i);
      } else if (v > mu) {
        mid.push_back(i);
      }
    }
    lv.k = m - static_cast<int>(lv.required.size());
    if (lv.k < 1) continue;
    lv.pool = eq;
    lv.pool.insert(lv.pool.end(), mid.begin(), mid.end());
    std::sort(lv.pool.begin(), lv.pool.end());
    lv.eq_count = eq.size();
    if (lv.k > static_cast<int>(lv.pool.size())) continue;
    out.push_back(std::move(lv));
  }
  return out;
}

}  // namespace

std::size_t count_weak_greedy_sets(const CoeffVector& x, int m, double tau, double tie_tolerance) {
  check_tau(tau);
  if (m < 0 || m > x.ambient_dim()) throw DomainError("weak_greedy_sets: order outside [0, n]");
  if (m == 0) return 1;
  std::uint64_t total = 0;
  for (const auto& lv : levels(x, m, tau, tie_tolerance)) {
    int pool = static_cast<int>(lv.pool.size());
    int mid = pool - static_cast<int>(lv.eq_count);
    std::uint64_t add = binomial(pool, lv.k) - binomial(mid, lv.k);
    total = (UINT64_MAX - total < add) ? UINT64_MAX : total + add;
  }
  return static_cast<std::size_t>(total);
}

WeakGreedyFamily weak_greedy_sets(const CoeffVector& x, int m, double tau, const GreedyOptions& opts) {
  check_tau(tau);
  if (m < 0 || m > x.ambient_dim()) throw DomainError("weak_greedy_sets: order outside [0, n]");
  WeakGreedyFamily fam;
  fam.x = x;
  fam.m = m;
  fam.tau = tau;
  if (m == 0) {
    fam.sets.emplace_back();
    return fam;
  }
  std::vector<Index> sel;
  for (const auto& lv : levels(x, m, tau, opts.tie_tolerance)) {
    bool stop = !for_each_subset(lv.pool, lv.k, [&](const std::vector<Index>& s) {
      bool hits = std::any_of(s.begin(), s.end(), [&](Index i) { return std::abs(x[i]) == lv.mu; });
      if (!hits) return true;
      if (fam.sets.size() >= opts.cap) {
        fam.truncated = true;
        return false;
      }
      sel = lv.required;
      sel.insert(sel.end(), s.begin(), s.end());
      fam.sets.emplace_back(sel);
      return true;
    });
    if (stop) break;
  }
  std::sort(fam.sets.begin(), fam.sets.end());
  if (fam.truncated) {
    fam.warnings.push_back("weak greedy enumeration truncated at cap " + std::to_string(opts.cap) + " of " +
                           std::to_string(count_weak_greedy_sets(x, m, tau, opts.tie_tolerance)) + " sets");
  }
  return fam;
}

CoeffVector project(const CoeffVector& x, const IndexSet& a) {
  CoeffVector out(x.ambient_dim());
  for (Index n : a) {
    if (n <= x.ambient_dim()) out.set(n, x[n]);
  }
  return out;
}

CoeffVector project_complement(const CoeffVector& x, const IndexSet& a) {
  CoeffVector out = x;
  for (Index n : a) {
    if (n <= x.ambient_dim()) out.set(n, 0.0);
  }
  return out;
}

CoeffVector partial_sum(const CoeffVector& x, int m) {
  if (m < 0) throw DomainError("partial_sum: negative order");
  return project(x, IndexSet::range(1, std::min(m, x.ambient_dim())));
}

ResidualValue greedy_residual(const CoeffVector& x, int m, double tau, const NormOracle& oracle,
                              const GreedyOptions& opts) {
  WeakGreedyFamily fam = weak_greedy_sets(x, m, tau, opts);
  ResidualValue r;
  r.truncated = fam.truncated;
  r.warnings = fam.warnings;
  r.value = -1.0;
  std::vector<double> work(x.dense().begin(), x.dense().end());
  for (const auto& s : fam.sets) {
    for (Index n : s) work[static_cast<std::size_t>(n - 1)] = 0.0;
    double v = oracle.eval_dense(work);
    for (Index n : s) work[static_cast<std::size_t>(n - 1)] = x[n];
    if (v > r.value) {
      r.value = v;
      r.witness = s;
    }
  }
  return r;
}

CoeffVector truncate(const CoeffVector& x, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("truncate: alpha must be positive");
  CoeffVector out = x;
  for (Index n = 1; n <= x.ambient_dim(); ++n) {
    double v = x[n];
    if (std::abs(v) > alpha) out.set(n, std::copysign(alpha, v));
  }
  return out;
}

CoeffVector threshold(const CoeffVector& x, double eps) {
  if (!(eps > 0.0)) throw DomainError("threshold: eps must be positive");
  CoeffVector out = x;
  for (Index n = 1; n <= x.ambient_dim(); ++n) {
    if (!(std::abs(x[n]) > eps)) out.set(n, 0.0);
  }
  return out;
}

}  // namespace greedylab
