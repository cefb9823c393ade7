#include "greedylab/lebesgue_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "greedylab/combinatorics.hpp"
#include "greedylab/parallel.hpp"
#include "greedylab/rng.hpp"

namespace greedylab {

namespace {

constexpr const char* kNames[] = {"L", "L_tilde", "L_re", "L_hat_re", "L_ch"};

Index top_index(const CoeffVector& x, const IndexSet& extra) {
  return std::max(x.support().max(), extra.max());
}

// Copy of x in dimension dim with |x_n| <= b.
CoeffVector clamped(const CoeffVector& x, int dim, double b) {
  CoeffVector out(dim);
  for (Index n = 1; n <= std::min(dim, x.ambient_dim()); ++n) out.set(n, std::clamp(x[n], -b, b));
  return out;
}

FamilyConfig small_config(int dim, std::uint64_t seed) {
  FamilyConfig fc;
  fc.dim = dim;
  fc.grid_budget = 2'000;
  fc.random_vectors = 16;
  fc.random_signs = 64;
  fc.seed = seed;
  return fc;
}

// A tau-weak greedy set of size m for x, the lexicographically first.
std::optional<IndexSet> first_greedy_set(const CoeffVector& x, int m, double tau) {
  GreedyOptions g;
  g.cap = 1;
  auto fam = weak_greedy_sets(x, m, tau, g);
  if (fam.sets.empty()) return std::nullopt;
  return fam.sets.front();
}

}  // namespace

std::string to_string(LebesgueKind kind) { return kNames[static_cast<int>(kind)]; }

LebesgueKind lebesgue_kind_from_string(std::string_view s) {
  for (int i = 0; i < 5; ++i) {
    if (s == kNames[i]) return static_cast<LebesgueKind>(i);
  }
  throw DomainError("unknown Lebesgue kind '" + std::string(s) + "'");
}

double LebesgueRatio::ratio() const {
  return denominator > 0.0 ? numerator / denominator : std::numeric_limits<double>::quiet_NaN();
}

LebesgueRatio lebesgue_ratio(LebesgueKind kind, const CoeffVector& x, int m, double tau, const NormOracle& oracle,
                             const SolverOptions& solver, const GreedyOptions& greedy, const ApproxHint* hint) {
  check_tau(tau);
  if (m < 0 || m > x.ambient_dim()) throw DomainError("order outside [0, n]");
  LebesgueRatio r;
  if (kind == LebesgueKind::L_ch) {
    ErrorValue ch = chebyshev_residual(x, m, tau, oracle, solver, greedy);
    r.numerator = ch.value;
    r.lambda = ch.witness;
    r.converged = ch.converged;
    r.truncated = ch.truncated;
  } else {
    ResidualValue g = greedy_residual(x, m, tau, oracle, greedy);
    r.numerator = g.value;
    r.lambda = g.witness;
    r.truncated = g.truncated;
  }
  switch (kind) {
    case LebesgueKind::L:
    case LebesgueKind::L_ch: {
      ErrorValue s = sigma_m(x, m, oracle, solver);
      r.denominator = s.value;
      r.comparison = s.witness;
      r.converged = r.converged && s.converged;
      break;
    }
    case LebesgueKind::L_tilde: {
      ErrorValue s = sigma_tilde_m(x, m, oracle, solver);
      r.denominator = s.value;
      r.comparison = s.witness;
      break;
    }
    case LebesgueKind::L_re: {
      CoeffVector rest = project_complement(x, IndexSet::range(1, m));
      r.denominator = oracle(rest);
      r.comparison = IndexSet::range(1, m);
      break;
    }
    case LebesgueKind::L_hat_re: {
      ErrorValue s = sigma_hat_m(x, m, oracle);
      r.denominator = s.value;
      r.comparison = s.witness;
      break;
    }
  }
  if (hint && !hint->empty()) {
    int sz = static_cast<int>(hint->support.size());
    bool admissible = false;
    if (kind == LebesgueKind::L || kind == LebesgueKind::L_ch) admissible = sz <= m;
    if (kind == LebesgueKind::L_tilde) {
      admissible = sz == m;
      for (std::size_t i = 0; admissible && i < hint->support.size(); ++i) {
        admissible = hint->coeffs[i] == x[hint->support[i]];
      }
    }
    if (admissible) {
      double v = hint_value(x, *hint, oracle);
      if (v < r.denominator) {
        r.denominator = v;
        r.comparison = hint->support;
      }
    }
  }
  return r;
}

std::string describe(const LebesgueFamily& f) {
  std::ostringstream os;
  os << "dim=" << f.dim << ";random_vectors=" << f.random_vectors << ";seed=" << f.seed
     << ";structured=" << (f.structured ? "on" : "off") << ";extra=" << f.extra.size()
     << ";solver_tol=" << f.solver.tol;
  return os.str();
}

double inverse_tau(double tau) {
  check_tau(tau);
  double b = 1.0 / tau;
  while (tau * b > 1.0) b = std::nextafter(b, 0.0);
  return b;
}

namespace {

ApproxHint projection_hint(const CoeffVector& y, const IndexSet& s) {
  ApproxHint h;
  h.support = s;
  for (Index n : s) h.coeffs.push_back(y[n]);
  return h;
}

}  // namespace

double hint_value(const CoeffVector& x, const ApproxHint& hint, const NormOracle& oracle) {
  if (hint.coeffs.size() != hint.support.size()) throw DomainError("hint support and coefficients differ in size");
  CoeffVector r = x;
  for (std::size_t i = 0; i < hint.support.size(); ++i) r.add(hint.support[i], -hint.coeffs[i]);
  return oracle(r);
}

std::optional<Lift> z_lift(const Witness& nu, int m, double tau, int dim) {
  int a = static_cast<int>(nu.A.size());
  int bs = static_cast<int>(nu.B.size());
  if (a > m || bs > a) return std::nullopt;
  Index top = std::max({nu.x.support().max(), nu.A.max(), nu.B.max()});
  if (top + (m - a) + (a - bs) > dim) return std::nullopt;
  double b = inverse_tau(tau);
  Lift out;
  out.y = clamped(nu.x, dim, b);
  IndexSet C = IndexSet::range(top + 1, top + (m - a));
  IndexSet D = IndexSet::range(top + (m - a) + 1, top + m - bs);
  for (std::size_t i = 0; i < nu.A.size(); ++i) out.y.set(nu.A[i], nu.eps.signs()[i]);
  for (std::size_t i = 0; i < nu.B.size(); ++i) out.y.set(nu.B[i], b * nu.delta.signs()[i]);
  for (Index n : C) out.y.set(n, 1.0);
  out.greedy = set_union(nu.A, C);
  out.order = m;
  out.hint = projection_hint(out.y, set_union(set_union(nu.B, C), D));
  return out;
}

std::optional<Lift> y_lift(const Witness& w, double tau, int dim) {
  Index top = std::max({w.x.support().max(), w.A.max(), w.B.max()});
  if (top > dim) return std::nullopt;
  int m1 = w.B.max();
  int need = std::max(0, m1 - static_cast<int>(w.A.size()));
  std::vector<Index> d;
  for (Index n = 1; n <= m1 && static_cast<int>(d.size()) < need; ++n) {
    if (!w.B.contains(n)) d.push_back(n);
  }
  if (static_cast<int>(d.size()) < need) return std::nullopt;
  IndexSet D(std::move(d));
  double b = inverse_tau(tau);
  Lift out;
  out.y = clamped(w.x, dim, b);
  for (std::size_t i = 0; i < w.B.size(); ++i) out.y.set(w.B[i], b * w.delta.signs()[i]);
  for (Index n : D) out.y.set(n, 1.0);
  for (std::size_t i = 0; i < w.A.size(); ++i) out.y.set(w.A[i], w.eps.signs()[i]);
  out.greedy = set_union(D, w.A);
  out.order = static_cast<int>(out.greedy.size());
  out.prefix = m1;
  out.hint = projection_hint(out.y, IndexSet::range(1, m1));
  return out;
}

std::optional<Lift> kc_lift(const CoeffVector& x, const IndexSet& A, int m, int dim) {
  int a = static_cast<int>(A.size());
  if (a > m) return std::nullopt;
  Index top = top_index(x, A);
  if (top + (m - a) > dim) return std::nullopt;
  double M = sup_norm(x) + 1.0;
  Lift out;
  out.y = clamped(x, dim, INFINITY);
  IndexSet C = IndexSet::range(top + 1, top + (m - a));
  for (Index n : A) out.y.set(n, M);
  for (Index n : C) out.y.set(n, M);
  out.greedy = set_union(A, C);
  out.order = m;
  out.hint.support = out.greedy;
  for (Index n : out.greedy) out.hint.coeffs.push_back(A.contains(n) ? M - x[n] : M);
  return out;
}

std::optional<Lift> gc_lift(const CoeffVector& x, const IndexSet& lambda, int m, double tau, int dim) {
  int k = static_cast<int>(lambda.size());
  if (k > m) return std::nullopt;
  Index top = top_index(x, lambda);
  if (top + m > dim) return std::nullopt;
  double alpha = INFINITY;
  for (Index n : lambda) alpha = std::min(alpha, std::abs(x[n]));
  if (lambda.empty()) alpha = sup_norm(x) / tau;
  Lift out;
  out.y = clamped(x, dim, INFINITY);
  IndexSet C = IndexSet::range(top + 1, top + (m - k));
  IndexSet D = IndexSet::range(top + (m - k) + 1, top + m);
  for (Index n : C) out.y.set(n, alpha);
  out.greedy = set_union(lambda, C);
  out.order = m;
  if (!is_weak_greedy_set(out.y, out.greedy, tau)) return std::nullopt;
  out.hint = projection_hint(out.y, set_union(C, D));
  return out;
}

std::optional<Lift> gc_left_lift(const CoeffVector& x, const IndexSet& lambda, int m, double tau, int dim) {
  int k = static_cast<int>(lambda.size());
  if (k > m) return std::nullopt;
  int shift = m - k;
  if (top_index(x, lambda) + shift > dim) return std::nullopt;
  double alpha = INFINITY;
  for (Index n : lambda) alpha = std::min(alpha, std::abs(x[n]));
  if (lambda.empty()) alpha = sup_norm(x) / tau;
  Lift out;
  out.y = CoeffVector(dim);
  for (Index n : x.support()) out.y.set(n + shift, x[n]);
  std::vector<Index> g;
  for (Index n = 1; n <= shift; ++n) {
    out.y.set(n, alpha);
    g.push_back(n);
  }
  for (Index n : lambda) g.push_back(n + shift);
  out.greedy = IndexSet(std::move(g));
  out.order = m;
  if (!is_weak_greedy_set(out.y, out.greedy, tau)) return std::nullopt;
  out.prefix = shift;
  out.hint = projection_hint(out.y, IndexSet::range(1, shift));
  return out;
}

double lift_ratio(const Lift& lift, const NormOracle& oracle) {
  double den = hint_value(lift.y, lift.hint, oracle);
  double num = oracle(project_complement(lift.y, lift.greedy));
  return den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
}

std::optional<ChebyshevLift> chebyshev_lift(const CoeffVector& x, const IndexSet& A, int m, int dim) {
  if (A.empty()) return std::nullopt;
  Index top = top_index(x, A);
  if (top + m > dim) return std::nullopt;
  ChebyshevLift out;
  out.alpha = INFINITY;
  for (Index n : A) out.alpha = std::min(out.alpha, std::abs(x[n]));
  out.D = IndexSet::range(top + 1, top + m);
  out.z = clamped(x, dim, INFINITY);
  for (Index n : out.D) out.z.set(n, out.alpha);
  out.y = out.z;
  for (Index n : A) out.y.set(n, 0.0);
  return out;
}

std::vector<NamedVector> random_family(int dim, int count, double tau, std::uint64_t seed) {
  std::vector<NamedVector> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  Rng rng(seed);
  std::vector<Index> pool;
  for (Index n = 1; n <= dim; ++n) pool.push_back(n);
  const double levels[] = {1.0, tau, tau * tau, 0.5, inverse_tau(tau)};
  double b = inverse_tau(tau);
  for (int i = 0; i < count; ++i) {
    CoeffVector x(dim);
    int s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
    auto sup = sample_subset(pool, s, rng);
    switch (i % 3) {
      case 0:
        for (Index n : sup) x.set(n, rng.uniform(-1.0, 1.0));
        out.push_back({"random:uniform", std::move(x), {}});
        break;
      case 1:
        for (Index n : sup) x.set(n, rng.sign() * levels[rng.below(std::size(levels))]);
        out.push_back({"random:ties", std::move(x), {}});
        break;
      default:
        // Flat part at 1, spikes just below 1/tau, small noise elsewhere.
        for (Index n : sup) {
          auto role = rng.below(3);
          double v = role == 0 ? 1.0 : role == 1 ? b : 0.5 * rng.uniform01();
          x.set(n, rng.sign() * v);
        }
        out.push_back({"random:flat_spike", std::move(x), {}});
        break;
    }
  }
  return out;
}

std::vector<NamedVector> structured_family(LebesgueKind kind, int m, double tau, const NormOracle& oracle, int dim,
                                           std::uint64_t seed) {
  std::vector<NamedVector> out;
  if (m <= 0 || m > dim) return out;
  auto push_z = [&](const Witness& w, const char* name) {
    if (auto z = z_lift(w, m, tau, dim)) out.push_back({name, z->y, z->hint});
  };
  auto push_y = [&](const Witness& w, const char* name) {
    if (auto y = y_lift(w, tau, dim)) out.push_back({name, y->y, y->hint});
  };
  // Flat configurations with x = 0 in both orders.
  for (int a = 1; a <= m; ++a) {
    for (int bsz = 0; bsz <= a; ++bsz) {
      Witness right{CoeffVector(dim), IndexSet::range(1, a), IndexSet::range(a + 1, a + bsz), {}, {}, 1.0, 0};
      right.eps = SignPattern::all_plus(right.A);
      right.delta = SignPattern::all_plus(right.B);
      Witness left{CoeffVector(dim), IndexSet::range(bsz + 1, bsz + a), IndexSet::range(1, bsz), {}, {}, 1.0, 0};
      left.eps = SignPattern::all_plus(left.A);
      left.delta = SignPattern::all_plus(left.B);
      if (kind == LebesgueKind::L_re || kind == LebesgueKind::L_hat_re) {
        push_y(left, "structured:flat_y");
      } else {
        push_z(right, "structured:flat_z");
        push_z(left, "structured:flat_z");
      }
    }
  }
  int lifted_dim = std::max(1, dim - m);
  switch (kind) {
    case LebesgueKind::L:
    case LebesgueKind::L_tilde:
    case LebesgueKind::L_ch: {
      auto nu = estimate_nu(m, tau, oracle, small_config(lifted_dim, derive_seed(seed, 1)));
      if (nu.has_witness) push_z(nu.witness, "structured:nu_z");
      break;
    }
    case LebesgueKind::L_re:
    case LebesgueKind::L_hat_re: {
      auto nu = estimate_nu_left_prime(m, tau, oracle, small_config(dim, derive_seed(seed, 2)));
      if (nu.has_witness) push_y(nu.witness, "structured:nu_prime_y");
      auto nul = estimate_nu_left(m, tau, oracle, small_config(dim, derive_seed(seed, 3)));
      if (nul.has_witness) push_y(nul.witness, "structured:nu_left_y");
      break;
    }
  }
  if (kind == LebesgueKind::L) {
    auto kc = estimate_k_c(m, oracle, small_config(lifted_dim, derive_seed(seed, 4)));
    if (kc.has_witness) {
      if (auto y = kc_lift(kc.witness.x, kc.witness.A, m, dim)) out.push_back({"structured:kc_lift", y->y, y->hint});
    }
  }
  if (kind != LebesgueKind::L_ch) {
    auto gc = estimate_g_c(m, tau, oracle, small_config(lifted_dim, derive_seed(seed, 5)));
    if (gc.has_witness) {
      if (auto y = gc_lift(gc.witness.x, gc.witness.A, m, tau, dim)) out.push_back({"structured:gc_lift", y->y, y->hint});
      if (auto y = gc_left_lift(gc.witness.x, gc.witness.A, m, tau, dim)) {
        out.push_back({"structured:gc_left_lift", y->y, y->hint});
      }
    }
  } else {
    auto base = random_family(lifted_dim, 24, tau, derive_seed(seed, 6));
    for (const auto& nv : base) {
      auto A = first_greedy_set(nv.x, m, tau);
      if (!A) continue;
      if (auto c = chebyshev_lift(nv.x, *A, m, dim)) {
        out.push_back({"structured:chebyshev_y", c->y, {}});
        out.push_back({"structured:chebyshev_z", c->z, {}});
      }
    }
  }
  return out;
}

LebesgueEstimate estimate_lebesgue(LebesgueKind kind, int m, double tau, const NormOracle& oracle,
                                   const LebesgueFamily& f) {
  check_tau(tau);
  if (m < 0 || m > f.dim) throw DomainError("order outside [0, dim]");
  std::vector<NamedVector> cands;
  if (f.structured) cands = structured_family(kind, m, tau, oracle, f.dim, derive_seed(f.seed, 0x57));
  for (const auto& e : f.extra) cands.push_back(e);
  // Random vectors do not depend on kind, m or tau, so families are matched.
  auto rnd = random_family(f.dim, f.random_vectors, tau, derive_seed(f.seed, 0x7261));
  cands.insert(cands.end(), std::make_move_iterator(rnd.begin()), std::make_move_iterator(rnd.end()));

  struct Part {
    bool found = false;
    double best = 0.0;
    LebesgueWitness w;
    std::size_t candidates = 0, skipped = 0, nonconverged = 0;
    bool truncated = false;
    std::vector<double> ratios;
  };
  std::size_t chunks = std::min<std::size_t>(cands.size(), 64);
  auto parts = parallel_map<Part>(chunks, [&](std::size_t c) {
    Part p;
    std::size_t lo = cands.size() * c / chunks;
    std::size_t hi = cands.size() * (c + 1) / chunks;
    for (std::size_t i = lo; i < hi; ++i) {
      ++p.candidates;
      CoeffVector x = cands[i].x;
      if (x.ambient_dim() > f.dim) {
        ++p.skipped;
        continue;
      }
      x = x.resized(f.dim);
      bool needs_tail = kind == LebesgueKind::L || kind == LebesgueKind::L_tilde || kind == LebesgueKind::L_ch;
      if (x.is_zero() || (needs_tail && static_cast<int>(x.support().size()) <= m)) {
        ++p.skipped;
        continue;
      }
      const ApproxHint& hint = cands[i].hint;
      LebesgueRatio r = lebesgue_ratio(kind, x, m, tau, oracle, f.solver, f.greedy, &hint);
      p.truncated = p.truncated || r.truncated;
      double q = r.ratio();
      if (!std::isfinite(q) || r.numerator < 0.0) {
        ++p.skipped;
        continue;
      }
      if (!r.converged) {
        ++p.nonconverged;
        if (kind == LebesgueKind::L_ch) continue;
      }
      if (f.keep_ratios) p.ratios.push_back(q);
      if (!p.found || q > p.best) {
        p.found = true;
        p.best = q;
        p.w = LebesgueWitness{std::move(x), cands[i].generator, hint, r.lambda, r.comparison, r.numerator, r.denominator};
      }
    }
    return p;
  });

  LebesgueEstimate e;
  e.kind = kind;
  e.m = m;
  e.tau = tau;
  e.seed = f.seed;
  e.family = describe(f);
  for (auto& p : parts) {
    e.candidates += p.candidates;
    e.skipped += p.skipped;
    e.nonconverged += p.nonconverged;
    e.truncated = e.truncated || p.truncated;
    e.ratios.insert(e.ratios.end(), p.ratios.begin(), p.ratios.end());
    if (p.found && (!e.has_witness || p.best > e.lower_bound)) {
      e.has_witness = true;
      e.lower_bound = p.best;
      e.witness = std::move(p.w);
    }
  }
  if (e.nonconverged) e.warnings.push_back(std::to_string(e.nonconverged) + " candidates with non-converged solver");
  if (e.truncated) e.warnings.push_back("weak greedy enumeration truncated");
  return e;
}

LebesgueEstimate estimate_L(int m, double tau, const NormOracle& o, const LebesgueFamily& f) {
  return estimate_lebesgue(LebesgueKind::L, m, tau, o, f);
}
LebesgueEstimate estimate_L_tilde(int m, double tau, const NormOracle& o, const LebesgueFamily& f) {
  return estimate_lebesgue(LebesgueKind::L_tilde, m, tau, o, f);
}
LebesgueEstimate estimate_L_re(int m, double tau, const NormOracle& o, const LebesgueFamily& f) {
  return estimate_lebesgue(LebesgueKind::L_re, m, tau, o, f);
}
LebesgueEstimate estimate_L_hat_re(int m, double tau, const NormOracle& o, const LebesgueFamily& f) {
  return estimate_lebesgue(LebesgueKind::L_hat_re, m, tau, o, f);
}
LebesgueEstimate estimate_L_ch(int m, double tau, const NormOracle& o, const LebesgueFamily& f) {
  return estimate_lebesgue(LebesgueKind::L_ch, m, tau, o, f);
}

}  // namespace greedylab
