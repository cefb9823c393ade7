#include "greedylab/constants_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "greedylab/combinatorics.hpp"
#include "greedylab/parallel.hpp"
#include "greedylab/rng.hpp"

namespace greedylab {

namespace {

constexpr const char* kKindNames[] = {"nu",  "nu_left", "nu_left_prime", "omega", "omega_left", "omega_left_prime",
                                      "k",   "k_c",     "g",             "g_c",   "mu",         "psi",
                                      "fundamental"};

bool is_nu(ConstantKind k) {
  return k == ConstantKind::nu || k == ConstantKind::nu_left || k == ConstantKind::nu_left_prime;
}
bool is_omega(ConstantKind k) {
  return k == ConstantKind::omega || k == ConstantKind::omega_left || k == ConstantKind::omega_left_prime;
}

using Dense = std::vector<double>;

Dense dense_of(const CoeffVector& x, int dim) {
  Dense d(static_cast<std::size_t>(dim), 0.0);
  auto src = x.dense();
  for (std::size_t i = 0; i < src.size() && i < d.size(); ++i) d[i] = src[i];
  return d;
}

int witness_dim(const Witness& w) {
  return std::max({w.x.ambient_dim(), static_cast<int>(w.A.max()), static_cast<int>(w.B.max())});
}

void put(Dense& d, const IndexSet& s, const SignPattern& signs, double scale) {
  for (std::size_t i = 0; i < s.size(); ++i) d[static_cast<std::size_t>(s[i] - 1)] += scale * signs.signs()[i];
}

struct SignBest {
  double value = 0.0;
  std::uint64_t mask = 0;
};

// Optimizes ||buf + scale * 1_{sign S}|| over sign masks. The coordinates of
// S in buf must be zero; they are restored to zero on return.
SignBest search_signs(Dense& buf, const IndexSet& s, double scale, bool maximize, bool full, int random_count,
                      Rng& rng, const NormOracle& oracle) {
  SignBest best;
  best.value = maximize ? -1.0 : INFINITY;
  auto try_mask = [&](std::uint64_t mask) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      buf[static_cast<std::size_t>(s[i] - 1)] = ((mask >> i) & 1U) ? -scale : scale;
    }
    double v = oracle.eval_dense(buf);
    if (maximize ? v > best.value : v < best.value) {
      best.value = v;
      best.mask = mask;
    }
  };
  if (full) {
    std::uint64_t count = 1ULL << s.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) try_mask(mask);
  } else {
    try_mask(0);
    std::uint64_t span = s.size() >= 64 ? UINT64_MAX : (1ULL << s.size()) - 1;
    for (int r = 1; r < random_count; ++r) try_mask(rng.next() & span);
  }
  for (Index n : s) buf[static_cast<std::size_t>(n - 1)] = 0.0;
  return best;
}

std::vector<Index> iota_pool(int lo, int hi) {
  std::vector<Index> p;
  for (int i = lo; i <= hi; ++i) p.push_back(i);
  return p;
}

std::vector<Index> minus(const std::vector<Index>& pool, const IndexSet& s) {
  std::vector<Index> out;
  for (Index i : pool) {
    if (!s.contains(i)) out.push_back(i);
  }
  return out;
}

// Vectors supported on `free` with sup norm at most `scale`.
std::vector<Dense> free_candidates(const std::vector<Index>& free, int dim, double scale, const FamilyConfig& f,
                                   std::uint64_t seed, std::size_t* grid_sampled = nullptr) {
  std::vector<Dense> out;
  out.emplace_back(static_cast<std::size_t>(dim), 0.0);
  if (free.empty()) return out;
  Rng rng(seed);
  std::vector<double> values;
  for (double l : f.grid_levels) {
    values.push_back(l * scale);
    values.push_back(-l * scale);
  }
  int smax = std::min<int>(f.grid_support_max, static_cast<int>(free.size()));
  std::uint64_t grid_count = 0;
  for (int s = 1; s <= smax; ++s) {
    std::uint64_t c = binomial(static_cast<int>(free.size()), s);
    std::uint64_t v = 1;
    for (int i = 0; i < s; ++i) v *= values.size();
    grid_count += c * v;
  }
  if (!values.empty() && grid_count <= f.grid_budget) {
    for (int s = 1; s <= smax; ++s) {
      for_each_subset(free, s, [&](const std::vector<Index>& sup) {
        std::vector<std::size_t> digit(static_cast<std::size_t>(s), 0);
        for (;;) {
          Dense d(static_cast<std::size_t>(dim), 0.0);
          for (int i = 0; i < s; ++i) d[static_cast<std::size_t>(sup[static_cast<std::size_t>(i)] - 1)] = values[digit[static_cast<std::size_t>(i)]];
          out.push_back(std::move(d));
          int i = 0;
          while (i < s && ++digit[static_cast<std::size_t>(i)] == values.size()) digit[static_cast<std::size_t>(i++)] = 0;
          if (i == s) break;
        }
        return true;
      });
    }
  } else if (!values.empty()) {
    if (grid_sampled) *grid_sampled += 1;
    for (std::size_t t = 0; t < f.grid_budget; ++t) {
      int s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(smax)));
      auto sup = sample_subset(free, s, rng);
      Dense d(static_cast<std::size_t>(dim), 0.0);
      for (Index i : sup) d[static_cast<std::size_t>(i - 1)] = values[rng.below(values.size())];
      out.push_back(std::move(d));
    }
  }
  for (int r = 0; r < f.random_vectors; ++r) {
    int s = 1 + static_cast<int>(rng.below(free.size()));
    auto sup = sample_subset(free, s, rng);
    Dense d(static_cast<std::size_t>(dim), 0.0);
    double mx = 0.0;
    for (Index i : sup) {
      double v = rng.uniform(-1.0, 1.0);
      d[static_cast<std::size_t>(i - 1)] = v;
      mx = std::max(mx, std::abs(v));
    }
    if (mx == 0.0) continue;
    for (double& v : d) v *= scale / mx;
    out.push_back(std::move(d));
  }
  for (const auto& sv : f.structured) {
    Dense d(static_cast<std::size_t>(dim), 0.0);
    double mx = 0.0;
    for (Index i : free) {
      if (i <= sv.ambient_dim()) {
        d[static_cast<std::size_t>(i - 1)] = sv[i];
        mx = std::max(mx, std::abs(sv[i]));
      }
    }
    if (mx == 0.0) continue;
    if (mx > scale) {
      for (double& v : d) v *= scale / mx;
      // Rounding may leave an entry a hair above the bound.
      for (double& v : d) v = std::clamp(v, -scale, scale);
    }
    out.push_back(std::move(d));
  }
  return out;
}

struct Best {
  double ratio = -INFINITY;
  Witness w;
  bool found = false;
  std::size_t candidates = 0;
  std::size_t skipped = 0;
  std::size_t grid_sampled = 0;
  bool signs_sampled = false;
  bool truncated = false;
};

void absorb(Best& into, Best&& from) {
  into.candidates += from.candidates;
  into.skipped += from.skipped;
  into.grid_sampled += from.grid_sampled;
  into.signs_sampled = into.signs_sampled || from.signs_sampled;
  into.truncated = into.truncated || from.truncated;
  if (from.found && (!into.found || from.ratio > into.ratio)) {
    into.ratio = from.ratio;
    into.w = std::move(from.w);
    into.found = true;
  }
}

struct Combo {
  IndexSet A;
  IndexSet B;
  std::vector<Index> free;
};

std::vector<Combo> structural_combos(ConstantKind kind, int m, int n) {
  std::vector<Combo> out;
  auto all = iota_pool(1, n);
  int top = std::min(m, n);
  for (int a = 0; a <= top; ++a) {
    switch (kind) {
      case ConstantKind::nu:
      case ConstantKind::omega: {
        for (const auto& A : subsets_by_size(all, a, a)) {
          auto rest = minus(all, A);
          int bmin = kind == ConstantKind::omega ? a : 0;
          for (const auto& B : subsets_by_size(rest, bmin, a)) {
            auto free = kind == ConstantKind::nu ? minus(rest, B) : rest;
            out.push_back({A, B, free});
          }
        }
        break;
      }
      case ConstantKind::nu_left:
      case ConstantKind::omega_left: {
        for (const auto& A : subsets_by_size(all, a, a)) {
          auto rest = minus(all, A);
          auto before = iota_pool(1, a == 0 ? n : A.min() - 1);
          for (const auto& B : subsets_by_size(a == 0 ? std::vector<Index>{} : before, a, a)) {
            auto free = kind == ConstantKind::nu_left ? minus(rest, B) : rest;
            out.push_back({A, B, free});
          }
        }
        break;
      }
      case ConstantKind::nu_left_prime:
      case ConstantKind::omega_left_prime: {
        auto bpool = iota_pool(1, std::min(m, n));
        for (int b = 0; b <= a; ++b) {
          for (const auto& B : subsets_by_size(bpool, b, b)) {
            auto after = iota_pool(static_cast<int>(B.max()) + 1, n);
            for (const auto& A : subsets_by_size(after, a, a)) {
              auto free = minus(after, A);
              if (kind == ConstantKind::omega_left_prime) {
                free.insert(free.begin(), B.begin(), B.end());
              }
              out.push_back({A, B, free});
            }
          }
        }
        break;
      }
      default:
        throw DomainError("structural_combos: unsupported kind");
    }
  }
  return out;
}

void check_common(int m, double tau) {
  if (m < 0) throw DomainError("order must be nonnegative");
  check_tau(tau);
}

ConstantEstimate finish(ConstantKind kind, int m, std::optional<double> tau, const NormOracle& oracle,
                        const FamilyConfig& f, Best&& best) {
  ConstantEstimate e;
  e.kind = kind;
  e.m = m;
  e.tau = tau;
  e.family = describe(f);
  e.seed = f.seed;
  e.candidates = best.candidates;
  e.skipped = best.skipped;
  e.truncated = best.truncated;
  if (best.found) {
    e.has_witness = true;
    e.witness = std::move(best.w);
    // Report exactly what the witness reproduces.
    e.lower_bound = constant_ratio(kind, e.witness, oracle, tau.value_or(1.0));
  }
  if (best.grid_sampled) {
    e.warnings.push_back("magnitude grid sampled in " + std::to_string(best.grid_sampled) +
                         " configurations (grid budget " + std::to_string(f.grid_budget) + ")");
  }
  if (best.signs_sampled) e.warnings.push_back("sign patterns sampled beyond the sign budget");
  if (best.truncated) e.warnings.push_back("weak greedy enumeration truncated");
  std::string note;
  e.analytic_upper = analytic_upper(kind, m, tau.value_or(1.0), oracle, &note);
  e.analytic_note = note;
  return e;
}

ConstantEstimate estimate_positional(ConstantKind kind, int m, double tau, const NormOracle& oracle,
                                     const FamilyConfig& f) {
  check_common(m, tau);
  int n = f.dim;
  auto combos = structural_combos(kind, m, n);
  bool nu_kind = is_nu(kind);
  double scale = 1.0 / tau;
  auto shard = [&](std::size_t ci) {
    const Combo& c = combos[ci];
    Best best;
    std::uint64_t seed = derive_seed(f.seed, static_cast<std::uint64_t>(kind), ci);
    auto cands = free_candidates(c.free, n, scale, f, seed, &best.grid_sampled);
    Rng sign_rng(derive_seed(seed, 0x5167));
    bool full = static_cast<int>(c.A.size() + c.B.size()) <= f.sign_budget;
    best.signs_sampled = !full;
    Dense buf(static_cast<std::size_t>(n));
    for (const auto& x : cands) {
      ++best.candidates;
      double num;
      std::uint64_t delta_mask = 0;
      if (nu_kind) {
        for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = tau * x[i];
        SignBest nb = search_signs(buf, c.B, 1.0, true, full, f.random_signs, sign_rng, oracle);
        num = nb.value;
        delta_mask = nb.mask;
        buf = x;
      } else {
        num = oracle.eval_dense(x);
        buf = x;
        for (Index i : c.B) buf[static_cast<std::size_t>(i - 1)] = 0.0;
      }
      SignBest db = search_signs(buf, c.A, 1.0, false, full, f.random_signs, sign_rng, oracle);
      if (!(db.value > 0.0)) {
        ++best.skipped;
        continue;
      }
      double ratio = num / db.value;
      if (!best.found || ratio > best.ratio) {
        best.found = true;
        best.ratio = ratio;
        best.w = Witness{CoeffVector::from_dense(x), c.A, c.B, SignPattern(c.A, db.mask),
                         nu_kind ? SignPattern(c.B, delta_mask) : SignPattern(), 1.0, 0};
      }
    }
    return best;
  };
  auto parts = parallel_map<Best>(combos.size(), shard);
  Best total;
  for (auto& p : parts) absorb(total, std::move(p));
  return finish(kind, m, tau, oracle, f, std::move(total));
}

std::vector<Dense> full_candidates(const FamilyConfig& f, std::uint64_t salt) {
  auto cands = free_candidates(iota_pool(1, f.dim), f.dim, 1.0, f, derive_seed(f.seed, salt));
  cands.erase(cands.begin());  // zero vector
  return cands;
}

template <class PerVector>
Best scan_vectors(const std::vector<Dense>& cands, PerVector&& per_vector) {
  std::size_t chunks = std::min<std::size_t>(cands.size(), 64);
  auto parts = parallel_map<Best>(chunks, [&](std::size_t c) {
    Best best;
    std::size_t lo = cands.size() * c / chunks;
    std::size_t hi = cands.size() * (c + 1) / chunks;
    for (std::size_t i = lo; i < hi; ++i) per_vector(cands[i], best);
    return best;
  });
  Best total;
  for (auto& p : parts) absorb(total, std::move(p));
  return total;
}

ConstantEstimate estimate_unconditional(ConstantKind kind, int m, const NormOracle& oracle, const FamilyConfig& f) {
  if (m < 0) throw DomainError("order must be nonnegative");
  auto cands = full_candidates(f, static_cast<std::uint64_t>(kind));
  auto sets = subsets_by_size(iota_pool(1, f.dim), 0, std::min(m, f.dim));
  bool complement = kind == ConstantKind::k_c;
  Best total = scan_vectors(cands, [&](const Dense& x, Best& best) {
    ++best.candidates;
    double nx = oracle.eval_dense(x);
    Dense buf(x.size());
    for (const auto& a : sets) {
      if (complement) {
        buf = x;
        for (Index i : a) buf[static_cast<std::size_t>(i - 1)] = 0.0;
      } else {
        std::fill(buf.begin(), buf.end(), 0.0);
        for (Index i : a) buf[static_cast<std::size_t>(i - 1)] = x[static_cast<std::size_t>(i - 1)];
      }
      double ratio = oracle.eval_dense(buf) / nx;
      if (!best.found || ratio > best.ratio) {
        best.found = true;
        best.ratio = ratio;
        best.w = Witness{CoeffVector::from_dense(x), a, {}, {}, {}, 1.0, static_cast<int>(a.size())};
      }
    }
  });
  return finish(kind, m, std::nullopt, oracle, f, std::move(total));
}

ConstantEstimate estimate_quasi_greedy(ConstantKind kind, int m, double tau, const NormOracle& oracle,
                                       const FamilyConfig& f) {
  check_common(m, tau);
  auto cands = full_candidates(f, static_cast<std::uint64_t>(kind));
  bool complement = kind == ConstantKind::g_c;
  Best total = scan_vectors(cands, [&](const Dense& xd, Best& best) {
    ++best.candidates;
    CoeffVector x = CoeffVector::from_dense(xd);
    double nx = oracle.eval_dense(xd);
    Dense buf(xd.size());
    for (int k = 0; k <= std::min(m, f.dim); ++k) {
      auto fam = weak_greedy_sets(x, k, tau, f.greedy);
      best.truncated = best.truncated || fam.truncated;
      for (const auto& a : fam.sets) {
        if (complement) {
          buf = xd;
          for (Index i : a) buf[static_cast<std::size_t>(i - 1)] = 0.0;
        } else {
          std::fill(buf.begin(), buf.end(), 0.0);
          for (Index i : a) buf[static_cast<std::size_t>(i - 1)] = xd[static_cast<std::size_t>(i - 1)];
        }
        double ratio = oracle.eval_dense(buf) / nx;
        if (!best.found || ratio > best.ratio) {
          best.found = true;
          best.ratio = ratio;
          best.w = Witness{x, a, {}, {}, {}, 1.0, k};
        }
      }
    }
  });
  return finish(kind, m, tau, oracle, f, std::move(total));
}

struct SetNorms {
  IndexSet s;
  SignBest hi;
  SignBest lo;
};

std::vector<SetNorms> indicator_norms(int k, const NormOracle& oracle, const FamilyConfig& f, bool& sampled) {
  std::vector<SetNorms> out;
  Rng rng(derive_seed(f.seed, 0x1d1c, static_cast<std::uint64_t>(k)));
  bool full = 2 * k <= f.sign_budget;
  sampled = sampled || !full;
  Dense buf(static_cast<std::size_t>(f.dim), 0.0);
  for (const auto& s : subsets_by_size(iota_pool(1, f.dim), k, k)) {
    SetNorms sn{s, search_signs(buf, s, 1.0, true, full, f.random_signs, rng, oracle),
                search_signs(buf, s, 1.0, false, full, f.random_signs, rng, oracle)};
    out.push_back(sn);
  }
  return out;
}

ConstantEstimate estimate_democracy(ConstantKind kind, int m, const NormOracle& oracle, const FamilyConfig& f) {
  if (m < 1) throw DomainError("mu and psi are defined for m >= 1");
  Best best;
  bool sampled = false;
  for (int k = 1; k <= std::min(m, f.dim); ++k) {
    auto norms = indicator_norms(k, oracle, f, sampled);
    for (const auto& a : norms) {
      for (const auto& b : norms) {
        if (kind == ConstantKind::psi && !(b.s.max() < a.s.min())) continue;
        ++best.candidates;
        double ratio = b.hi.value / a.lo.value;
        if (!best.found || ratio > best.ratio) {
          best.found = true;
          best.ratio = ratio;
          best.w = Witness{CoeffVector(f.dim), a.s, b.s, SignPattern(a.s, a.lo.mask), SignPattern(b.s, b.hi.mask),
                           1.0, k};
        }
      }
    }
  }
  best.signs_sampled = sampled;
  auto e = finish(kind, m, std::nullopt, oracle, f, std::move(best));
  e.exhaustive = !sampled;
  return e;
}

}  // namespace

std::string to_string(ConstantKind kind) { return kKindNames[static_cast<int>(kind)]; }

ConstantKind constant_kind_from_string(std::string_view s) {
  for (int i = 0; i < static_cast<int>(std::size(kKindNames)); ++i) {
    if (s == kKindNames[i]) return static_cast<ConstantKind>(i);
  }
  throw DomainError("unknown constant kind '" + std::string(s) + "'");
}

std::string describe(const FamilyConfig& f) {
  std::ostringstream os;
  os << "dim=" << f.dim << ";grid_support_max=" << f.grid_support_max << ";grid_levels=";
  for (std::size_t i = 0; i < f.grid_levels.size(); ++i) os << (i ? "," : "") << f.grid_levels[i];
  os << ";grid_budget=" << f.grid_budget << ";random_vectors=" << f.random_vectors << ";seed=" << f.seed
     << ";sign_budget=" << f.sign_budget << ";random_signs=" << f.random_signs
     << ";structured=" << f.structured.size();
  return os.str();
}

double constant_ratio(ConstantKind kind, const Witness& w, const NormOracle& oracle, double tau) {
  int dim = witness_dim(w);
  Dense x = dense_of(w.x, dim);
  auto ratio = [](double num, double den) { return den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN(); };
  if (is_nu(kind)) {
    Dense num(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) num[i] = tau * x[i];
    put(num, w.B, w.delta, 1.0);
    Dense den = x;
    put(den, w.A, w.eps, 1.0);
    return ratio(oracle.eval_dense(num), oracle.eval_dense(den));
  }
  if (is_omega(kind)) {
    Dense den = x;
    for (Index i : w.B) den[static_cast<std::size_t>(i - 1)] = 0.0;
    put(den, w.A, w.eps, w.t);
    return ratio(oracle.eval_dense(x), oracle.eval_dense(den));
  }
  switch (kind) {
    case ConstantKind::k:
    case ConstantKind::g: {
      Dense p(x.size(), 0.0);
      for (Index i : w.A) p[static_cast<std::size_t>(i - 1)] = x[static_cast<std::size_t>(i - 1)];
      return ratio(oracle.eval_dense(p), oracle.eval_dense(x));
    }
    case ConstantKind::k_c:
    case ConstantKind::g_c: {
      Dense p = x;
      for (Index i : w.A) p[static_cast<std::size_t>(i - 1)] = 0.0;
      return ratio(oracle.eval_dense(p), oracle.eval_dense(x));
    }
    case ConstantKind::mu:
    case ConstantKind::psi: {
      Dense num(static_cast<std::size_t>(dim), 0.0);
      put(num, w.B, w.delta, 1.0);
      Dense den(static_cast<std::size_t>(dim), 0.0);
      put(den, w.A, w.eps, 1.0);
      return ratio(oracle.eval_dense(num), oracle.eval_dense(den));
    }
    case ConstantKind::fundamental: {
      Dense v(static_cast<std::size_t>(dim), 0.0);
      put(v, w.A, w.eps, 1.0);
      return oracle.eval_dense(v);
    }
    default:
      break;
  }
  throw DomainError("constant_ratio: unsupported kind");
}

void validate_witness(ConstantKind kind, const Witness& w, int m, double tau) {
  check_common(m, tau);
  auto fail = [&](const std::string& why) { throw DomainError(to_string(kind) + " witness: " + why); };
  IndexSet supp = w.x.support();
  std::size_t a = w.A.size();
  std::size_t b = w.B.size();
  if (is_nu(kind)) {
    if (tau * sup_norm(w.x) > 1.0 + 1e-12) fail("||x||_inf exceeds 1/tau");
    if (b > a || static_cast<int>(a) > m) fail("requires |B| <= |A| <= m");
    if (w.eps.domain() != w.A || w.delta.domain() != w.B) fail("signs must cover A and B");
    if (!disjoint(w.A, w.B) || !disjoint(w.A, supp) || !disjoint(w.B, supp)) fail("A, B, supp(x) must be disjoint");
    if (kind == ConstantKind::nu_left && (a != b || !precedes(w.B, w.A))) fail("requires |A| = |B| and B < A");
    if (kind == ConstantKind::nu_left_prime) {
      if (!precedes(w.B, set_union(supp, w.A))) fail("requires B < supp(x) u A");
      if (static_cast<int>(w.B.max()) > m) fail("requires max B <= m");
    }
    return;
  }
  if (is_omega(kind)) {
    if (!(w.t > 0.0)) fail("t must be positive");
    if (tau * sup_norm(w.x) > w.t * (1.0 + 1e-12)) fail("||x||_inf exceeds t/tau");
    if (w.eps.domain() != w.A) fail("signs must cover A");
    if (static_cast<int>(a) > m) fail("requires |A| <= m");
    if (kind == ConstantKind::omega_left_prime) {
      if (b > a) fail("requires |B| <= |A|");
      IndexSet rest = set_difference(supp, w.B);
      if (!disjoint(rest, w.A)) fail("supp(x - P_B x) and A must be disjoint");
      if (!precedes(w.B, set_union(rest, w.A))) fail("requires B < supp(x - P_B x) u A");
      if (static_cast<int>(w.B.max()) > m) fail("requires max B <= m");
      return;
    }
    if (a != b) fail("requires |A| = |B|");
    if (!disjoint(w.A, set_union(supp, w.B))) fail("(supp(x) u B) and A must be disjoint");
    if (kind == ConstantKind::omega_left && !precedes(w.B, w.A)) fail("requires B < A");
    return;
  }
  switch (kind) {
    case ConstantKind::k:
    case ConstantKind::k_c:
      if (static_cast<int>(a) > m) fail("requires |A| <= m");
      return;
    case ConstantKind::g:
    case ConstantKind::g_c:
      if (static_cast<int>(a) > m) fail("requires |Lambda| <= m");
      if (!is_weak_greedy_set(w.x, w.A, tau)) fail("Lambda is not tau-weak greedy");
      return;
    case ConstantKind::mu:
    case ConstantKind::psi:
      if (a != b || static_cast<int>(a) > m || a == 0) fail("requires 1 <= |A| = |B| <= m");
      if (kind == ConstantKind::psi && !precedes(w.B, w.A)) fail("requires B < A");
      return;
    case ConstantKind::fundamental:
      if (static_cast<int>(a) != m) fail("requires |Lambda| = n");
      return;
    default:
      break;
  }
}

ConstantEstimate estimate_nu(int m, double tau, const NormOracle& o, const FamilyConfig& f) {
  return estimate_positional(ConstantKind::nu, m, tau, o, f);
}
ConstantEstimate estimate_nu_left(int m, double tau, const NormOracle& o, const FamilyConfig& f) {
  return estimate_positional(ConstantKind::nu_left, m, tau, o, f);
}
ConstantEstimate estimate_nu_left_prime(int m, double tau, const NormOracle& o, const FamilyConfig& f) {
  return estimate_positional(ConstantKind::nu_left_prime, m, tau, o, f);
}
ConstantEstimate estimate_omega(int m, double tau, const NormOracle& o, const FamilyConfig& f) {
  return estimate_positional(ConstantKind::omega, m, tau, o, f);
}
ConstantEstimate estimate_omega_left(int m, double tau, const NormOracle& o, const FamilyConfig& f) {
  return estimate_positional(ConstantKind::omega_left, m, tau, o, f);
}
ConstantEstimate estimate_omega_left_prime(int m, double tau, const NormOracle& o, const FamilyConfig& f) {
  return estimate_positional(ConstantKind::omega_left_prime, m, tau, o, f);
}
ConstantEstimate estimate_k(int m, const NormOracle& o, const FamilyConfig& f) {
  return estimate_unconditional(ConstantKind::k, m, o, f);
}
ConstantEstimate estimate_k_c(int m, const NormOracle& o, const FamilyConfig& f) {
  return estimate_unconditional(ConstantKind::k_c, m, o, f);
}
ConstantEstimate estimate_g(int m, double tau, const NormOracle& o, const FamilyConfig& f) {
  return estimate_quasi_greedy(ConstantKind::g, m, tau, o, f);
}
ConstantEstimate estimate_g_c(int m, double tau, const NormOracle& o, const FamilyConfig& f) {
  return estimate_quasi_greedy(ConstantKind::g_c, m, tau, o, f);
}
ConstantEstimate estimate_mu(int m, const NormOracle& o, const FamilyConfig& f) {
  return estimate_democracy(ConstantKind::mu, m, o, f);
}
ConstantEstimate estimate_psi(int m, const NormOracle& o, const FamilyConfig& f) {
  return estimate_democracy(ConstantKind::psi, m, o, f);
}

ConstantEstimate fundamental_function(int n, const NormOracle& oracle, const FamilyConfig& f) {
  if (n < 0 || n > f.dim) throw DomainError("fundamental_function: n outside [0, dim]");
  Best best;
  bool sampled = false;
  if (n == 0) {
    best.found = true;
    best.w = Witness{CoeffVector(f.dim), {}, {}, SignPattern(), {}, 1.0, 0};
  } else {
    for (const auto& s : indicator_norms(n, oracle, f, sampled)) {
      ++best.candidates;
      if (!best.found || s.hi.value > best.ratio) {
        best.found = true;
        best.ratio = s.hi.value;
        best.w = Witness{CoeffVector(f.dim), s.s, {}, SignPattern(s.s, s.hi.mask), {}, 1.0, n};
      }
    }
  }
  best.signs_sampled = sampled;
  auto e = finish(ConstantKind::fundamental, n, std::nullopt, oracle, f, std::move(best));
  e.exhaustive = !sampled;
  return e;
}

ConstantEstimate estimate_constant(ConstantKind kind, int m, double tau, const NormOracle& o, const FamilyConfig& f) {
  switch (kind) {
    case ConstantKind::nu:
    case ConstantKind::nu_left:
    case ConstantKind::nu_left_prime:
    case ConstantKind::omega:
    case ConstantKind::omega_left:
    case ConstantKind::omega_left_prime:
      return estimate_positional(kind, m, tau, o, f);
    case ConstantKind::k:
    case ConstantKind::k_c:
      return estimate_unconditional(kind, m, o, f);
    case ConstantKind::g:
    case ConstantKind::g_c:
      return estimate_quasi_greedy(kind, m, tau, o, f);
    case ConstantKind::mu:
    case ConstantKind::psi:
      return estimate_democracy(kind, m, o, f);
    case ConstantKind::fundamental:
      return fundamental_function(m, o, f);
  }
  throw DomainError("estimate_constant: unsupported kind");
}

std::optional<double> analytic_upper(ConstantKind kind, int m, double tau, const NormOracle& oracle,
                                     std::string* note) {
  const auto& md = oracle.metadata();
  auto say = [&](const std::string& s) {
    if (note) *note = s;
  };
  if (is_nu(kind)) {
    if (m == 0) {
      say("empty sets: ratio tau");
      return tau;
    }
    if (md.C_b) {
      say("uniform property (A) constant C_b");
      return *md.C_b;
    }
  }
  if (is_omega(kind)) {
    if (m == 0) {
      say("empty sets: ratio 1");
      return 1.0;
    }
    if (md.C_b) {
      say("C_b / tau via the nu-omega identity");
      return *md.C_b / tau;
    }
  }
  switch (kind) {
    case ConstantKind::k:
    case ConstantKind::k_c:
      if (m == 0) {
        say(kind == ConstantKind::k ? "empty projection: k_0 = 0" : "empty projection: k_0^c = 1");
        return kind == ConstantKind::k ? 0.0 : 1.0;
      }
      if (md.K_s) {
        say("suppression unconditional constant K_s");
        return *md.K_s;
      }
      break;
    case ConstantKind::g:
    case ConstantKind::g_c:
      if (md.K_s) {
        say("K_s bounds every coordinate projection and its complement");
        return *md.K_s;
      }
      break;
    case ConstantKind::mu:
      if (md.C_b) {
        say("min(2 C_b, C_b^2) at tau = 1");
        return std::min(2.0 * *md.C_b, *md.C_b * *md.C_b);
      }
      break;
    case ConstantKind::psi:
      if (md.C_b) {
        say("psi_m <= nu_{m,1,left} <= C_b");
        return *md.C_b;
      }
      break;
    default:
      break;
  }
  say("");
  return std::nullopt;
}

Witness nu_omega_witness_transform(const Witness& w, double tau) {
  check_tau(tau);
  int dim = witness_dim(w);
  Dense y = dense_of(w.x, dim);
  for (double& v : y) v *= tau;
  put(y, w.B, w.delta, 1.0);
  Witness out;
  out.x = CoeffVector::from_dense(std::move(y));
  out.A = w.A;
  out.B = w.B;
  out.eps = w.eps;
  out.t = tau;
  return out;
}

std::vector<CoeffVector> candidate_vectors(int dim, double scale, const FamilyConfig& f, std::uint64_t seed) {
  std::vector<CoeffVector> out;
  for (auto& d : free_candidates(iota_pool(1, dim), dim, scale, f, seed)) out.push_back(CoeffVector::from_dense(std::move(d)));
  return out;
}

}  // namespace greedylab
