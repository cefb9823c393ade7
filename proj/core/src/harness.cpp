#include "greedylab/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "greedylab/approx_errors.hpp"
#include "greedylab/combinatorics.hpp"
#include "greedylab/constants_lab.hpp"
#include "greedylab/greedy_engine.hpp"
#include "greedylab/lebesgue_lab.hpp"
#include "greedylab/norm_spec.hpp"
#include "greedylab/parallel.hpp"
#include "greedylab/rng.hpp"
#include "json.hpp"

namespace greedylab {

namespace {

using json = nlohmann::ordered_json;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> dense_of(const CoeffVector& x) { return {x.dense().begin(), x.dense().end()}; }

std::uint64_t tau_bits(double tau) { return std::bit_cast<std::uint64_t>(tau); }

// ---- certificate accessors ------------------------------------------------

CoeffVector vec(const Certificate& c, const std::string& k) {
  auto it = c.vectors.find(k);
  if (it == c.vectors.end()) throw DomainError("certificate lacks vector '" + k + "'");
  return CoeffVector::from_dense(it->second);
}

const std::vector<double>& raw(const Certificate& c, const std::string& k) {
  auto it = c.vectors.find(k);
  if (it == c.vectors.end()) throw DomainError("certificate lacks vector '" + k + "'");
  return it->second;
}

IndexSet set_of(const Certificate& c, const std::string& k) {
  auto it = c.sets.find(k);
  return it == c.sets.end() ? IndexSet{} : it->second;
}

SignPattern signs_of(const Certificate& c, const std::string& k, const IndexSet& s) {
  auto it = c.signs.find(k);
  if (it == c.signs.end() || it->second.size() != s.size()) return SignPattern::all_plus(s);
  return SignPattern(s, it->second);
}

double param(const Certificate& c, const std::string& k) {
  auto it = c.params.find(k);
  if (it == c.params.end()) throw DomainError("certificate lacks parameter '" + k + "'");
  return it->second;
}

double param_or(const Certificate& c, const std::string& k, double d) {
  auto it = c.params.find(k);
  return it == c.params.end() ? d : it->second;
}

std::string label(const Certificate& c, const std::string& k) {
  auto it = c.labels.find(k);
  if (it == c.labels.end()) throw DomainError("certificate lacks label '" + k + "'");
  return it->second;
}

void put_witness(Certificate& c, const std::string& p, ConstantKind kind, const Witness& w, int m, double tau,
                 double scale) {
  c.labels[p + "type"] = "constant";
  c.labels[p + "kind"] = to_string(kind);
  c.vectors[p + "x"] = dense_of(w.x);
  c.sets[p + "A"] = w.A;
  c.sets[p + "B"] = w.B;
  c.signs[p + "eps"] = w.eps.signs();
  c.signs[p + "delta"] = w.delta.signs();
  c.params[p + "t"] = w.t;
  c.params[p + "order"] = w.order;
  c.params[p + "m"] = m;
  c.params[p + "tau"] = tau;
  c.params[p + "scale"] = scale;
}

Witness get_witness(const Certificate& c, const std::string& p) {
  Witness w;
  w.x = vec(c, p + "x");
  w.A = set_of(c, p + "A");
  w.B = set_of(c, p + "B");
  w.eps = signs_of(c, p + "eps", w.A);
  w.delta = signs_of(c, p + "delta", w.B);
  w.t = param_or(c, p + "t", 1.0);
  w.order = static_cast<int>(param_or(c, p + "order", 0.0));
  return w;
}

void put_lebesgue(Certificate& c, const std::string& p, LebesgueKind kind, const CoeffVector& x,
                  const ApproxHint& hint, int m, double tau, double scale) {
  c.labels[p + "type"] = "lebesgue";
  c.labels[p + "kind"] = to_string(kind);
  c.vectors[p + "x"] = dense_of(x);
  c.sets[p + "hint_support"] = hint.support;
  c.vectors[p + "hint"] = hint.coeffs;
  c.params[p + "m"] = m;
  c.params[p + "tau"] = tau;
  c.params[p + "scale"] = scale;
}

// Scaled ratio of one side of a comparison certificate.
double side_ratio(const Certificate& c, const std::string& p, const NormOracle& oracle, CertificateValue& v) {
  std::string type = label(c, p + "type");
  int m = static_cast<int>(param(c, p + "m"));
  double tau = param(c, p + "tau");
  double scale = param(c, p + "scale");
  if (type == "constant") {
    ConstantKind kind = constant_kind_from_string(label(c, p + "kind"));
    Witness w = get_witness(c, p);
    try {
      validate_witness(kind, w, m, tau);
    } catch (const DomainError& e) {
      v.valid = false;
      v.reason = e.what();
    }
    return scale * constant_ratio(kind, w, oracle, tau);
  }
  LebesgueKind kind = lebesgue_kind_from_string(label(c, p + "kind"));
  ApproxHint hint{set_of(c, p + "hint_support"), raw(c, p + "hint")};
  LebesgueRatio r = lebesgue_ratio(kind, vec(c, p + "x"), m, tau, oracle, {}, {}, &hint);
  v.converged = v.converged && r.converged;
  return scale * r.ratio();
}

bool is_projection(const CoeffVector& y, const ApproxHint& h) {
  if (h.support.size() != h.coeffs.size()) return false;
  for (std::size_t i = 0; i < h.support.size(); ++i) {
    if (h.support[i] > y.ambient_dim() || h.coeffs[i] != y[h.support[i]]) return false;
  }
  return true;
}

bool subset_of(const IndexSet& a, const IndexSet& b) { return set_difference(a, b).empty(); }

CoeffVector with_values(CoeffVector x, const IndexSet& s, const std::vector<double>& vals) {
  for (std::size_t i = 0; i < s.size(); ++i) x.set(s[i], vals.at(i));
  return x;
}

// ---- forms ----------------------------------------------------------------

CertificateValue eval_greedy_vs_benchmark(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  CoeffVector x = vec(c, "x");
  IndexSet L = set_of(c, "Lambda");
  v.valid = static_cast<int>(L.size()) == c.m && is_weak_greedy_set(x, L, c.tau);
  if (!v.valid) v.reason = "Lambda is not a weak greedy set of size m";
  v.lhs = o(project_complement(x, L));
  double bound = param(c, "bound");
  std::string bench = label(c, "benchmark");
  double b = 0.0;
  if (bench == "sigma") {
    ErrorValue s = sigma_m(x, c.m, o);
    b = s.value;
    v.converged = s.converged;
  } else if (bench == "sigma_tilde") {
    ErrorValue s = sigma_tilde_m(x, c.m, o);
    b = s.value;
    v.converged = s.converged;
  } else if (bench == "tail") {
    b = o(project_complement(x, IndexSet::range(1, c.m)));
  } else if (bench == "sigma_hat") {
    b = sigma_hat_m(x, c.m, o).value;
  } else if (bench == "norm") {
    b = o(x);
  } else {
    throw DomainError("unknown benchmark '" + bench + "'");
  }
  v.rhs = bound * b;
  return v;
}

CertificateValue eval_lift(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  v.lhs = side_ratio(c, "s_", o, v);
  CoeffVector y = vec(c, "y");
  IndexSet G = set_of(c, "G");
  ApproxHint h{set_of(c, "S"), raw(c, "hint")};
  int order = static_cast<int>(param(c, "order"));
  int mt = static_cast<int>(param(c, "m_target"));
  std::string adm = label(c, "admissible");
  bool ok = is_weak_greedy_set(y, G, c.tau) && static_cast<int>(G.size()) == order && order == mt &&
            h.support.size() == h.coeffs.size();
  int s = static_cast<int>(h.support.size());
  if (adm == "sigma") {
    ok = ok && s <= mt;
  } else if (adm == "sigma_tilde") {
    ok = ok && s == mt && is_projection(y, h);
  } else if (adm == "prefix") {
    ok = ok && h.support == IndexSet::range(1, h.support.max()) && s <= mt && is_projection(y, h);
  } else if (adm == "tail") {
    ok = ok && h.support == IndexSet::range(1, mt) && is_projection(y, h);
  } else {
    throw DomainError("unknown admissibility '" + adm + "'");
  }
  if (!ok) {
    v.valid = false;
    v.reason = "lift is not admissible";
  }
  double den = hint_value(y, h, o);
  double num = o(project_complement(y, G));
  v.rhs = param(c, "target_scale") * (den > 0.0 ? num / den : kInf);
  return v;
}

CertificateValue eval_avg_unconditional(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  CoeffVector x = vec(c, "x");
  IndexSet J = set_of(c, "J");
  const auto& a = raw(c, "a");
  const auto& b = raw(c, "b");
  v.valid = static_cast<int>(J.size()) <= c.m && disjoint(J, x.support()) && a.size() == J.size() &&
            b.size() == J.size();
  for (std::size_t i = 0; v.valid && i < a.size(); ++i) v.valid = std::abs(a[i]) <= std::abs(b[i]) && a[i] * b[i] >= 0;
  if (!v.valid) {
    v.reason = "averaging preconditions fail";
    return v;
  }
  v.lhs = o(with_values(x, J, a));
  v.rhs = param(c, "bound") * o(with_values(x, J, b));
  return v;
}

CertificateValue eval_avg_greedy(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  CoeffVector x = vec(c, "x");
  IndexSet A = set_of(c, "A");
  SignPattern eps = signs_of(c, "eps", A);
  const auto& a = raw(c, "a");
  double alpha = param(c, "alpha");
  v.valid = static_cast<int>(A.size()) <= c.m && disjoint(A, x.support()) && sup_norm(x) <= alpha / c.tau &&
            a.size() == A.size();
  for (std::size_t i = 0; v.valid && i < a.size(); ++i) v.valid = a[i] >= alpha;
  if (!v.valid) {
    v.reason = "averaging preconditions fail";
    return v;
  }
  v.lhs = o(add_indicator(x, A, eps, alpha));
  std::vector<double> signed_a(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) signed_a[i] = eps.signs()[i] * a[i];
  v.rhs = param(c, "bound") * o(with_values(x, A, signed_a));
  return v;
}

CertificateValue eval_omega_transform(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  v.two_sided = true;
  ConstantKind nk = constant_kind_from_string(label(c, "s_kind"));
  ConstantKind ok = nk == ConstantKind::nu        ? ConstantKind::omega
                    : nk == ConstantKind::nu_left ? ConstantKind::omega_left
                                                  : ConstantKind::omega_left_prime;
  Witness w = get_witness(c, "s_");
  Witness y = nu_omega_witness_transform(w, c.tau);
  try {
    validate_witness(nk, w, c.m, c.tau);
    validate_witness(ok, y, c.m, c.tau);
  } catch (const DomainError& e) {
    v.valid = false;
    v.reason = e.what();
  }
  v.lhs = constant_ratio(ok, y, o, c.tau);
  v.rhs = constant_ratio(nk, w, o, c.tau) / c.tau;
  return v;
}

CertificateValue eval_schauder_tail(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  CoeffVector x = vec(c, "x");
  v.lhs = o(project_complement(x, IndexSet::range(1, c.m)));
  v.rhs = param(c, "bound") * sigma_hat_m(x, c.m, o).value;
  return v;
}

CertificateValue eval_chebyshev(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  CoeffVector x = vec(c, "x");
  IndexSet A = set_of(c, "A");
  auto lift = chebyshev_lift(x, A, c.m, c.dim);
  v.valid = static_cast<int>(A.size()) == c.m && is_weak_greedy_set(x, A, c.tau) && lift.has_value();
  if (!v.valid) {
    v.reason = "A is not a weak greedy set of size m or the lift does not fit";
    return v;
  }
  double bound = param(c, "bound");
  if (c.form == "cheb_y") {
    v.valid = is_weak_greedy_set(lift->y, lift->D, c.tau);
    v.lhs = o(project_complement(x, A));
    auto b = best_coeffs_on_support(lift->y, lift->D, o);
    v.rhs = bound * b.value;
    v.converged = b.converged;
  } else if (c.form == "cheb_z") {
    v.valid = is_weak_greedy_set(lift->z, A, c.tau);
    v.lhs = o(indicator(c.dim, lift->D, SignPattern::all_plus(lift->D), lift->alpha));
    auto b = best_coeffs_on_support(lift->z, A, o);
    v.rhs = bound * b.value;
    v.converged = b.converged;
  } else {
    auto b = best_coeffs_on_support(lift->y, lift->D, o);
    ErrorValue s = sigma_m(lift->y, c.m, o);
    v.lhs = b.value;
    v.rhs = bound * s.value;
    v.converged = b.converged && s.converged;
  }
  if (!v.valid) v.reason = "greedy precondition of the lift fails";
  return v;
}

CertificateValue eval_scaling(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  CoeffVector x = vec(c, "x");
  IndexSet B = set_of(c, "B");
  SignPattern delta = signs_of(c, "delta", B);
  double t1 = param(c, "tau1"), t2 = param(c, "tau2");
  v.valid = t2 <= t1 && sup_norm(x) <= 1.0 / t1 && disjoint(B, x.support()) && static_cast<int>(B.size()) <= c.m &&
            B.size() < 63;
  if (!v.valid) {
    v.reason = "scaling preconditions fail";
    return v;
  }
  v.lhs = o(add_indicator(t1 * x, B, delta));
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << B.size()); ++mask) {
    best = std::max(best, o(add_indicator(t2 * x, B, SignPattern(B, mask))));
  }
  v.rhs = (t1 / t2) * best;
  return v;
}

CertificateValue eval_char(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  IndexSet L = set_of(c, "L");
  SignPattern eps = signs_of(c, "eps", L);
  double f = param(c, "f");
  if (c.form == "char_upper") {
    v.lhs = o(indicator(c.dim, L, eps));
    v.rhs = f;
    return v;
  }
  CoeffVector x = vec(c, "x");
  v.valid = sup_norm(x) <= 1.0 / c.tau && disjoint(L, x.support());
  if (!v.valid) v.reason = "characterization preconditions fail";
  v.lhs = param(c, "c2") * f;
  v.rhs = o(add_indicator(x, L, eps));
  return v;
}

CertificateValue eval_truncation(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  CoeffVector x = vec(c, "x");
  v.lhs = o(truncate(x, param(c, "alpha")));
  v.rhs = param(c, "bound") * o(x);
  return v;
}

CertificateValue eval_pl2(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  CoeffVector x = vec(c, "x");
  IndexSet A1 = set_of(c, "A1"), A2 = set_of(c, "A2");
  v.valid = subset_of(A1, A2);
  for (Index n : A2) v.valid = v.valid && std::abs(x[n]) >= c.tau && std::abs(x[n]) <= 1.0;
  if (!v.valid) v.reason = "band preconditions fail";
  v.lhs = o(project(x, A1));
  v.rhs = param(c, "bound") * o(project(x, A2));
  return v;
}

CertificateValue eval_gu(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  IndexSet A = set_of(c, "A");
  if (c.form == "gu1") {
    const auto& a = raw(c, "a");
    v.valid = a.size() == A.size() && !A.empty();
    if (!v.valid) {
      v.reason = "coefficients do not match A";
      return v;
    }
    double amax = 0.0;
    for (double t : a) amax = std::max(amax, std::abs(t));
    v.lhs = o(with_values(CoeffVector(c.dim), A, a));
    v.rhs = param(c, "bound") * amax * o(indicator(c.dim, A, signs_of(c, "eps", A)));
    return v;
  }
  CoeffVector x = vec(c, "x");
  v.valid = !A.empty() && is_weak_greedy_set(x, A, 1.0);
  if (!v.valid) {
    v.reason = "A is not a greedy set";
    return v;
  }
  double amin = kInf;
  std::vector<int> s;
  for (Index n : A) {
    amin = std::min(amin, std::abs(x[n]));
    s.push_back(x[n] < 0 ? -1 : 1);
  }
  v.lhs = amin * o(indicator(c.dim, A, SignPattern(A, s)));
  v.rhs = param(c, "bound") * o(x);
  return v;
}

CertificateValue eval_pst3(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  CoeffVector x = vec(c, "x");
  IndexSet A = set_of(c, "A"), B = set_of(c, "B");
  v.valid = static_cast<int>(A.size()) == c.m && static_cast<int>(B.size()) == c.m && is_weak_greedy_set(x, B, c.tau);
  if (!v.valid) v.reason = "B is not a weak greedy set of size m";
  double ra = o(project_complement(x, A));
  double pab = o(project(x, set_difference(A, B)));
  double pba = o(project(x, set_difference(B, A)));
  switch (static_cast<int>(param(c, "part"))) {
    case 1:
      v.lhs = o(project_complement(x, B));
      v.rhs = ra + pab + pba;
      break;
    case 2:
      v.lhs = pba;
      v.rhs = param(c, "bound") * ra;
      break;
    default:
      v.lhs = pab;
      v.rhs = param(c, "bound") * pba;
      break;
  }
  return v;
}

CertificateValue eval_estimate(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  v.lhs = side_ratio(c, "a_", o, v);
  if (c.form == "estimate_upper") {
    v.rhs = param(c, "bound");
  } else {
    v.rhs = side_ratio(c, "b_", o, v);
    v.two_sided = param_or(c, "two_sided", 0.0) != 0.0;
  }
  return v;
}

CertificateValue eval_uniform_A(const Certificate& c, const NormOracle& o) {
  CertificateValue v;
  IndexSet A = set_of(c, "A");
  const auto& parts = o.seminorm_parts();
  v.valid = !A.empty() && !parts.empty();
  if (!v.valid) {
    v.reason = "norm has no seminorm part or A is empty";
    return v;
  }
  v.lhs = parts.front()(indicator(c.dim, A, signs_of(c, "delta", A)));
  v.rhs = param(c, "lambda") * std::sqrt(static_cast<double>(A.size()));
  return v;
}

// ---- context --------------------------------------------------------------

struct LiftRecord {
  std::string name;
  ConstantKind src_kind = ConstantKind::nu;
  Witness src;
  int src_m = 0;
  double src_scale = 1.0;
  Lift lift;
  std::string admissible;
  double target_scale = 1.0;
};

struct Ctx {
  const HarnessConfig* cfg = nullptr;
  std::string spec;
  NormOracle small;
  NormOracle big;
  std::map<std::string, ConstantEstimate> consts;
  std::map<std::string, LebesgueEstimate> lebs;
  std::map<std::string, std::vector<LiftRecord>> lifts;

  const NormMetadata& meta() const { return small.metadata(); }
  bool closed(const NormOracle& o) const { return has_closed_form(o, {}); }
  double tol(const NormOracle& o) const { return closed(o) ? cfg->tol_closed : cfg->tol_solver; }
  std::vector<int> m_grid() const {
    std::vector<int> out;
    for (int m = 1; m <= cfg->m_max && 2 * m <= cfg->dim; ++m) out.push_back(m);
    return out;
  }
};

std::string key(const std::string& kind, int m, double tau, int dim) {
  std::ostringstream os;
  os << kind << '|' << m << '|' << std::hex << tau_bits(tau) << '|' << std::dec << dim;
  return os.str();
}

FamilyConfig family(const Ctx& ctx, const std::string& kind, int m, double tau, int dim) {
  FamilyConfig f;
  f.dim = dim;
  f.grid_budget = 2'000;
  f.random_vectors = 16;
  f.random_signs = 64;
  f.seed = derive_seed(ctx.cfg->seed, hash_string(ctx.spec), hash_string(kind), m, tau_bits(tau), dim);
  return f;
}

const ConstantEstimate& constant(Ctx& ctx, ConstantKind kind, int m, double tau, int dim) {
  std::string k = key(to_string(kind), m, tau, dim);
  auto it = ctx.consts.find(k);
  if (it != ctx.consts.end()) return it->second;
  auto e = estimate_constant(kind, m, tau, ctx.small, family(ctx, to_string(kind), m, tau, dim));
  return ctx.consts.emplace(k, std::move(e)).first->second;
}

Witness flat_witness(int dim, IndexSet A, IndexSet B) {
  Witness w;
  w.x = CoeffVector(dim);
  w.eps = SignPattern::all_plus(A);
  w.delta = SignPattern::all_plus(B);
  w.A = std::move(A);
  w.B = std::move(B);
  return w;
}

// Witness (shift(x), shift(Lambda)) for the left g^c lift.
std::optional<Witness> shifted_gc(const Witness& w, int m, int dim) {
  int shift = m - static_cast<int>(w.A.size());
  if (std::max(w.x.support().max(), w.A.max()) + shift > dim) return std::nullopt;
  Witness out;
  out.x = CoeffVector(dim);
  for (Index n : w.x.support()) out.x.set(n + shift, w.x[n]);
  std::vector<Index> a;
  for (Index n : w.A) a.push_back(n + shift);
  out.A = IndexSet(std::move(a));
  out.order = static_cast<int>(out.A.size());
  return out;
}

// Proof vectors for kind at (m, tau), paired with their source witnesses.
const std::vector<LiftRecord>& lifts_for(Ctx& ctx, LebesgueKind kind, int m, double tau) {
  std::string k = key(to_string(kind), m, tau, ctx.cfg->dim);
  auto it = ctx.lifts.find(k);
  if (it != ctx.lifts.end()) return it->second;
  std::vector<LiftRecord> out;
  int dim = ctx.cfg->dim;
  int lifted = dim - m;
  auto add_z = [&](const std::string& name, const Witness& w, const std::string& adm) {
    if (auto z = z_lift(w, m, tau, dim)) out.push_back({name, ConstantKind::nu, w, m, 1.0 / tau, *z, adm, 1.0});
  };
  auto nu_flat = [&](const std::string& adm) {
    for (int a = 1; a <= m; ++a) {
      for (int b = 0; b <= a; ++b) {
        add_z("flat_right", flat_witness(lifted, IndexSet::range(1, a), IndexSet::range(a + 1, a + b)), adm);
        add_z("flat_left", flat_witness(lifted, IndexSet::range(b + 1, b + a), IndexSet::range(1, b)), adm);
      }
    }
  };
  const ConstantEstimate* gc = nullptr;
  switch (kind) {
    case LebesgueKind::L: {
      nu_flat("sigma");
      auto& nu = constant(ctx, ConstantKind::nu, m, tau, lifted);
      if (nu.has_witness) add_z("nu_z", nu.witness, "sigma");
      auto& kc = constant(ctx, ConstantKind::k_c, m, 1.0, lifted);
      if (kc.has_witness) {
        if (auto y = kc_lift(kc.witness.x, kc.witness.A, m, dim)) {
          out.push_back({"kc_lift", ConstantKind::k_c, kc.witness, m, 1.0, *y, "sigma", 1.0});
        }
      }
      break;
    }
    case LebesgueKind::L_tilde: {
      nu_flat("sigma_tilde");
      auto& nu = constant(ctx, ConstantKind::nu, m, tau, lifted);
      if (nu.has_witness) add_z("nu_z", nu.witness, "sigma_tilde");
      gc = &constant(ctx, ConstantKind::g_c, m, tau, lifted);
      if (gc->has_witness) {
        if (auto y = gc_lift(gc->witness.x, gc->witness.A, m, tau, dim)) {
          out.push_back({"gc_lift", ConstantKind::g_c, gc->witness, m, 1.0, *y, "sigma_tilde", 1.0});
        }
      }
      break;
    }
    case LebesgueKind::L_re: {
      // psi lifts y = 1_{delta B} + 1_D + tau 1_{eps A}, D = {1..max B} \ B.
      std::vector<Witness> src;
      auto& psi = constant(ctx, ConstantKind::psi, m, 1.0, dim);
      if (psi.has_witness) src.push_back(psi.witness);
      for (int a = 1; a <= m; ++a) src.push_back(flat_witness(dim, IndexSet::range(a + 1, 2 * a), IndexSet::range(1, a)));
      for (const auto& w : src) {
        if (w.B.empty() || w.A.max() > dim) continue;
        Lift l;
        l.y = CoeffVector(dim);
        std::vector<Index> g;
        for (Index n = 1; n <= w.B.max(); ++n) {
          if (!w.B.contains(n)) {
            l.y.set(n, 1.0);
            g.push_back(n);
          }
        }
        for (std::size_t i = 0; i < w.B.size(); ++i) l.y.set(w.B[i], w.delta.signs()[i]);
        for (std::size_t i = 0; i < w.A.size(); ++i) {
          l.y.set(w.A[i], tau * w.eps.signs()[i]);
          g.push_back(w.A[i]);
        }
        l.greedy = IndexSet(std::move(g));
        l.order = static_cast<int>(l.greedy.size());
        l.prefix = w.B.max();
        l.hint.support = IndexSet::range(1, w.B.max());
        for (Index n : l.hint.support) l.hint.coeffs.push_back(l.y[n]);
        out.push_back({"psi_lift", ConstantKind::psi, w, m, 1.0, std::move(l), "tail", tau});
      }
      gc = &constant(ctx, ConstantKind::g_c, m, tau, lifted);
      break;
    }
    case LebesgueKind::L_hat_re: {
      auto add_y = [&](const std::string& name, const Witness& w) {
        if (auto y = y_lift(w, tau, dim)) {
          out.push_back({name, ConstantKind::nu_left_prime, w, m, 1.0 / tau, *y, "prefix", 1.0});
        }
      };
      for (int a = 1; a <= m; ++a) {
        for (int b = 0; b <= a; ++b) {
          add_y("flat_left", flat_witness(dim, IndexSet::range(b + 1, b + a), IndexSet::range(1, b)));
        }
      }
      auto& nup = constant(ctx, ConstantKind::nu_left_prime, m, tau, dim);
      if (nup.has_witness) add_y("nu_prime_y", nup.witness);
      gc = &constant(ctx, ConstantKind::g_c, m, tau, lifted);
      break;
    }
    case LebesgueKind::L_ch:
      break;
  }
  if (gc && gc->has_witness && (kind == LebesgueKind::L_re || kind == LebesgueKind::L_hat_re)) {
    auto src = shifted_gc(gc->witness, m, dim);
    auto y = gc_left_lift(gc->witness.x, gc->witness.A, m, tau, dim);
    if (src && y) out.push_back({"gc_left_lift", ConstantKind::g_c, *src, m, 1.0, *y, "prefix", 1.0});
  }
  return ctx.lifts.emplace(k, std::move(out)).first->second;
}

// Lebesgue estimate whose family holds the order-m lifts plus seeded random
// vectors shared by every kind and order.
const LebesgueEstimate& lebesgue(Ctx& ctx, LebesgueKind kind, int m, double tau) {
  std::string k = key(to_string(kind), m, tau, ctx.cfg->dim);
  auto it = ctx.lebs.find(k);
  if (it != ctx.lebs.end()) return it->second;
  LebesgueFamily f;
  f.dim = ctx.cfg->dim;
  f.random_vectors = ctx.cfg->estimate_random;
  f.seed = derive_seed(ctx.cfg->seed, hash_string(ctx.spec), hash_string("lebesgue"));
  f.structured = kind == LebesgueKind::L_ch;
  if (m > 0) {
    for (const auto& l : lifts_for(ctx, kind, m, tau)) {
      if (l.lift.order == m) f.extra.push_back({l.name, l.lift.y, l.lift.hint});
    }
    if (kind == LebesgueKind::L_hat_re || kind == LebesgueKind::L_re) {
      // Lifts of smaller order built at larger m land here.
      for (int mm = m + 1; mm <= ctx.cfg->m_max && 2 * mm <= ctx.cfg->dim; ++mm) {
        for (const auto& l : lifts_for(ctx, kind, mm, tau)) {
          if (l.lift.order == m) f.extra.push_back({l.name, l.lift.y, l.lift.hint});
        }
      }
    }
  }
  auto e = estimate_lebesgue(kind, m, tau, ctx.small, f);
  return ctx.lebs.emplace(k, std::move(e)).first->second;
}

// ---- runner ---------------------------------------------------------------

struct CheckSpec {
  std::string id;
  std::string suite;
  std::string mode;
  const NormOracle* oracle = nullptr;
  int n = 0;
  std::optional<int> m;
  std::optional<double> tau;
  double tol = 0.0;
};

using Gen = std::function<void(Rng&, const Certificate& base, std::vector<Certificate>& out)>;

CheckReport blank(const Ctx& ctx, const CheckSpec& s) {
  CheckReport r;
  r.check_id = s.id;
  r.suite = s.suite;
  r.oracle = ctx.spec;
  r.mode = s.mode;
  r.n = s.n;
  r.m = s.m;
  r.tau = s.tau;
  r.tolerance = s.tol;
  r.seed = derive_seed(ctx.cfg->seed, hash_string(s.id), hash_string(ctx.spec), s.m.value_or(0),
                       tau_bits(s.tau.value_or(1.0)));
  return r;
}

CheckReport skipped(const Ctx& ctx, const CheckSpec& s, std::string reason) {
  CheckReport r = blank(ctx, s);
  r.status = CheckStatus::skipped;
  r.reason = std::move(reason);
  return r;
}

double instance_ratio(const CertificateValue& v) {
  if (v.two_sided) return std::abs(v.lhs - v.rhs);
  if (v.rhs > 0.0) return v.lhs / v.rhs;
  return v.lhs > 0.0 ? kInf : 0.0;
}

CheckReport run_check(const Ctx& ctx, const CheckSpec& s, std::vector<Certificate> fixed, std::size_t trials,
                      const Gen& gen) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r = blank(ctx, s);
  r.trials = trials;
  Certificate base;
  base.check = s.id;
  base.norm = ctx.spec;
  base.dim = s.n;
  base.m = s.m.value_or(0);
  base.tau = s.tau.value_or(1.0);
  base.seed = r.seed;
  base.params["tol"] = s.tol;
  for (auto& c : fixed) {
    c.check = base.check;
    c.norm = base.norm;
    c.seed = base.seed;
    c.params["tol"] = s.tol;
  }
  std::size_t total = fixed.size() + trials;
  std::size_t stride = std::max<std::size_t>(1, total / 2000);

  struct Part {
    std::size_t instances = 0, invalid = 0, excluded = 0, violations = 0;
    std::vector<Violation> kept;
    bool has = false;
    double ext = 0.0, lhs = 0.0, rhs = 0.0;
    std::vector<double> sample;
    std::string error;
  };
  std::size_t chunks = std::min<std::size_t>(std::max<std::size_t>(total, 1), 64);
  std::size_t keep = ctx.cfg->max_violations_kept;
  auto parts = parallel_map<Part>(chunks, [&](std::size_t ch) {
    Part p;
    std::size_t lo = total * ch / chunks, hi = total * (ch + 1) / chunks;
    std::vector<Certificate> batch;
    for (std::size_t i = lo; i < hi; ++i) {
      batch.clear();
      if (i < fixed.size()) {
        batch.push_back(fixed[i]);
      } else {
        std::uint64_t t = i - fixed.size();
        Rng rng(derive_seed(base.seed, t));
        Certificate b = base;
        b.trial = t;
        try {
          gen(rng, b, batch);
        } catch (const std::exception& e) {
          ++p.invalid;
          if (p.error.empty()) p.error = e.what();
          continue;
        }
      }
      for (const auto& c : batch) {
        CertificateValue v;
        try {
          v = evaluate_certificate(c, *s.oracle);
        } catch (const std::exception& e) {
          ++p.invalid;
          if (p.error.empty()) p.error = e.what();
          continue;
        }
        if (!v.valid) {
          ++p.invalid;
          if (p.error.empty()) p.error = v.reason;
          continue;
        }
        bool bad = violates(v, s.tol);
        if (bad && !v.converged) {
          ++p.excluded;
          continue;
        }
        ++p.instances;
        double q = instance_ratio(v);
        if (!p.has || q > p.ext) {
          p.has = true;
          p.ext = q;
          p.lhs = v.lhs;
          p.rhs = v.rhs;
        }
        if (i % stride == 0 && !v.two_sided && std::isfinite(q)) p.sample.push_back(q);
        if (bad) {
          ++p.violations;
          if (p.kept.size() < keep) p.kept.push_back({c, v.lhs, v.rhs});
        }
      }
    }
    return p;
  });
  std::string first_error;
  for (auto& p : parts) {
    r.instances += p.instances;
    r.invalid_instances += p.invalid;
    r.excluded_nonconverged += p.excluded;
    r.violation_count += p.violations;
    for (auto& v : p.kept) {
      if (r.violations.size() < keep) r.violations.push_back(std::move(v));
    }
    if (p.has && (!r.extremal_ratio || p.ext > *r.extremal_ratio)) {
      r.extremal_ratio = p.ext;
      r.extremal_lhs = p.lhs;
      r.extremal_rhs = p.rhs;
    }
    r.ratio_sample.insert(r.ratio_sample.end(), p.sample.begin(), p.sample.end());
    if (first_error.empty()) first_error = p.error;
  }
  if (r.invalid_instances) {
    r.notes.push_back(std::to_string(r.invalid_instances) + " instances failed preconditions (first: " + first_error +
                      ")");
  }
  if (r.excluded_nonconverged) {
    r.notes.push_back(std::to_string(r.excluded_nonconverged) + " violations excluded: solver did not converge");
  }
  if (r.violation_count) {
    r.status = CheckStatus::fail;
    r.reason = std::to_string(r.violation_count) + " violations beyond tolerance";
  } else if (r.instances == 0) {
    r.status = CheckStatus::skipped;
    r.reason = "no admissible instances";
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

CheckReport run_fixed(const Ctx& ctx, const CheckSpec& s, std::vector<Certificate> certs) {
  return run_check(ctx, s, std::move(certs), 0, {});
}

// ---- instance generators --------------------------------------------------

std::vector<Index> pool(int lo, int hi) {
  std::vector<Index> p;
  for (Index n = lo; n <= hi; ++n) p.push_back(n);
  return p;
}

std::vector<int> random_signs(Rng& rng, std::size_t k) {
  std::vector<int> s(k);
  for (auto& v : s) v = rng.sign();
  return s;
}

// Values on `support` in one of three styles: uniform in [-scale, scale],
// tie levels, or flat part with spikes.
void fill_random(Rng& rng, CoeffVector& x, const std::vector<Index>& support, double tau, double scale) {
  const double levels[] = {1.0, tau, tau * tau, 0.5, inverse_tau(tau)};
  double b = inverse_tau(tau);
  switch (rng.below(3)) {
    case 0:
      for (Index n : support) x.set(n, scale * rng.uniform(-1.0, 1.0));
      break;
    case 1:
      for (Index n : support) x.set(n, scale * rng.sign() * levels[rng.below(std::size(levels))] * tau);
      break;
    default:
      for (Index n : support) {
        auto role = rng.below(3);
        double v = role == 0 ? tau : role == 1 ? b * tau : 0.5 * tau * rng.uniform01();
        x.set(n, scale * rng.sign() * v);
      }
      break;
  }
}

CoeffVector random_vector(Rng& rng, int dim, int max_index, double tau) {
  CoeffVector x(dim);
  max_index = std::clamp(max_index, 1, dim);
  int s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_index)));
  fill_random(rng, x, sample_subset(pool(1, max_index), s, rng), tau, 1.0);
  return x;
}

std::optional<double> meta_value(const Ctx& ctx, const char* name) {
  const auto& m = ctx.meta();
  std::string n = name;
  if (n == "K_b") return m.K_b;
  if (n == "K_s") return m.K_s;
  if (n == "C_l") return m.C_l;
  if (n == "C_w") return m.C_w;
  if (n == "C_a") return m.C_a;
  if (n == "C_g") return m.C_g;
  if (n == "C_b") return m.C_b;
  return std::nullopt;
}

std::optional<std::string> missing(const Ctx& ctx, std::initializer_list<const char*> names) {
  std::string out;
  for (const char* n : names) {
    if (!meta_value(ctx, n)) out += std::string(out.empty() ? "" : ", ") + n;
  }
  if (out.empty()) return std::nullopt;
  return "missing metadata " + out + " (exact mode)";
}

double K(const Ctx& ctx, const char* name) { return *meta_value(ctx, name); }

// g^c_{m-1,tau} <= K_s, and g^c_0 = 1.
double gc_prev(const Ctx& ctx, int m) { return m <= 1 ? 1.0 : K(ctx, "K_s"); }

// Pointwise check of ||x - P_Lambda x|| <= bound * benchmark(x) with Lambda
// the worst weak greedy set; lifts of the matching kind are tried first.
CheckReport greedy_bound_check(Ctx& ctx, const std::string& id, const std::string& suite, int m, double tau,
                               double bound, const std::string& bench, std::optional<LebesgueKind> structured) {
  bool solver = bench == "sigma" || bench == "sigma_tilde";
  const NormOracle& o = (!solver || ctx.closed(ctx.big)) ? ctx.big : ctx.small;
  CheckSpec s{id, suite, "exact", &o, ctx.cfg->dim_sampled, m, tau, ctx.tol(o)};
  if (&o == &ctx.small) s.n = ctx.cfg->dim;
  if (!solver) s.tol = ctx.cfg->tol_closed;
  std::size_t trials = &o == &ctx.big ? ctx.cfg->trials : ctx.cfg->solver_trials;
  auto make = [&](const Certificate& base, CoeffVector x) {
    Certificate c = base;
    c.form = "greedy_vs_benchmark";
    c.labels["benchmark"] = bench;
    c.params["bound"] = bound;
    c.sets["Lambda"] = greedy_residual(x, m, tau, o).witness;
    c.vectors["x"] = dense_of(x);
    return c;
  };
  std::vector<Certificate> fixed;
  if (structured) {
    Certificate base;
    base.dim = s.n;
    base.m = m;
    base.tau = tau;
    for (const auto& l : lifts_for(ctx, *structured, m, tau)) {
      if (l.lift.y.ambient_dim() <= s.n) fixed.push_back(make(base, l.lift.y.resized(s.n)));
    }
  }
  int headroom = solver ? s.n - m : s.n;
  return run_check(ctx, s, std::move(fixed), trials, [&](Rng& rng, const Certificate& base, auto& out) {
    out.push_back(make(base, random_vector(rng, s.n, headroom, tau)));
  });
}

Certificate lift_certificate(const Certificate& base, const LiftRecord& l, double tau) {
  Certificate c = base;
  c.form = "lift";
  c.tau = tau;
  put_witness(c, "s_", l.src_kind, l.src, l.src_m, tau, l.src_scale);
  c.labels["source"] = l.name;
  c.vectors["y"] = dense_of(l.lift.y);
  c.sets["G"] = l.lift.greedy;
  c.sets["S"] = l.lift.hint.support;
  c.vectors["hint"] = l.lift.hint.coeffs;
  c.params["order"] = l.lift.order;
  c.params["m_target"] = l.lift.order;
  c.labels["admissible"] = l.admissible;
  c.params["target_scale"] = l.target_scale;
  return c;
}

Certificate compare_certificate(const Ctx& ctx, int m, double tau) {
  Certificate c;
  c.dim = ctx.cfg->dim;
  c.m = m;
  c.tau = tau;
  c.form = "estimate_lower";
  return c;
}

// Estimate-level: lower(kind estimate) >= every lift source ratio, plus the
// per-lift identities.
CheckReport lower_lift_check(Ctx& ctx, const std::string& id, const std::string& suite, LebesgueKind kind, int m,
                             double tau) {
  CheckSpec s{id, suite, "estimate", &ctx.small, ctx.cfg->dim, m, tau, ctx.tol(ctx.small)};
  std::vector<Certificate> certs;
  Certificate base;
  base.dim = s.n;
  base.m = m;
  base.tau = tau;
  const auto& lifts = lifts_for(ctx, kind, m, tau);
  const auto& est = lebesgue(ctx, kind, m, tau);
  for (const auto& l : lifts) {
    if (l.lift.order != m) continue;
    certs.push_back(lift_certificate(base, l, tau));
    if (!est.has_witness) continue;
    Certificate c = compare_certificate(ctx, m, tau);
    put_witness(c, "a_", l.src_kind, l.src, l.src_m, tau, l.src_scale);
    put_lebesgue(c, "b_", kind, est.witness.x, est.witness.hint, m, tau, 1.0);
    c.labels["source"] = l.name;
    certs.push_back(std::move(c));
  }
  auto r = run_fixed(ctx, s, std::move(certs));
  if (est.has_witness) {
    std::ostringstream os;
    os << to_string(kind) << " estimate " << est.lower_bound << " via " << est.witness.generator;
    r.notes.push_back(os.str());
  }
  return r;
}

Certificate upper_constant(const Ctx& ctx, const ConstantEstimate& e, int m, double tau, double bound) {
  Certificate c = compare_certificate(ctx, m, tau);
  c.form = "estimate_upper";
  put_witness(c, "a_", e.kind, e.witness, e.m, e.tau.value_or(1.0), 1.0);
  c.params["bound"] = bound;
  return c;
}

Certificate upper_lebesgue(const Ctx& ctx, const LebesgueEstimate& e, double bound) {
  Certificate c = compare_certificate(ctx, e.m, e.tau);
  c.form = "estimate_upper";
  put_lebesgue(c, "a_", e.kind, e.witness.x, e.witness.hint, e.m, e.tau, 1.0);
  c.params["bound"] = bound;
  return c;
}

template <class F>
void for_grid(const Ctx& ctx, F&& f) {
  for (int m : ctx.m_grid()) {
    for (double tau : ctx.cfg->tau_grid) f(m, tau);
  }
}

// Random nu-type witness of the given variant.
Witness random_nu_witness(Rng& rng, ConstantKind kind, int m, double tau, int dim) {
  int a = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
  int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(a + 1)));
  // The omega side of the transform needs |A| = |B| outside the left-prime variant.
  if (kind != ConstantKind::nu_left_prime) b = a;
  Witness w;
  w.x = CoeffVector(dim);
  std::vector<Index> rest;
  if (kind == ConstantKind::nu_left_prime) {
    b = std::min(b, m);
    auto B = sample_subset(pool(1, m), b, rng);
    Index top = B.empty() ? 0 : B.back();
    auto after = pool(top + 1, dim);
    auto A = sample_subset(after, std::min<int>(a, static_cast<int>(after.size())), rng);
    w.A = IndexSet(A);
    w.B = IndexSet(B);
    for (Index n : after) {
      if (!w.A.contains(n)) rest.push_back(n);
    }
  } else {
    auto both = sample_subset(pool(1, dim), a + b, rng);
    std::vector<Index> A, B;
    if (kind == ConstantKind::nu_left) {
      B.assign(both.begin(), both.begin() + b);
      A.assign(both.begin() + b, both.end());
    } else {
      std::vector<Index> shuffled = both;
      for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
      A.assign(shuffled.begin(), shuffled.begin() + a);
      B.assign(shuffled.begin() + a, shuffled.end());
      std::sort(A.begin(), A.end());
      std::sort(B.begin(), B.end());
    }
    w.A = IndexSet(A);
    w.B = IndexSet(B);
    for (Index n = 1; n <= dim; ++n) {
      if (!w.A.contains(n) && !w.B.contains(n)) rest.push_back(n);
    }
  }
  w.eps = SignPattern(w.A, random_signs(rng, w.A.size()));
  w.delta = SignPattern(w.B, random_signs(rng, w.B.size()));
  if (!rest.empty()) {
    int s = static_cast<int>(rng.below(rest.size() + 1));
    fill_random(rng, w.x, sample_subset(rest, s, rng), tau, 1.0 / tau);
    for (Index n : w.x.support()) w.x.set(n, std::clamp(w.x[n], -1.0 / tau, 1.0 / tau));
  }
  return w;
}

}  // namespace

// ---- public: evaluation ---------------------------------------------------

CertificateValue evaluate_certificate(const Certificate& c, const NormOracle& o) {
  const std::string& f = c.form;
  if (f == "greedy_vs_benchmark") return eval_greedy_vs_benchmark(c, o);
  if (f == "lift") return eval_lift(c, o);
  if (f == "avg_unconditional") return eval_avg_unconditional(c, o);
  if (f == "avg_greedy") return eval_avg_greedy(c, o);
  if (f == "omega_transform") return eval_omega_transform(c, o);
  if (f == "schauder_tail") return eval_schauder_tail(c, o);
  if (f == "cheb_y" || f == "cheb_z" || f == "cheb_chain") return eval_chebyshev(c, o);
  if (f == "scaling") return eval_scaling(c, o);
  if (f == "char_upper" || f == "char_lower") return eval_char(c, o);
  if (f == "truncation") return eval_truncation(c, o);
  if (f == "pl2") return eval_pl2(c, o);
  if (f == "gu1" || f == "gu2") return eval_gu(c, o);
  if (f == "pst3") return eval_pst3(c, o);
  if (f == "estimate_upper" || f == "estimate_lower") return eval_estimate(c, o);
  if (f == "uniform_A") return eval_uniform_A(c, o);
  throw DomainError("unknown certificate form '" + f + "'");
}

bool violates(const CertificateValue& v, double tol) {
  if (std::isnan(v.lhs) || std::isnan(v.rhs)) return false;
  double slack = tol * std::max(1.0, std::abs(v.rhs));
  if (v.two_sided) return std::abs(v.lhs - v.rhs) > slack;
  return v.lhs > v.rhs + slack;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    default:
      return "skipped";
  }
}

std::vector<std::string> suite_names() { return {"m1", "m2", "m3", "m4", "p4", "s4", "s5", "s6"}; }

// ---- suites ---------------------------------------------------------------

namespace {

Ctx make_ctx(const std::string& spec, const HarnessConfig& cfg) {
  Ctx ctx;
  ctx.cfg = &cfg;
  ctx.spec = spec;
  ctx.small = parse_norm_spec(spec, cfg.dim, cfg.base_dir);
  ctx.big = parse_norm_spec(spec, cfg.dim_sampled, cfg.base_dir);
  if (auto md = ctx.big.max_dim(); md && *md < cfg.dim_sampled) ctx.big = ctx.small;
  return ctx;
}

void suite_m1(Ctx& ctx, std::vector<CheckReport>& out) {
  const char* S = "m1";
  auto miss = missing(ctx, {"K_s", "C_b"});
  for_grid(ctx, [&](int m, double tau) {
    if (miss) {
      out.push_back(skipped(ctx, {"thm-1.1-upper", S, "exact", &ctx.big, ctx.cfg->dim_sampled, m, tau, 0}, *miss));
    } else {
      double bound = K(ctx, "K_s") * K(ctx, "C_b") / tau;
      out.push_back(greedy_bound_check(ctx, "thm-1.1-upper", S, m, tau, bound, "sigma", LebesgueKind::L));
    }
    out.push_back(lower_lift_check(ctx, "thm-1.1-lower", S, LebesgueKind::L, m, tau));
  });
  // Averaging with k^c_m (k^c_{m-1} when some a_j = b_j).
  for (int m : ctx.m_grid()) {
    CheckSpec s{"prop-2.1-avg", S, "exact", &ctx.big, ctx.cfg->dim_sampled, m, std::nullopt, ctx.cfg->tol_closed};
    if (auto r = missing(ctx, {"K_s"})) {
      out.push_back(skipped(ctx, s, *r));
      continue;
    }
    double ks = K(ctx, "K_s");
    int n = s.n;
    out.push_back(run_check(ctx, s, {}, ctx.cfg->trials, [&, m, n](Rng& rng, const Certificate& base, auto& o) {
      Certificate c = base;
      c.form = "avg_unconditional";
      int j = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
      auto J = sample_subset(pool(1, n), j, rng);
      IndexSet Js(J);
      std::vector<Index> rest;
      for (Index t = 1; t <= n; ++t) {
        if (!Js.contains(t)) rest.push_back(t);
      }
      CoeffVector x(n);
      fill_random(rng, x, sample_subset(rest, static_cast<int>(rng.below(rest.size() + 1)), rng), 1.0, 1.0);
      std::vector<double> a(J.size()), b(J.size());
      for (std::size_t i = 0; i < J.size(); ++i) {
        b[i] = rng.sign() * rng.uniform(0.0, 2.0);
        a[i] = b[i] * rng.uniform01();
      }
      bool equal = rng.below(2) == 0;
      if (equal) a[0] = b[0];
      c.sets["J"] = Js;
      c.vectors["x"] = dense_of(x);
      c.vectors["a"] = a;
      c.vectors["b"] = b;
      c.params["bound"] = equal ? (m == 1 ? 1.0 : ks) : ks;
      o.push_back(std::move(c));
    }));
  }
  // Omega <-> nu transforms, all three variants.
  std::size_t identity_trials = std::max<std::size_t>(1, ctx.cfg->trials / 10);
  for_grid(ctx, [&](int m, double tau) {
    CheckSpec s{"lemma-omega-transform", S, "identity", &ctx.small, ctx.cfg->dim, m, tau, ctx.cfg->tol_identity};
    int n = s.n;
    out.push_back(run_check(ctx, s, {}, identity_trials, [&, m, tau, n](Rng& rng, const Certificate& base, auto& o) {
      for (ConstantKind k : {ConstantKind::nu, ConstantKind::nu_left, ConstantKind::nu_left_prime}) {
        Certificate c = base;
        c.form = "omega_transform";
        put_witness(c, "s_", k, random_nu_witness(rng, k, m, tau, n), m, tau, 1.0);
        o.push_back(std::move(c));
      }
    }));
  });
}

void suite_m2(Ctx& ctx, std::vector<CheckReport>& out) {
  const char* S = "m2";
  auto miss = missing(ctx, {"K_s", "C_b"});
  for_grid(ctx, [&](int m, double tau) {
    if (miss) {
      out.push_back(skipped(ctx, {"thm-1.2-upper", S, "exact", &ctx.big, ctx.cfg->dim_sampled, m, tau, 0}, *miss));
    } else {
      double bound = gc_prev(ctx, m) * K(ctx, "C_b") / tau;
      out.push_back(
          greedy_bound_check(ctx, "thm-1.2-upper", S, m, tau, bound, "sigma_tilde", LebesgueKind::L_tilde));
    }
    out.push_back(lower_lift_check(ctx, "thm-1.2-lower", S, LebesgueKind::L_tilde, m, tau));
  });
  for_grid(ctx, [&](int m, double tau) {
    CheckSpec s{"prop-2.5-avg", S, "exact", &ctx.big, ctx.cfg->dim_sampled, m, tau, ctx.cfg->tol_closed};
    if (auto r = missing(ctx, {"K_s"})) {
      out.push_back(skipped(ctx, s, *r));
      return;
    }
    double ks = K(ctx, "K_s");
    int n = s.n;
    out.push_back(run_check(ctx, s, {}, ctx.cfg->trials, [&, m, tau, n, ks](Rng& rng, const Certificate& base, auto& o) {
      Certificate c = base;
      c.form = "avg_greedy";
      int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
      auto A = sample_subset(pool(1, n), k, rng);
      IndexSet As(A);
      std::vector<Index> rest;
      for (Index t = 1; t <= n; ++t) {
        if (!As.contains(t)) rest.push_back(t);
      }
      double alpha = rng.uniform(0.1, 1.0);
      CoeffVector x(n);
      fill_random(rng, x, sample_subset(rest, static_cast<int>(rng.below(rest.size() + 1)), rng), tau, alpha / tau);
      for (Index t : x.support()) x.set(t, std::clamp(x[t], -alpha / tau, alpha / tau));
      std::vector<double> a(A.size());
      for (auto& v : a) v = alpha * (1.0 + 2.0 * rng.uniform01());
      bool equal = rng.below(2) == 0;
      if (equal) a[0] = alpha;
      c.sets["A"] = As;
      c.signs["eps"] = random_signs(rng, A.size());
      c.vectors["x"] = dense_of(x);
      c.vectors["a"] = a;
      c.params["alpha"] = alpha;
      c.params["bound"] = equal ? (m == 1 ? 1.0 : ks) : ks;
      o.push_back(std::move(c));
    }));
  });
}

void suite_p4(Ctx& ctx, std::vector<CheckReport>& out) {
  const char* S = "p4";
  for_grid(ctx, [&](int m, double tau) {
    CheckSpec s{"prop-1.3", S, "estimate", &ctx.small, ctx.cfg->dim, m, tau, ctx.tol(ctx.small)};
    std::vector<Certificate> certs;
    Certificate base;
    base.dim = s.n;
    base.m = m;
    base.tau = tau;
    const auto& lifts = lifts_for(ctx, LebesgueKind::L_hat_re, m, tau);
    // max_{k <= m} of the L^re_k estimates.
    const LebesgueEstimate* best = nullptr;
    for (int k = 1; k <= m; ++k) {
      const auto& e = lebesgue(ctx, LebesgueKind::L_hat_re, k, tau);
      if (e.has_witness && (!best || e.lower_bound > best->lower_bound)) best = &e;
    }
    for (const auto& l : lifts) {
      if (l.src_kind != ConstantKind::nu_left_prime || l.lift.order == 0) continue;
      certs.push_back(lift_certificate(base, l, tau));
      if (!best) continue;
      Certificate c = compare_certificate(ctx, m, tau);
      put_witness(c, "a_", l.src_kind, l.src, m, tau, l.src_scale);
      put_lebesgue(c, "b_", LebesgueKind::L_hat_re, best->witness.x, best->witness.hint, best->m, tau, 1.0);
      c.labels["source"] = l.name;
      certs.push_back(std::move(c));
    }
    auto r = run_fixed(ctx, s, std::move(certs));
    const auto& nup = constant(ctx, ConstantKind::nu_left_prime, m, tau, ctx.cfg->dim);
    std::ostringstream os;
    os << "nu' estimate / tau " << nup.lower_bound / tau << "; max_k L^re_k estimate "
       << (best ? best->lower_bound : 0.0);
    r.notes.push_back(os.str());
    out.push_back(std::move(r));
  });
}

void suite_m3(Ctx& ctx, std::vector<CheckReport>& out) {
  const char* S = "m3";
  auto miss = missing(ctx, {"K_s", "C_b"});
  for_grid(ctx, [&](int m, double tau) {
    if (miss) {
      out.push_back(skipped(ctx, {"thm-1.4-re-upper", S, "exact", &ctx.big, ctx.cfg->dim_sampled, m, tau, 0}, *miss));
      out.push_back(skipped(ctx, {"thm-1.4-hat-upper", S, "exact", &ctx.big, ctx.cfg->dim_sampled, m, tau, 0}, *miss));
    } else {
      double bound = gc_prev(ctx, m) * K(ctx, "C_b") / tau;
      out.push_back(greedy_bound_check(ctx, "thm-1.4-re-upper", S, m, tau, bound, "tail", LebesgueKind::L_re));
      out.push_back(greedy_bound_check(ctx, "thm-1.4-hat-upper", S, m, tau, bound, "sigma_hat", LebesgueKind::L_hat_re));
    }
    // g^c_m <= L^re_m through left lifts.
    {
      CheckSpec s{"thm-1.4-hat-lower", S, "estimate", &ctx.small, ctx.cfg->dim, m, tau, ctx.tol(ctx.small)};
      std::vector<Certificate> certs;
      Certificate base;
      base.dim = s.n;
      base.m = m;
      base.tau = tau;
      const auto& est = lebesgue(ctx, LebesgueKind::L_hat_re, m, tau);
      for (const auto& l : lifts_for(ctx, LebesgueKind::L_hat_re, m, tau)) {
        if (l.src_kind != ConstantKind::g_c) continue;
        certs.push_back(lift_certificate(base, l, tau));
        if (!est.has_witness) continue;
        Certificate c = compare_certificate(ctx, m, tau);
        put_witness(c, "a_", l.src_kind, l.src, m, tau, 1.0);
        put_lebesgue(c, "b_", LebesgueKind::L_hat_re, est.witness.x, est.witness.hint, m, tau, 1.0);
        certs.push_back(std::move(c));
      }
      out.push_back(run_fixed(ctx, s, std::move(certs)));
    }
    // Schauder case: ||x - S_m x|| <= (K_b + 1) sigma^_m(x) pointwise, and
    // L^re_m >= g^c_m / (K_b + 1) at the left lift.
    {
      CheckSpec s{"thm-1.4-schauder", S, "exact", &ctx.big, ctx.cfg->dim_sampled, m, tau, ctx.cfg->tol_closed};
      if (auto r = missing(ctx, {"K_b"})) {
        out.push_back(skipped(ctx, s, *r));
      } else {
        double kb = K(ctx, "K_b");
        std::vector<Certificate> fixed;
        for (const auto& l : lifts_for(ctx, LebesgueKind::L_re, m, tau)) {
          if (l.src_kind != ConstantKind::g_c) continue;
          Certificate c = compare_certificate(ctx, m, tau);
          c.dim = ctx.cfg->dim;
          put_witness(c, "a_", l.src_kind, l.src, m, tau, 1.0 / (kb + 1.0));
          put_lebesgue(c, "b_", LebesgueKind::L_re, l.lift.y, {}, m, tau, 1.0);
          fixed.push_back(std::move(c));
        }
        // Fixed certificates use the exhaustive-dimension oracle; the norm is
        // the same, only the ambient dimension of the spec differs.
        int n = s.n;
        out.push_back(run_check(ctx, s, std::move(fixed), ctx.cfg->trials,
                                [&, m, tau, n, kb](Rng& rng, const Certificate& base, auto& o) {
                                  Certificate c = base;
                                  c.form = "schauder_tail";
                                  c.params["bound"] = kb + 1.0;
                                  c.vectors["x"] = dense_of(random_vector(rng, n, n, tau));
                                  o.push_back(std::move(c));
                                }));
      }
    }
  });
  // m = 1 equality.
  for (double tau : ctx.cfg->tau_grid) {
    CheckSpec s{"thm-1.4-m1-equality", S, "estimate", &ctx.small, ctx.cfg->dim, 1, tau, ctx.tol(ctx.small)};
    const auto& nup = constant(ctx, ConstantKind::nu_left_prime, 1, tau, ctx.cfg->dim);
    const auto& est = lebesgue(ctx, LebesgueKind::L_hat_re, 1, tau);
    if (!nup.has_witness || !est.has_witness) {
      out.push_back(skipped(ctx, s, "estimators returned no witness"));
      continue;
    }
    bool two_sided = ctx.meta().symmetric && ctx.meta().lattice;
    if (two_sided) s.tol = 1e-3;
    Certificate c = compare_certificate(ctx, 1, tau);
    put_witness(c, "a_", ConstantKind::nu_left_prime, nup.witness, 1, tau, 1.0 / tau);
    put_lebesgue(c, "b_", LebesgueKind::L_hat_re, est.witness.x, est.witness.hint, 1, tau, 1.0);
    if (two_sided) c.params["two_sided"] = 1.0;
    auto r = run_fixed(ctx, s, {c});
    std::ostringstream os;
    os << "L^re_1 estimate " << est.lower_bound << "; nu'_1 estimate / tau " << nup.lower_bound / tau
       << (two_sided ? "; two-sided (symmetric lattice norm)" : "; one-sided");
    r.notes.push_back(os.str());
    out.push_back(std::move(r));
  }
}

void suite_m4(Ctx& ctx, std::vector<CheckReport>& out) {
  const char* S = "m4";
  auto miss = missing(ctx, {"K_b", "K_s", "C_b"});
  for_grid(ctx, [&](int m, double tau) {
    const NormOracle& o = ctx.closed(ctx.big) ? ctx.big : ctx.small;
    int n = &o == &ctx.big ? ctx.cfg->dim_sampled : ctx.cfg->dim;
    std::size_t trials = &o == &ctx.big ? ctx.cfg->trials : ctx.cfg->solver_trials;
    double tol = ctx.tol(o);
    for (const char* form : {"cheb_y", "cheb_z", "cheb_chain"}) {
      std::string id = std::string("thm-1.5-") + (form[5] == 'y' ? "y" : form[5] == 'z' ? "z" : "chain");
      CheckSpec s{id, S, "exact", &o, n, m, tau, tol};
      if (miss) {
        out.push_back(skipped(ctx, s, *miss));
        continue;
      }
      double kb = K(ctx, "K_b");
      double U = K(ctx, "K_s") * K(ctx, "C_b") / tau;
      double bound = form[5] == 'y' ? kb : form[5] == 'z' ? kb + 1.0 : U;
      std::string f = form;
      out.push_back(run_check(ctx, s, {}, trials, [&, m, tau, n, bound, f](Rng& rng, const Certificate& base, auto& outv) {
        Certificate c = base;
        c.form = f;
        c.params["bound"] = bound;
        CoeffVector x = random_vector(rng, n, n - m, tau);
        c.sets["A"] = greedy_residual(x, m, tau, o).witness;
        c.vectors["x"] = dense_of(x);
        outv.push_back(std::move(c));
      }));
    }
    CheckSpec s{"thm-1.5-bound", S, "exact", &ctx.big, ctx.cfg->dim_sampled, m, tau, ctx.cfg->tol_closed};
    if (miss) {
      out.push_back(skipped(ctx, s, *miss));
      return;
    }
    double kb = K(ctx, "K_b");
    double U = K(ctx, "K_s") * K(ctx, "C_b") / tau;
    double bound = kb * U * (1.0 + U + U * kb);
    std::vector<Certificate> fixed;
    const auto& gc = constant(ctx, ConstantKind::g_c, m, tau, ctx.cfg->dim);
    if (gc.has_witness) fixed.push_back(upper_constant(ctx, gc, m, tau, bound));
    const auto& ch = lebesgue(ctx, LebesgueKind::L_ch, m, tau);
    if (ch.has_witness) fixed.push_back(upper_lebesgue(ctx, ch, U));
    // Estimate certificates evaluate on the exhaustive-dimension norm.
    CheckSpec se = s;
    se.id = "thm-1.5-bound";
    se.mode = "estimate";
    se.oracle = &ctx.small;
    se.n = ctx.cfg->dim;
    se.tol = ctx.tol(ctx.small);
    auto r = run_fixed(ctx, se, std::move(fixed));
    std::ostringstream os;
    os << "g^c estimate " << gc.lower_bound << "; L^ch estimate " << ch.lower_bound << "; bound " << bound;
    r.notes.push_back(os.str());
    out.push_back(std::move(r));
    int ns = s.n;
    out.push_back(run_check(ctx, s, {}, ctx.cfg->trials, [&, m, tau, ns, bound](Rng& rng, const Certificate& base, auto& o) {
      Certificate c = base;
      c.form = "greedy_vs_benchmark";
      c.labels["benchmark"] = "norm";
      c.params["bound"] = bound;
      CoeffVector x = random_vector(rng, ns, ns, tau);
      c.sets["Lambda"] = greedy_residual(x, m, tau, ctx.big).witness;
      c.vectors["x"] = dense_of(x);
      o.push_back(std::move(c));
    }));
  });
}

void suite_s4(Ctx& ctx, std::vector<CheckReport>& out) {
  const char* S = "s4";
  auto miss = missing(ctx, {"K_s", "C_b"});
  for_grid(ctx, [&](int m, double tau) {
    int n = ctx.cfg->dim;
    CheckSpec base{"", S, "estimate", &ctx.small, n, m, tau, ctx.tol(ctx.small)};
    auto spec = [&](const char* id) {
      CheckSpec s = base;
      s.id = id;
      return s;
    };
    if (miss) {
      for (const char* id : {"thm-3.1-greedy", "thm-3.2-almost-greedy", "thm-3.3-strong-partial", "thm-3.4-partial",
                             "lemma-3.5-sc"}) {
        out.push_back(skipped(ctx, spec(id), *miss));
      }
      return;
    }
    double ks = K(ctx, "K_s"), cb = K(ctx, "C_b");
    double U = ks * cb / tau;
    // C_{l,tau} <= K_s; at tau = 1 the suppression quasi-greedy constant also bounds it.
    double cl = ks;
    if (tau == 1.0 && meta_value(ctx, "C_l")) cl = std::min(cl, K(ctx, "C_l"));
    {
      std::vector<Certificate> c;
      const auto& L = lebesgue(ctx, LebesgueKind::L, m, tau);
      if (L.has_witness) c.push_back(upper_lebesgue(ctx, L, U));
      const auto& nu = constant(ctx, ConstantKind::nu, m, tau, n);
      if (nu.has_witness) c.push_back(upper_constant(ctx, nu, m, tau, cb));
      const auto& kc = constant(ctx, ConstantKind::k_c, m, 1.0, n);
      if (kc.has_witness) c.push_back(upper_constant(ctx, kc, m, 1.0, ks));
      out.push_back(run_fixed(ctx, spec("thm-3.1-greedy"), std::move(c)));
    }
    {
      std::vector<Certificate> c;
      const auto& Lt = lebesgue(ctx, LebesgueKind::L_tilde, m, tau);
      if (Lt.has_witness) c.push_back(upper_lebesgue(ctx, Lt, cl * cb / tau));
      const auto& gc = constant(ctx, ConstantKind::g_c, m, tau, n);
      if (gc.has_witness) c.push_back(upper_constant(ctx, gc, m, tau, cl));
      out.push_back(run_fixed(ctx, spec("thm-3.2-almost-greedy"), std::move(c)));
    }
    {
      std::vector<Certificate> c;
      const auto& Lh = lebesgue(ctx, LebesgueKind::L_hat_re, m, tau);
      if (Lh.has_witness) c.push_back(upper_lebesgue(ctx, Lh, U));
      const auto& nup = constant(ctx, ConstantKind::nu_left_prime, m, tau, n);
      if (nup.has_witness) c.push_back(upper_constant(ctx, nup, m, tau, cb));
      out.push_back(run_fixed(ctx, spec("thm-3.3-strong-partial"), std::move(c)));
    }
    {
      std::vector<Certificate> c;
      const auto& Lr = lebesgue(ctx, LebesgueKind::L_re, m, tau);
      if (Lr.has_witness) c.push_back(upper_lebesgue(ctx, Lr, U));
      if (meta_value(ctx, "K_b")) {
        double kb = K(ctx, "K_b");
        const auto& nul = constant(ctx, ConstantKind::nu_left, m, tau, n);
        if (nul.has_witness) c.push_back(upper_constant(ctx, nul, m, tau, tau * U * (2.0 + kb + U + U * kb)));
      }
      Certificate b;
      b.dim = n;
      b.m = m;
      b.tau = tau;
      for (const auto& l : lifts_for(ctx, LebesgueKind::L_re, m, tau)) {
        if (l.src_kind == ConstantKind::psi) c.push_back(lift_certificate(b, l, tau));
      }
      out.push_back(run_fixed(ctx, spec("thm-3.4-partial"), std::move(c)));
    }
    {
      std::vector<Certificate> c;
      const auto& psi = constant(ctx, ConstantKind::psi, m, 1.0, n);
      const auto& nul = constant(ctx, ConstantKind::nu_left, m, tau, n);
      if (psi.has_witness) {
        // psi witness read as a nu_left witness with x = 0.
        Certificate t = compare_certificate(ctx, m, tau);
        put_witness(t, "a_", ConstantKind::psi, psi.witness, m, 1.0, 1.0);
        Witness w = psi.witness;
        w.x = CoeffVector(n);
        put_witness(t, "b_", ConstantKind::nu_left, w, m, tau, 1.0);
        c.push_back(std::move(t));
        if (nul.has_witness) {
          Certificate e = compare_certificate(ctx, m, tau);
          put_witness(e, "a_", ConstantKind::psi, psi.witness, m, 1.0, 1.0);
          put_witness(e, "b_", ConstantKind::nu_left, nul.witness, m, tau, 1.0);
          c.push_back(std::move(e));
        }
      }
      if (nul.has_witness) c.push_back(upper_constant(ctx, nul, m, tau, tau * ks + cb + ks * cb));
      out.push_back(run_fixed(ctx, spec("lemma-3.5-sc"), std::move(c)));
    }
  });
}

void suite_s5(Ctx& ctx, std::vector<CheckReport>& out) {
  const char* S = "s5";
  int n = ctx.cfg->dim;
  auto miss_b = missing(ctx, {"C_b"});
  for_grid(ctx, [&](int m, double tau) {
    CheckSpec s{"cor-pc10", S, "estimate", &ctx.small, n, m, tau, ctx.tol(ctx.small)};
    const auto& nu = constant(ctx, ConstantKind::nu, m, tau, n);
    std::optional<double> cl = meta_value(ctx, "C_l");
    if (!cl) cl = meta_value(ctx, "K_s");
    if (miss_b || !cl) {
      out.push_back(skipped(ctx, s, miss_b ? *miss_b : "missing metadata C_l, K_s (exact mode)"));
    } else {
      double cb = K(ctx, "C_b");
      std::vector<Certificate> c;
      if (nu.has_witness) c.push_back(upper_constant(ctx, nu, m, tau, 2.0 * cb * cb * *cl));
      out.push_back(run_fixed(ctx, s, std::move(c)));
    }
    s.id = "prop-pp1-uncond";
    if (auto r = missing(ctx, {"C_b", "K_s"})) {
      out.push_back(skipped(ctx, s, *r));
    } else {
      std::vector<Certificate> c;
      if (nu.has_witness) c.push_back(upper_constant(ctx, nu, m, tau, K(ctx, "C_b") * K(ctx, "K_s")));
      out.push_back(run_fixed(ctx, s, std::move(c)));
    }
    s.id = "lemma-pl7";
    if (miss_b) {
      out.push_back(skipped(ctx, s, *miss_b));
    } else {
      double cb = K(ctx, "C_b");
      std::vector<Certificate> c;
      const auto& mu = constant(ctx, ConstantKind::mu, m, 1.0, n);
      if (mu.has_witness) c.push_back(upper_constant(ctx, mu, m, 1.0, std::min(2.0 * cb / tau, cb * cb)));
      out.push_back(run_fixed(ctx, s, std::move(c)));
    }
    s.id = "uniform-A-bound";
    bool weighted = ctx.small.name().rfind("weighted_tail", 0) == 0 && !ctx.small.seminorm_parts().empty();
    if (!weighted) {
      out.push_back(skipped(ctx, s, "not a max{seminorm, l2} norm"));
    } else {
      // Exact lambda over {1..n}: max over sets and signs of ||1_{dA}||_1 / sqrt|A|.
      double lambda = 1.0;
      const auto& part = ctx.small.seminorm_parts().front();
      for (const auto& A : subsets_by_size(pool(1, n), 1, n)) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << A.size()); ++mask) {
          lambda = std::max(lambda, part(indicator(n, A, SignPattern(A, mask))) / std::sqrt(double(A.size())));
        }
      }
      std::vector<Certificate> c;
      if (nu.has_witness) c.push_back(upper_constant(ctx, nu, m, tau, 3.0 * lambda));
      auto r = run_fixed(ctx, s, std::move(c));
      r.notes.push_back("lambda over the first " + std::to_string(n) + " coordinates: " + std::to_string(lambda));
      out.push_back(std::move(r));
    }
  });
  // nu_{m,tau1} <= (tau1 / tau2) sup_theta ||tau2 x + 1_{theta B}|| / ... pointwise.
  std::vector<double> grid = ctx.cfg->tau_grid;
  std::sort(grid.begin(), grid.end());
  int M = ctx.cfg->m_max;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double t1 = grid[i];
    std::vector<double> lower(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(i));
    int nb = ctx.cfg->dim_sampled;
    CheckSpec s{"prop-pp1-scaling", S, "exact", &ctx.big, nb, M, t1, ctx.cfg->tol_closed};
    out.push_back(run_check(ctx, s, {}, ctx.cfg->trials, [&, t1, lower, nb, M](Rng& rng, const Certificate& base, auto& o) {
      Certificate c = base;
      c.form = "scaling";
      double t2 = lower[rng.below(lower.size())];
      int b = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(M)));
      auto B = sample_subset(pool(1, nb), b, rng);
      IndexSet Bs(B);
      std::vector<Index> rest;
      for (Index t = 1; t <= nb; ++t) {
        if (!Bs.contains(t)) rest.push_back(t);
      }
      CoeffVector x(nb);
      fill_random(rng, x, sample_subset(rest, static_cast<int>(rng.below(rest.size() + 1)), rng), t1, 1.0 / t1);
      for (Index t : x.support()) x.set(t, std::clamp(x[t], -1.0 / t1, 1.0 / t1));
      c.vectors["x"] = dense_of(x);
      c.sets["B"] = Bs;
      c.signs["delta"] = random_signs(rng, B.size());
      c.params["tau1"] = t1;
      c.params["tau2"] = t2;
      o.push_back(std::move(c));
    }));
  }
  // Characterization through the fundamental function.
  std::vector<double> f(static_cast<std::size_t>(n) + 1, 0.0);
  bool exact_f = true;
  for (int k = 1; k <= n; ++k) {
    auto e = fundamental_function(k, ctx.small, family(ctx, "fundamental", k, 1.0, n));
    f[static_cast<std::size_t>(k)] = e.lower_bound;
    exact_f = exact_f && e.exhaustive;
  }
  {
    CheckSpec s{"thm-char-upper", S, "exact", &ctx.small, n, std::nullopt, std::nullopt, ctx.cfg->tol_closed};
    if (!exact_f) {
      out.push_back(skipped(ctx, s, "fundamental function not exhaustive at this dimension"));
    } else {
      out.push_back(run_check(ctx, s, {}, ctx.cfg->trials, [&, n](Rng& rng, const Certificate& base, auto& o) {
        Certificate c = base;
        c.form = "char_upper";
        int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        auto L = sample_subset(pool(1, n), k, rng);
        c.sets["L"] = IndexSet(L);
        c.signs["eps"] = random_signs(rng, L.size());
        c.params["f"] = f[static_cast<std::size_t>(k)];
        o.push_back(std::move(c));
      }));
    }
  }
  for (double tau : ctx.cfg->tau_grid) {
    CheckSpec s{"thm-char-lower", S, "exact", &ctx.small, n, std::nullopt, tau, ctx.cfg->tol_closed};
    if (miss_b || !exact_f) {
      out.push_back(skipped(ctx, s, miss_b ? *miss_b : "fundamental function not exhaustive at this dimension"));
      continue;
    }
    double cb = K(ctx, "C_b");
    double c2 = 2.0 / (cb * cb * (1.0 + cb * cb));
    out.push_back(run_check(ctx, s, {}, ctx.cfg->trials, [&, n, tau, c2](Rng& rng, const Certificate& base, auto& o) {
      Certificate c = base;
      c.form = "char_lower";
      int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      auto L = sample_subset(pool(1, n), k, rng);
      IndexSet Ls(L);
      std::vector<Index> rest;
      for (Index t = 1; t <= n; ++t) {
        if (!Ls.contains(t)) rest.push_back(t);
      }
      CoeffVector x(n);
      fill_random(rng, x, sample_subset(rest, static_cast<int>(rng.below(rest.size() + 1)), rng), tau, 1.0 / tau);
      for (Index t : x.support()) x.set(t, std::clamp(x[t], -1.0 / tau, 1.0 / tau));
      c.sets["L"] = Ls;
      c.signs["eps"] = random_signs(rng, L.size());
      c.vectors["x"] = dense_of(x);
      c.params["f"] = f[static_cast<std::size_t>(k)];
      c.params["c2"] = c2;
      o.push_back(std::move(c));
    }));
  }
  {
    int nb = ctx.cfg->dim_sampled;
    CheckSpec s{"thm-5.1-trunc", S, "exact", &ctx.big, nb, std::nullopt, std::nullopt, ctx.cfg->tol_closed};
    if (auto r = missing(ctx, {"C_l"})) {
      out.push_back(skipped(ctx, s, *r));
    } else {
      double cl = K(ctx, "C_l");
      out.push_back(run_check(ctx, s, {}, ctx.cfg->trials, [&, nb, cl](Rng& rng, const Certificate& base, auto& o) {
        Certificate c = base;
        c.form = "truncation";
        CoeffVector x = random_vector(rng, nb, nb, 1.0);
        c.vectors["x"] = dense_of(x);
        c.params["alpha"] = rng.uniform(0.01, 1.0) * std::max(sup_norm(x), 1e-3);
        c.params["bound"] = cl;
        o.push_back(std::move(c));
      }));
    }
  }
}

void suite_s6(Ctx& ctx, std::vector<CheckReport>& out) {
  const char* S = "s6";
  int nb = ctx.cfg->dim_sampled;
  auto cw = meta_value(ctx, "C_w");
  for (double tau : ctx.cfg->tau_grid) {
    CheckSpec s{"lemma-pl2", S, "exact", &ctx.big, nb, std::nullopt, tau, ctx.cfg->tol_closed};
    if (!cw) {
      out.push_back(skipped(ctx, s, "missing metadata C_w (exact mode)"));
      continue;
    }
    double bound = 8.0 * std::pow(*cw, 3) / tau;
    out.push_back(run_check(ctx, s, {}, ctx.cfg->trials, [&, tau, nb, bound](Rng& rng, const Certificate& base, auto& o) {
      Certificate c = base;
      c.form = "pl2";
      int k2 = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(nb)));
      auto A2 = sample_subset(pool(1, nb), k2, rng);
      auto A1 = sample_subset(A2, static_cast<int>(rng.below(A2.size() + 1)), rng);
      CoeffVector x = random_vector(rng, nb, nb, tau);
      for (Index t : A2) x.set(t, rng.sign() * (rng.below(4) == 0 ? (rng.below(2) ? 1.0 : tau) : rng.uniform(tau, 1.0)));
      c.vectors["x"] = dense_of(x);
      c.sets["A1"] = IndexSet(A1);
      c.sets["A2"] = IndexSet(A2);
      c.params["bound"] = bound;
      o.push_back(std::move(c));
    }));
  }
  {
    CheckSpec s{"lemma-gu-1", S, "exact", &ctx.big, nb, std::nullopt, std::nullopt, ctx.cfg->tol_closed};
    if (!cw) {
      out.push_back(skipped(ctx, s, "missing metadata C_w (exact mode)"));
    } else {
      double bound = 2.0 * *cw;
      out.push_back(run_check(ctx, s, {}, ctx.cfg->trials, [&, nb, bound](Rng& rng, const Certificate& base, auto& o) {
        Certificate c = base;
        c.form = "gu1";
        int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(nb)));
        auto A = sample_subset(pool(1, nb), k, rng);
        std::vector<double> a(A.size());
        for (auto& v : a) v = rng.uniform(-1.0, 1.0);
        c.sets["A"] = IndexSet(A);
        c.vectors["a"] = a;
        c.signs["eps"] = random_signs(rng, A.size());
        c.params["bound"] = bound;
        o.push_back(std::move(c));
      }));
    }
  }
  for (int m : ctx.m_grid()) {
    CheckSpec s{"lemma-gu-2", S, "exact", &ctx.big, nb, m, 1.0, ctx.cfg->tol_closed};
    auto cl = meta_value(ctx, "C_l");
    if (!cw && !cl) {
      out.push_back(skipped(ctx, s, "missing metadata C_l, C_w (exact mode)"));
      continue;
    }
    double bound = 2.0 * std::min(cl.value_or(kInf), cw.value_or(kInf));
    out.push_back(run_check(ctx, s, {}, ctx.cfg->trials, [&, m, nb, bound](Rng& rng, const Certificate& base, auto& o) {
      Certificate c = base;
      c.form = "gu2";
      CoeffVector x = random_vector(rng, nb, nb, 1.0);
      int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
      GreedyOptions g;
      g.cap = 1;
      auto fam = weak_greedy_sets(x, k, 1.0, g);
      c.sets["A"] = fam.sets.empty() ? IndexSet{} : fam.sets.front();
      c.vectors["x"] = dense_of(x);
      c.params["bound"] = bound;
      o.push_back(std::move(c));
    }));
  }
  for_grid(ctx, [&](int m, double tau) {
    if (!cw) {
      out.push_back(skipped(ctx, {"thm-pst2", S, "exact", &ctx.big, nb, m, tau, 0}, "missing metadata C_w (exact mode)"));
    } else {
      double bound = 1.0 + *cw + 16.0 * std::pow(*cw, 4) / tau;
      out.push_back(greedy_bound_check(ctx, "thm-pst2", S, m, tau, bound, "norm", std::nullopt));
    }
    {
      CheckSpec s{"thm-pst3-chain", S, "exact", &ctx.big, nb, m, tau, ctx.tol(ctx.big)};
      auto ca = meta_value(ctx, "C_a");
      if (!ca || !cw) {
        out.push_back(skipped(ctx, s, "missing metadata C_a, C_w (exact mode)"));
      } else {
        const NormOracle& o = ctx.closed(ctx.big) ? ctx.big : ctx.small;
        s.oracle = &o;
        s.n = &o == &ctx.big ? nb : ctx.cfg->dim;
        std::size_t trials = &o == &ctx.big ? ctx.cfg->trials : ctx.cfg->solver_trials;
        double b2 = *cw + 16.0 * std::pow(*cw, 4) / tau;
        double b3 = 4.0 * (*ca + 1.0) * *ca * *ca / tau;
        int n = s.n;
        out.push_back(run_check(ctx, s, {}, trials, [&, m, tau, n, b2, b3](Rng& rng, const Certificate& base, auto& outv) {
          CoeffVector x = random_vector(rng, n, n - m, tau);
          IndexSet A = sigma_tilde_m(x, m, o).witness;
          IndexSet B = greedy_residual(x, m, tau, o).witness;
          for (int part = 1; part <= 3; ++part) {
            Certificate c = base;
            c.form = "pst3";
            c.vectors["x"] = dense_of(x);
            c.sets["A"] = A;
            c.sets["B"] = B;
            c.params["part"] = part;
            c.params["bound"] = part == 2 ? b2 : b3;
            outv.push_back(std::move(c));
          }
        }));
      }
    }
    if (auto cg = meta_value(ctx, "C_g")) {
      double bound = std::pow(*cg, 4) / tau + *cg;
      out.push_back(greedy_bound_check(ctx, "thm-pst4", S, m, tau, bound, "sigma", std::nullopt));
    } else {
      out.push_back(skipped(ctx, {"thm-pst4", S, "exact", &ctx.big, nb, m, tau, 0}, "missing metadata C_g (exact mode)"));
    }
  });
}

void run_suite_ctx(Ctx& ctx, const std::string& suite, std::vector<CheckReport>& out) {
  if (suite == "m1") return suite_m1(ctx, out);
  if (suite == "m2") return suite_m2(ctx, out);
  if (suite == "m3") return suite_m3(ctx, out);
  if (suite == "m4") return suite_m4(ctx, out);
  if (suite == "p4") return suite_p4(ctx, out);
  if (suite == "s4") return suite_s4(ctx, out);
  if (suite == "s5") return suite_s5(ctx, out);
  if (suite == "s6") return suite_s6(ctx, out);
  throw DomainError("unknown suite '" + suite + "'");
}

std::vector<CheckReport> one_suite(const std::string& suite, const std::string& spec, const HarnessConfig& cfg) {
  Ctx ctx = make_ctx(spec, cfg);
  std::vector<CheckReport> out;
  run_suite_ctx(ctx, suite, out);
  return out;
}

std::vector<std::string> expand_suites(const std::vector<std::string>& s) {
  std::vector<std::string> out;
  for (const auto& x : s) {
    if (x == "all") {
      for (const auto& n : suite_names()) {
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
      }
    } else if (std::find(out.begin(), out.end(), x) == out.end()) {
      auto names = suite_names();
      if (std::find(names.begin(), names.end(), x) == names.end()) throw DomainError("unknown suite '" + x + "'");
      out.push_back(x);
    }
  }
  return out;
}

CheckReport error_report(const std::string& suite, const std::string& spec, const std::string& what) {
  CheckReport r;
  r.check_id = "suite-" + suite;
  r.suite = suite;
  r.oracle = spec;
  r.mode = "error";
  r.status = CheckStatus::fail;
  r.reason = what;
  return r;
}

}  // namespace

std::vector<CheckReport> check_theorem_m1(const std::string& s, const HarnessConfig& c) { return one_suite("m1", s, c); }
std::vector<CheckReport> check_theorem_m2(const std::string& s, const HarnessConfig& c) { return one_suite("m2", s, c); }
std::vector<CheckReport> check_theorem_m3(const std::string& s, const HarnessConfig& c) { return one_suite("m3", s, c); }
std::vector<CheckReport> check_prop_p4(const std::string& s, const HarnessConfig& c) { return one_suite("p4", s, c); }
std::vector<CheckReport> check_theorem_m4(const std::string& s, const HarnessConfig& c) { return one_suite("m4", s, c); }
std::vector<CheckReport> check_section4(const std::string& s, const HarnessConfig& c) { return one_suite("s4", s, c); }
std::vector<CheckReport> check_section5(const std::string& s, const HarnessConfig& c) { return one_suite("s5", s, c); }
std::vector<CheckReport> check_section6(const std::string& s, const HarnessConfig& c) { return one_suite("s6", s, c); }

std::vector<CheckReport> run_suite(const std::string& suite, const std::string& spec, const HarnessConfig& cfg) {
  return one_suite(suite, spec, cfg);
}

std::vector<CheckReport> run_all(const HarnessConfig& cfg) {
  auto suites = expand_suites(cfg.suites);
  // One task per norm; suites of a norm share estimator caches.
  auto per_norm = parallel_map<std::vector<CheckReport>>(cfg.norms.size(), [&](std::size_t i) {
    std::vector<CheckReport> out;
    const std::string& spec = cfg.norms[i];
    Ctx ctx;
    try {
      ctx = make_ctx(spec, cfg);
    } catch (const std::exception& e) {
      out.push_back(error_report("all", spec, std::string("norm spec: ") + e.what()));
      return out;
    }
    for (const auto& s : suites) {
      auto t0 = std::chrono::steady_clock::now();
      std::size_t before = out.size();
      try {
        run_suite_ctx(ctx, s, out);
      } catch (const std::exception& e) {
        out.resize(before);
        out.push_back(error_report(s, spec, e.what()));
      }
      (void)t0;
    }
    return out;
  });
  std::vector<CheckReport> all;
  for (auto& v : per_norm) {
    for (auto& r : v) all.push_back(std::move(r));
  }
  return all;
}

bool any_fail(const std::vector<CheckReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.status == CheckStatus::fail; });
}

// ---- serialization --------------------------------------------------------

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json cert_to_json(const Certificate& c) {
  json j;
  j["check"] = c.check;
  j["form"] = c.form;
  j["norm"] = c.norm;
  j["dim"] = c.dim;
  j["m"] = c.m;
  j["tau"] = c.tau;
  j["seed"] = c.seed;
  j["trial"] = c.trial;
  json p = json::object();
  for (const auto& [k, v] : c.params) p[k] = num(v);
  j["params"] = p;
  json l = json::object();
  for (const auto& [k, v] : c.labels) l[k] = v;
  j["labels"] = l;
  json vs = json::object();
  for (const auto& [k, v] : c.vectors) vs[k] = v;
  j["vectors"] = vs;
  json ss = json::object();
  for (const auto& [k, v] : c.sets) ss[k] = v.indices();
  j["sets"] = ss;
  json sg = json::object();
  for (const auto& [k, v] : c.signs) sg[k] = v;
  j["signs"] = sg;
  return j;
}

Certificate cert_from_json(const json& j) {
  Certificate c;
  c.check = j.value("check", "");
  c.form = j.at("form").get<std::string>();
  c.norm = j.at("norm").get<std::string>();
  c.dim = j.at("dim").get<int>();
  c.m = j.value("m", 0);
  c.tau = j.value("tau", 1.0);
  c.seed = j.value("seed", std::uint64_t{0});
  c.trial = j.value("trial", std::uint64_t{0});
  if (j.contains("params")) {
    for (const auto& [k, v] : j["params"].items()) c.params[k] = v.is_null() ? std::nan("") : v.get<double>();
  }
  if (j.contains("labels")) {
    for (const auto& [k, v] : j["labels"].items()) c.labels[k] = v.get<std::string>();
  }
  if (j.contains("vectors")) {
    for (const auto& [k, v] : j["vectors"].items()) c.vectors[k] = v.get<std::vector<double>>();
  }
  if (j.contains("sets")) {
    for (const auto& [k, v] : j["sets"].items()) c.sets[k] = IndexSet(v.get<std::vector<Index>>());
  }
  if (j.contains("signs")) {
    for (const auto& [k, v] : j["signs"].items()) c.signs[k] = v.get<std::vector<int>>();
  }
  return c;
}

template <class T>
json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) return num(*v);
  return *v;
}

json report_to_json(const CheckReport& r, bool timings) {
  json j;
  j["check_id"] = r.check_id;
  j["suite"] = r.suite;
  j["oracle"] = r.oracle;
  j["mode"] = r.mode;
  j["config"] = {{"n", r.n}, {"m", opt(r.m)}, {"tau", opt(r.tau)}, {"seed", r.seed}, {"trials", r.trials},
                 {"tolerance", r.tolerance}};
  j["status"] = to_string(r.status);
  j["reason"] = r.reason;
  j["instances"] = r.instances;
  j["invalid_instances"] = r.invalid_instances;
  j["excluded_nonconverged"] = r.excluded_nonconverged;
  j["extremal_ratio"] = opt(r.extremal_ratio);
  j["extremal_lhs"] = opt(r.extremal_lhs);
  j["extremal_rhs"] = opt(r.extremal_rhs);
  j["violation_count"] = r.violation_count;
  json vs = json::array();
  for (const auto& v : r.violations) {
    vs.push_back({{"lhs", num(v.lhs)}, {"rhs", num(v.rhs)}, {"certificate", cert_to_json(v.certificate)}});
  }
  j["violations"] = vs;
  j["notes"] = r.notes;
  if (timings) j["runtime_ms"] = r.runtime_ms;
  return j;
}

}  // namespace

std::string certificate_json(const Certificate& c) { return cert_to_json(c).dump(2); }

Certificate certificate_from_json(const std::string& text) { return cert_from_json(json::parse(text)); }

std::string report_json(const HarnessConfig& cfg, const std::vector<CheckReport>& reports) {
  json j;
  j["version"] = "1";
  j["config"] = {{"norms", cfg.norms},
                 {"suites", cfg.suites},
                 {"dim", cfg.dim},
                 {"dim_sampled", cfg.dim_sampled},
                 {"m_max", cfg.m_max},
                 {"tau_grid", cfg.tau_grid},
                 {"trials", cfg.trials},
                 {"solver_trials", cfg.solver_trials},
                 {"estimate_random", cfg.estimate_random},
                 {"seed", cfg.seed},
                 {"tol_closed", cfg.tol_closed},
                 {"tol_solver", cfg.tol_solver},
                 {"tol_identity", cfg.tol_identity}};
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& r : reports) {
    (r.status == CheckStatus::pass ? pass : r.status == CheckStatus::fail ? fail : skip)++;
  }
  j["summary"] = {{"reports", reports.size()}, {"pass", pass}, {"fail", fail}, {"skipped", skip}};
  json rs = json::array();
  for (const auto& r : reports) rs.push_back(report_to_json(r, cfg.timings));
  j["reports"] = rs;
  return j.dump(2) + "\n";
}

std::string report_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "check_id,suite,oracle,mode,n,m,tau,status,instances,violations,extremal_ratio,reason\n";
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
  };
  for (const auto& r : reports) {
    os << r.check_id << ',' << r.suite << ',' << quote(r.oracle) << ',' << r.mode << ',' << r.n << ',';
    if (r.m) os << *r.m;
    os << ',';
    if (r.tau) os << *r.tau;
    os << ',' << to_string(r.status) << ',' << r.instances << ',' << r.violation_count << ',';
    if (r.extremal_ratio && std::isfinite(*r.extremal_ratio)) os << *r.extremal_ratio;
    os << ',' << quote(r.reason) << '\n';
  }
  return os.str();
}

std::string report_svg(const std::vector<CheckReport>& reports) {
  std::vector<double> all;
  for (const auto& r : reports) all.insert(all.end(), r.ratio_sample.begin(), r.ratio_sample.end());
  const int bins = 40;
  double hi = 1.0;
  for (double v : all) hi = std::max(hi, v);
  std::vector<std::size_t> count(bins, 0);
  for (double v : all) {
    int b = std::clamp(static_cast<int>(v / hi * bins), 0, bins - 1);
    ++count[static_cast<std::size_t>(b)];
  }
  std::size_t peak = std::max<std::size_t>(1, *std::max_element(count.begin(), count.end()));
  const double W = 640, H = 360, L = 50, B = 40, T = 30;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">lhs / rhs over "
     << all.size() << " sampled instances</text>\n";
  double pw = W - L - 20, ph = H - B - T, bw = pw / bins;
  for (int i = 0; i < bins; ++i) {
    double h = ph * static_cast<double>(count[static_cast<std::size_t>(i)]) / static_cast<double>(peak);
    os << "<rect x=\"" << L + i * bw << "\" y=\"" << T + ph - h << "\" width=\"" << bw - 1 << "\" height=\"" << h
       << "\" fill=\"steelblue\"/>\n";
  }
  double one = L + pw * (1.0 / hi);
  os << "<line x1=\"" << one << "\" y1=\"" << T << "\" x2=\"" << one << "\" y2=\"" << T + ph
     << "\" stroke=\"crimson\" stroke-dasharray=\"4\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T + ph << "\" x2=\"" << L + pw << "\" y2=\"" << T + ph
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << L << "\" y=\"" << H - 15 << "\" font-size=\"12\">0</text>\n";
  os << "<text x=\"" << L + pw << "\" y=\"" << H - 15 << "\" font-size=\"12\" text-anchor=\"end\">" << hi
     << "</text>\n";
  os << "<text x=\"" << one << "\" y=\"" << H - 15 << "\" font-size=\"12\" text-anchor=\"middle\">1</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::vector<ReplayResult> replay(const std::string& text, const std::filesystem::path& base_dir) {
  json j = json::parse(text);
  struct Item {
    Certificate c;
    std::optional<double> lhs, rhs;
  };
  std::vector<Item> items;
  auto from_violation = [&](const json& v) {
    Item it{cert_from_json(v.at("certificate")), std::nullopt, std::nullopt};
    if (v.contains("lhs") && v["lhs"].is_number()) it.lhs = v["lhs"].get<double>();
    if (v.contains("rhs") && v["rhs"].is_number()) it.rhs = v["rhs"].get<double>();
    items.push_back(std::move(it));
  };
  if (j.contains("reports")) {
    for (const auto& r : j["reports"]) {
      for (const auto& v : r.value("violations", json::array())) from_violation(v);
    }
  } else if (j.contains("certificate")) {
    from_violation(j);
  } else {
    items.push_back({cert_from_json(j), std::nullopt, std::nullopt});
  }
  std::vector<ReplayResult> out;
  for (auto& it : items) {
    ReplayResult r;
    r.certificate = it.c;
    NormOracle o = parse_norm_spec(it.c.norm, it.c.dim, base_dir);
    r.value = evaluate_certificate(it.c, o);
    r.tolerance = param_or(it.c, "tol", 1e-9);
    r.violation = r.value.valid && violates(r.value, r.tolerance);
    r.bit_identical = it.lhs && it.rhs && *it.lhs == r.value.lhs && *it.rhs == r.value.rhs;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace greedylab
