// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "greedylab/combinatorics.hpp"
#include "greedylab/constants_lab.hpp"
#include "greedylab/counterexample_space.hpp"
#include "greedylab/harness.hpp"
#include "greedylab/lebesgue_lab.hpp"
#include "greedylab/norm_spec.hpp"
#include "greedylab/rng.hpp"

using namespace greedylab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

FamilyConfig family(int dim, std::uint64_t seed) {
  FamilyConfig f;
  f.dim = dim;
  f.seed = seed;
  return f;
}

// 1. Exact constants on l2, n = 6.
Outcome criterion1() {
  const double tol = 1e-9, budget = 30.0;
  auto t0 = Clock::now();
  auto o = make_lp_norm(2);
  double worst = 0.0;
  std::string where;
  for (int m = 1; m <= 2; ++m) {
    for (double tau : {0.5, 1.0}) {
      for (ConstantKind k : {ConstantKind::nu, ConstantKind::mu, ConstantKind::psi, ConstantKind::k_c,
                             ConstantKind::g_c}) {
        double v = estimate_constant(k, m, tau, o, family(6, 1)).lower_bound;
        if (std::abs(v - 1.0) >= worst) {
          worst = std::abs(v - 1.0);
          where = to_string(k) + " m=" + std::to_string(m) + " tau=" + fmt(tau);
        }
      }
    }
  }
  double secs = seconds_since(t0);
  return {worst <= tol && secs < budget,
          "max |estimate - 1| = " + fmt(worst) + " (" + where + "), tol 1e-9, " + fmt(secs) + " s < 30 s"};
}

// 2. l1 weak greedy extremality at m = 1, tau = 0.5.
Outcome criterion2() {
  const double tau = 0.5, tol = 1e-9, budget = 60.0;
  auto t0 = Clock::now();
  auto o = make_lp_norm(1);
  LebesgueFamily f;
  f.dim = 6;
  f.random_vectors = 200;
  f.seed = 1;
  f.structured = true;
  auto e = estimate_L(1, tau, o, f);
  Rng rng(derive_seed(2024, 2));
  double worst = 0.0;
  std::size_t trials = 10'000;
  for (std::size_t t = 0; t < trials; ++t) {
    CoeffVector x(6);
    for (Index n = 1; n <= 6; ++n) {
      switch (rng.below(3)) {
        case 0:
          x.set(n, rng.uniform(-1, 1));
          break;
        case 1:
          x.set(n, rng.sign() * (rng.below(2) ? 1.0 : tau));
          break;
        default:
          break;
      }
    }
    auto r = lebesgue_ratio(LebesgueKind::L, x, 1, tau, o);
    double q = r.ratio();
    if (std::isfinite(q)) worst = std::max(worst, q);
  }
  double secs = seconds_since(t0);
  bool pass = e.lower_bound >= 1.99 && worst <= 1.0 / tau + tol && secs < budget;
  return {pass, "estimate_L = " + fmt(e.lower_bound) + " >= 1.99 via " + e.witness.generator +
                    "; max sampled ratio " + fmt(worst) + " <= 2 + 1e-9 over 10^4 trials; " + fmt(secs) +
                    " s < 60 s"};
}

// 3. Witness transforms between nu-type and Omega-type witnesses.
Outcome criterion3() {
  const double tol = 1e-12;
  const int dim = 8, m = 3, per_norm = 1'000;
  const char* norms[] = {"lp:1", "lp:2", "lp:3", "lp:inf", "weighted_tail:counterexample",
                         "max:[lp:1,lp:2]"};
  double worst = 0.0;
  std::size_t checked = 0;
  for (const char* spec : norms) {
    auto o = parse_norm_spec(spec, dim);
    Rng rng(derive_seed(3, hash_string(spec)));
    for (ConstantKind nk : {ConstantKind::nu, ConstantKind::nu_left, ConstantKind::nu_left_prime}) {
      ConstantKind ok = nk == ConstantKind::nu        ? ConstantKind::omega
                        : nk == ConstantKind::nu_left ? ConstantKind::omega_left
                                                      : ConstantKind::omega_left_prime;
      int done = 0;
      while (done < per_norm) {
        double tau = rng.uniform(0.05, 1.0);
        int a = 1 + static_cast<int>(rng.below(m));
        int b = nk == ConstantKind::nu_left_prime ? static_cast<int>(rng.below(static_cast<std::uint64_t>(a + 1))) : a;
        std::vector<Index> all;
        for (Index n = 1; n <= dim; ++n) all.push_back(n);
        Witness w;
        w.x = CoeffVector(dim);
        std::vector<Index> A, B;
        if (nk == ConstantKind::nu_left_prime) {
          std::vector<Index> low;
          for (Index n = 1; n <= m; ++n) low.push_back(n);
          B = sample_subset(low, b, rng);
          std::vector<Index> after;
          for (Index n = (B.empty() ? 1 : B.back() + 1); n <= dim; ++n) after.push_back(n);
          A = sample_subset(after, std::min<int>(a, static_cast<int>(after.size())), rng);
        } else {
          auto both = sample_subset(all, a + b, rng);
          if (nk == ConstantKind::nu_left) {
            B.assign(both.begin(), both.begin() + b);
            A.assign(both.begin() + b, both.end());
          } else {
            for (std::size_t i = both.size(); i > 1; --i) std::swap(both[i - 1], both[rng.below(i)]);
            A.assign(both.begin(), both.begin() + a);
            B.assign(both.begin() + a, both.end());
            std::sort(A.begin(), A.end());
            std::sort(B.begin(), B.end());
          }
        }
        w.A = IndexSet(A);
        w.B = IndexSet(B);
        std::vector<int> es, ds;
        for (std::size_t i = 0; i < A.size(); ++i) es.push_back(rng.sign());
        for (std::size_t i = 0; i < B.size(); ++i) ds.push_back(rng.sign());
        w.eps = SignPattern(w.A, es);
        w.delta = SignPattern(w.B, ds);
        Index lo = nk == ConstantKind::nu_left_prime ? w.B.max() + 1 : 1;
        for (Index n = lo; n <= dim; ++n) {
          if (!w.A.contains(n) && !w.B.contains(n) && rng.below(2)) w.x.set(n, rng.uniform(-1.0, 1.0) / tau);
        }
        try {
          validate_witness(nk, w, m, tau);
        } catch (const DomainError&) {
          continue;
        }
        Witness y = nu_omega_witness_transform(w, tau);
        validate_witness(ok, y, m, tau);
        double lhs = constant_ratio(ok, y, o, tau);
        double rhs = constant_ratio(nk, w, o, tau) / tau;
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        ++done;
        ++checked;
      }
    }
  }
  return {worst <= tol, "max relative gap " + fmt(worst) + " <= 1e-12 over " + std::to_string(checked) +
                            " witnesses (10^3 per variant and norm, 6 norms)"};
}

// 4. Order one equality for the restricted Lebesgue parameter.
Outcome criterion4() {
  const double tol = 1e-3;
  double worst = 0.0;
  std::string where;
  for (double p : {1.0, 2.0}) {
    auto o = make_lp_norm(p);
    for (double tau : {0.5, 1.0}) {
      LebesgueFamily f;
      f.dim = 5;
      f.random_vectors = 200;
      f.seed = 4;
      double L = estimate_L_hat_re(1, tau, o, f).lower_bound;
      double nup = estimate_nu_left_prime(1, tau, o, family(5, 4)).lower_bound;
      double gap = std::abs(L - nup / tau);
      if (gap >= worst) {
        worst = gap;
        where = "p=" + fmt(p) + " tau=" + fmt(tau) + ": " + fmt(L) + " vs " + fmt(nup / tau);
      }
    }
  }
  return {worst <= tol, "max gap " + fmt(worst) + " <= 1e-3 (" + where + ")"};
}

// 5. Weight construction and uniform property (A).
Outcome criterion5() {
  auto w = build_weights(64);
  bool n1 = count_to_string(w.N[0]) == "11";
  bool minimal = true;
  for (int j = 1; j <= w.J; ++j) minimal = minimal && minimality_holds(w, j);
  auto ua = uniform_A_check(1, w, 10'000, 5, 200, 3);
  bool pass = n1 && minimal && ua.max_ratio <= 2.0;
  std::string detail = "N_1 = " + count_to_string(w.N[0]) + "; minimality over " + std::to_string(w.J) +
                       " blocks " + (minimal ? "holds" : "FAILS") + "; max ||1_dA||_1 / sqrt|A| = " +
                       fmt(ua.max_ratio) + " <= 2 (exhaustive |A| <= 3 in first 200 indices, " +
                       std::to_string(ua.exhaustive_sets) + " sets, plus 10^4 random)";
  // Beyond the pinned scope: the exact per-size sup inside the prefix.
  double beyond = 0.0;
  int at = 0;
  for (std::size_t k = 0; k < ua.exact_sup_by_size.size(); ++k) {
    if (ua.exact_sup_by_size[k] > beyond) {
      beyond = ua.exact_sup_by_size[k];
      at = static_cast<int>(k) + 1;
    }
  }
  if (beyond > 2.0) detail += "; note: exact sup over |A| = " + std::to_string(at) + " is " + fmt(beyond);
  return {pass, detail};
}

// 6. Non-quasi-greedy trend of r_2(K).
Outcome criterion6() {
  auto w = build_weights(64);
  bool increasing = true;
  double prev = 0.0, first = 0.0, last = 0.0;
  int first_drop = 0;
  double worst_formula = 0.0;
  // The seminorm ratio dips while the kept leads sum below a_1 / 2, then grows.
  bool seminorm_increasing = true;
  double prev_semi = 0.0;
  int semi_from = 0;
  for (int K = 3; K <= w.J; ++K) {
    auto q = qg_violation_ratio(2, w, K);
    if (K == 3) first = q.ratio;
    last = q.ratio;
    if (K > 3 && !(q.ratio > prev)) {
      if (increasing) first_drop = K;
      increasing = false;
    }
    if (q.tail_after_k > 0.5 / std::log(2.0)) {
      if (semi_from == 0) semi_from = K;
      else if (!(q.seminorm_ratio > prev_semi)) seminorm_increasing = false;
    }
    prev = q.ratio;
    prev_semi = q.seminorm_ratio;
    double ref = 0.0;
    for (int n = 3; n <= K; ++n) ref += 1.0 / (n * std::log(n + 1.0));
    worst_formula = std::max(worst_formula, std::abs(q.tail_after_k - ref));
  }
  bool formula = worst_formula <= 1e-6;
  std::string detail = "J_max = " + std::to_string(w.J) + (w.J >= 20 ? " >= 20" : " < 20") +
                       "; tail partial sum matches analytic within " + fmt(worst_formula) + " (tol 1e-6); ";
  if (increasing) {
    detail += "r_2(K) strictly increasing from " + fmt(first) + " to " + fmt(last);
  } else {
    detail += "r_2(K) NOT increasing: " + fmt(first) + " at K=3 down to " + fmt(last) + " at K=" +
              std::to_string(w.J) + ", first non-increase at K=" + std::to_string(first_drop) +
              ". The l2 part dominates both norms at this scale; the seminorm ratio is " +
              (seminorm_increasing ? "strictly increasing" : "not increasing") + " from K=" +
              std::to_string(semi_from) + " to " + fmt(prev_semi) + ".";
  }
  return {increasing && formula && w.J >= 20, detail};
}

// 7. Pointwise certificates on lp.
Outcome criterion7() {
  HarnessConfig cfg;
  cfg.suites = {"s6"};
  cfg.tau_grid = {0.25, 0.5, 1.0};
  cfg.trials = 10'000;
  auto reports = run_all(cfg);
  std::size_t instances = 0, violations = 0, reports_seen = 0, thin = 0;
  for (const auto& r : reports) {
    if (r.check_id == "thm-pst3-chain") continue;
    ++reports_seen;
    instances += r.instances;
    violations += r.violation_count + (r.status == CheckStatus::fail ? 1 : 0);
    if (r.instances < 10'000 || r.status != CheckStatus::pass) ++thin;
  }
  return {violations == 0 && thin == 0 && reports_seen > 0,
          std::to_string(reports_seen) + " reports (pl2, gu-1, gu-2, pst2, pst4 on lp:1, lp:2, lp:inf), " +
              std::to_string(instances) + " instances, " + std::to_string(violations) + " violations" +
              (thin ? ", " + std::to_string(thin) + " reports below 10^4 instances" : "")};
}

// 8. Full default run: zero violations, under 5 minutes, byte-identical rerun.
Outcome criterion8() {
  HarnessConfig cfg;
  auto t0 = Clock::now();
  auto reports = run_all(cfg);
  std::string a = report_json(cfg, reports);
  double secs = seconds_since(t0);
  std::string b = report_json(cfg, run_all(cfg));
  std::size_t fails = 0, pass = 0;
  for (const auto& r : reports) {
    fails += r.status == CheckStatus::fail;
    pass += r.status == CheckStatus::pass;
  }
  bool ok = fails == 0 && secs < 300.0 && a == b;
  return {ok, std::to_string(reports.size()) + " reports, " + std::to_string(pass) + " pass, " +
                  std::to_string(fails) + " fail; " + fmt(secs) + " s < 300 s; rerun " +
                  (a == b ? "byte-identical" : "DIFFERS")};
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 exact constants on l2", criterion1},
      {"2 weak greedy extremality on l1", criterion2},
      {"3 witness-transform identities", criterion3},
      {"4 order-one equality", criterion4},
      {"5 counterexample weights", criterion5},
      {"6 non-quasi-greedy trend", criterion6},
      {"7 pointwise certificates", criterion7},
      {"8 full verify run", criterion8},
  };
  int failed = 0;
  for (auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
