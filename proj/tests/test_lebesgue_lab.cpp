#include <gtest/gtest.h>

#include <cmath>

#include "greedylab/lebesgue_lab.hpp"
#include "greedylab/norm_spec.hpp"
#include "oracles.hpp"

using namespace greedylab;

namespace {

LebesgueFamily fam(int dim, int random = 200, bool structured = true) {
  LebesgueFamily f;
  f.dim = dim;
  f.random_vectors = random;
  f.seed = 3;
  f.structured = structured;
  return f;
}

}  // namespace

TEST(Ratio, L1ExtremalPair) {
  // gamma_1 = 2 - 1e-3 via the weak greedy set {1}; sigma_1 = 1.
  auto r = lebesgue_ratio(LebesgueKind::L, CoeffVector(2, {1, 2 - 1e-3}), 1, 0.5, make_lp_norm(1));
  EXPECT_NEAR(r.ratio(), 2 - 1e-3, 1e-12);
  EXPECT_EQ(r.lambda, (IndexSet{1}));
}

TEST(Ratio, HintCapsDenominator) {
  auto o = make_lp_norm(2);
  CoeffVector x(3, {3, 1, 2});
  ApproxHint h{{1}, {2.0}};
  EXPECT_NEAR(hint_value(x, h, o), std::sqrt(1 + 1 + 4), 1e-12);
  // sigma_1 = sqrt 5 is already below the hint.
  auto r = lebesgue_ratio(LebesgueKind::L, x, 1, 1.0, o, {}, {}, &h);
  EXPECT_NEAR(r.denominator, std::sqrt(5.0), 1e-12);
}

TEST(EstimateL, OrderZeroIsOne) {
  EXPECT_NEAR(estimate_L(0, 0.5, make_lp_norm(1), fam(4, 50)).lower_bound, 1.0, 1e-12);
}

TEST(EstimateL, L1ReachesInverseTau) {
  auto e = estimate_L(1, 0.5, make_lp_norm(1), fam(6));
  EXPECT_GE(e.lower_bound, 2.0 - 1e-2);
  EXPECT_LE(e.lower_bound, 2.0 + 1e-9);
  auto t = estimate_L_tilde(1, 0.5, make_lp_norm(1), fam(6));
  EXPECT_GE(t.lower_bound, 2.0 - 1e-2);
}

TEST(EstimateL, L2GreedyIsOne) {
  auto o = make_lp_norm(2);
  for (int m : {1, 2}) {
    EXPECT_NEAR(estimate_L(m, 1.0, o, fam(6)).lower_bound, 1.0, 1e-9);
    EXPECT_NEAR(estimate_L_tilde(m, 1.0, o, fam(6)).lower_bound, 1.0, 1e-9);
    EXPECT_NEAR(estimate_L_ch(m, 1.0, o, fam(6, 50)).lower_bound, 1.0, 1e-9);
  }
}

TEST(EstimateL, WitnessReevaluates) {
  auto o = make_lp_norm(1);
  auto e = estimate_L(2, 0.5, o, fam(6));
  ASSERT_TRUE(e.has_witness);
  double gamma = oracle::gamma(oracle::dense(e.witness.x), 2, 0.5, 1.0);
  double sigma = oracle::sigma(oracle::dense(e.witness.x), 2, 1.0);
  EXPECT_NEAR(e.lower_bound, gamma / sigma, 1e-12);
}

TEST(EstimateL, OrderingOnMatchedFamilies) {
  for (const char* spec : {"lp:1", "lp:inf", "max:[lp:1,lp:2]"}) {
    auto o = parse_norm_spec(spec, 5);
    auto f = fam(5, 60, false);
    for (int m : {1, 2}) {
      double L = estimate_L(m, 0.5, o, f).lower_bound;
      EXPECT_LE(estimate_L_tilde(m, 0.5, o, f).lower_bound, L + 1e-9) << spec;
      EXPECT_LE(estimate_L_ch(m, 0.5, o, f).lower_bound, L + 1e-6) << spec;
      EXPECT_LE(estimate_L_re(m, 0.5, o, f).lower_bound, estimate_L_hat_re(m, 0.5, o, f).lower_bound + 1e-12)
          << spec;
    }
  }
}

TEST(EstimateL, HatReMatchesNuPrimeAtOrderOne) {
  for (double p : {1.0, 2.0}) {
    auto o = make_lp_norm(p);
    for (double tau : {0.5, 1.0}) {
      FamilyConfig cf;
      cf.dim = 5;
      double nup = estimate_nu_left_prime(1, tau, o, cf).lower_bound;
      double L = estimate_L_hat_re(1, tau, o, fam(5)).lower_bound;
      EXPECT_NEAR(L, nup / tau, 1e-3) << p << ' ' << tau;
    }
  }
}

TEST(Lifts, ZLiftCertifiesNuOverTau) {
  auto o = make_lp_norm(1);
  Witness w;
  w.x = CoeffVector(3);
  w.A = {1};
  w.B = {2};
  w.eps = SignPattern::all_plus(w.A);
  w.delta = SignPattern::all_plus(w.B);
  double tau = 0.5;
  auto z = z_lift(w, 1, tau, 6);
  ASSERT_TRUE(z.has_value());
  EXPECT_TRUE(is_weak_greedy_set(z->y, z->greedy, tau));
  EXPECT_EQ(z->hint.support.size(), 1u);
  EXPECT_NEAR(lift_ratio(*z, o), constant_ratio(ConstantKind::nu, w, o, tau) / tau, 1e-12);
}

TEST(Lifts, GcLeftLeavesShiftedResidual) {
  auto o = make_lp_norm(2);
  CoeffVector x(4, {0.9, 0.2});
  auto l = gc_left_lift(x, {1}, 2, 1.0, 6);
  ASSERT_TRUE(l.has_value());
  EXPECT_TRUE(is_weak_greedy_set(l->y, l->greedy, 1.0));
  CoeffVector residual = l->y;
  for (std::size_t i = 0; i < l->hint.support.size(); ++i) residual.add(l->hint.support[i], -l->hint.coeffs[i]);
  EXPECT_NEAR(o(residual), o(x), 1e-12);
}

TEST(Lifts, DoNotFitReturnsNothing) {
  Witness w;
  w.x = CoeffVector(3);
  w.A = {1, 2};
  w.B = {3};
  w.eps = SignPattern::all_plus(w.A);
  w.delta = SignPattern::all_plus(w.B);
  EXPECT_FALSE(z_lift(w, 2, 0.5, 3).has_value());
}

TEST(Family, RandomIsSeeded) {
  auto a = random_family(6, 20, 0.5, 4), b = random_family(6, 20, 0.5, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].x, b[i].x);
}
