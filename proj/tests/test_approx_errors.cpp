#include <gtest/gtest.h>

#include <cmath>

#include "greedylab/approx_errors.hpp"
#include "greedylab/norm_spec.hpp"
#include "greedylab/rng.hpp"
#include "oracles.hpp"

using namespace greedylab;

TEST(BestOnSupport, ClosedForms) {
  auto r = best_coeffs_on_support(CoeffVector(3, {3, 1, 2}), {1}, make_lp_norm(2));
  ASSERT_EQ(r.coeffs.size(), 1u);
  EXPECT_DOUBLE_EQ(r.coeffs[0], 3.0);
  EXPECT_DOUBLE_EQ(r.value, std::sqrt(5.0));
  r = best_coeffs_on_support(CoeffVector(2, {1, 1.9}), {2}, make_lp_norm(1));
  EXPECT_DOUBLE_EQ(r.coeffs[0], 1.9);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
}

TEST(BestOnSupport, SupIsOneDimensional) {
  // min_a max(|3 - a|, 1) = 1 for a in [2, 4].
  SolverOptions o;
  o.force_iterative = true;
  auto r = best_coeffs_on_support(CoeffVector(2, {3, 1}), {1}, make_lp_norm(HUGE_VAL), o);
  EXPECT_NEAR(r.value, 1.0, 1e-9);
  EXPECT_GE(r.coeffs[0], 2.0 - 1e-9);
  EXPECT_LE(r.coeffs[0], 4.0 + 1e-9);
  auto again = best_coeffs_on_support(CoeffVector(2, {3, 1}), {1}, make_lp_norm(HUGE_VAL), o);
  EXPECT_EQ(r.coeffs, again.coeffs);
}

TEST(BestOnSupport, IterativeMatchesClosedFormOnLattice) {
  Rng rng(4);
  SolverOptions it;
  it.force_iterative = true;
  for (double p : {1.0, 2.0, 3.0}) {
    auto o = make_lp_norm(p);
    for (int t = 0; t < 40; ++t) {
      std::vector<double> v(5);
      for (auto& c : v) c = rng.uniform(-1, 1);
      auto x = CoeffVector::from_dense(v);
      IndexSet s{1, 4};
      double closed = best_coeffs_on_support(x, s, o).value;
      auto r = best_coeffs_on_support(x, s, o, it);
      EXPECT_NEAR(r.value, closed, 1e-6 * (1 + closed));
      EXPECT_GE(r.value, closed - 1e-12);
    }
  }
}

TEST(Sigma, Values) {
  auto l1 = make_lp_norm(1);
  CoeffVector x(2, {1, 1.9});
  EXPECT_DOUBLE_EQ(sigma_m(x, 1, l1).value, 1.0);
  EXPECT_DOUBLE_EQ(sigma_m(x, 0, l1).value, 2.9);
  EXPECT_DOUBLE_EQ(sigma_m(x, 2, l1).value, 0.0);
  EXPECT_DOUBLE_EQ(sigma_tilde_m(x, 1, l1).value, 1.0);
  EXPECT_DOUBLE_EQ(sigma_tilde_m(x, 0, l1).value, 2.9);
  CoeffVector y(2, {0.1, 5});
  EXPECT_DOUBLE_EQ(sigma_hat_m(y, 1, l1).value, std::min(l1(y), 5.0));
  EXPECT_DOUBLE_EQ(sigma_hat_m(y, 0, l1).value, l1(y));
}

TEST(Sigma, MatchesBruteForceOnLp) {
  Rng rng(8);
  for (double p : {1.0, 2.0, HUGE_VAL}) {
    auto o = make_lp_norm(p);
    for (int t = 0; t < 150; ++t) {
      std::vector<double> v(6);
      for (auto& c : v) c = rng.below(4) ? rng.uniform(-1, 1) : 0.0;
      int m = static_cast<int>(rng.below(4));
      EXPECT_DOUBLE_EQ(sigma_m(CoeffVector::from_dense(v), m, o).value, oracle::sigma(v, m, p));
    }
  }
}

TEST(Sigma, Ordering) {
  Rng rng(9);
  for (const char* spec : {"lp:1", "lp:2", "weighted_tail:w=1;2;0.5;1;0.3", "max:[lp:1,lp:2]"}) {
    auto o = parse_norm_spec(spec, 5);
    for (int t = 0; t < 20; ++t) {
      std::vector<double> v(5);
      for (auto& c : v) c = rng.uniform(-1, 1);
      auto x = CoeffVector::from_dense(v);
      double prev = o(x);
      for (int m = 1; m <= 3; ++m) {
        double s = sigma_m(x, m, o).value, st = sigma_tilde_m(x, m, o).value;
        double sh = sigma_hat_m(x, m, o).value;
        EXPECT_LE(s, st + 1e-9) << spec;
        EXPECT_LE(s, sh + 1e-9) << spec;
        EXPECT_LE(sh, prev + 1e-15) << spec;
        prev = sh;
      }
    }
  }
}

TEST(Chebyshev, Values) {
  auto l2 = make_lp_norm(2);
  EXPECT_NEAR(chebyshev_residual(CoeffVector(3, {3, 1, 2}), 1, 1.0, l2).value, std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(chebyshev_residual(CoeffVector(3, {3, 1, 2}), 3, 1.0, l2).value, 0.0, 1e-12);
}

TEST(Chebyshev, NeverAboveGreedyResidual) {
  Rng rng(10);
  for (const char* spec : {"lp:1", "lp:inf", "weighted_tail:w=1;2;0.5;1;0.3"}) {
    auto o = parse_norm_spec(spec, 5);
    for (int t = 0; t < 20; ++t) {
      std::vector<double> v(5);
      for (auto& c : v) c = rng.uniform(-1, 1);
      auto x = CoeffVector::from_dense(v);
      double tau = rng.uniform(0.3, 1.0);
      EXPECT_LE(chebyshev_residual(x, 2, tau, o).value, greedy_residual(x, 2, tau, o).value + 1e-12) << spec;
    }
  }
}
