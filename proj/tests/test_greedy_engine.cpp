#include <gtest/gtest.h>

#include <cmath>

#include "greedylab/greedy_engine.hpp"
#include "greedylab/rng.hpp"
#include "oracles.hpp"

using namespace greedylab;

namespace {
CoeffVector v312() { return CoeffVector(3, {3, 1, 2}); }
}  // namespace

TEST(WeakGreedy, SetMembership) {
  EXPECT_TRUE(is_weak_greedy_set(v312(), {1}, 1.0));
  EXPECT_FALSE(is_weak_greedy_set(v312(), {2}, 0.5));
  EXPECT_TRUE(is_weak_greedy_set(v312(), {3}, 0.5));
  EXPECT_TRUE(is_weak_greedy_set(v312(), {}, 0.5));
  EXPECT_THROW(check_tau(0.0), DomainError);
  EXPECT_THROW(check_tau(1.5), DomainError);
}

TEST(WeakGreedy, Enumeration) {
  auto f = weak_greedy_sets(v312(), 1, 1.0);
  EXPECT_EQ(f.sets, (std::vector<IndexSet>{{1}}));
  f = weak_greedy_sets(v312(), 1, 0.5);
  EXPECT_EQ(f.sets, (std::vector<IndexSet>{{1}, {3}}));
  f = weak_greedy_sets(v312(), 0, 0.3);
  EXPECT_EQ(f.sets, (std::vector<IndexSet>{IndexSet{}}));
}

TEST(WeakGreedy, EnumerationMatchesBruteForce) {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    std::vector<double> v(6);
    // Coarse levels force ties.
    for (auto& c : v) c = static_cast<double>(rng.below(4)) * (rng.sign());
    int m = 1 + static_cast<int>(rng.below(4));
    double tau = std::vector<double>{0.25, 0.5, 1.0}[rng.below(3)];
    auto x = CoeffVector::from_dense(v);
    std::size_t expect = 0;
    for (auto s : oracle::masks(6, m)) expect += oracle::weak_greedy(v, s, tau);
    auto fam = weak_greedy_sets(x, m, tau);
    EXPECT_EQ(fam.sets.size(), expect);
    EXPECT_EQ(count_weak_greedy_sets(x, m, tau), expect);
    for (const auto& s : fam.sets) EXPECT_TRUE(is_weak_greedy_set(x, s, tau));
  }
}

TEST(WeakGreedy, CapTruncates) {
  CoeffVector flat(12, std::vector<double>(12, 1.0));
  GreedyOptions o;
  o.cap = 10;
  auto f = weak_greedy_sets(flat, 6, 1.0, o);
  EXPECT_TRUE(f.truncated);
  EXPECT_EQ(f.sets.size(), 10u);
  EXPECT_FALSE(f.warnings.empty());
}

TEST(Projection, Values) {
  EXPECT_EQ(project(v312(), {1, 3}), CoeffVector(3, {3, 0, 2}));
  EXPECT_EQ(project(v312(), v312().support()), v312());
  EXPECT_TRUE(project(v312(), {4}).is_zero());
  EXPECT_EQ(partial_sum(v312(), 2), CoeffVector(3, {3, 1, 0}));
  EXPECT_TRUE(partial_sum(v312(), 0).is_zero());
  EXPECT_EQ(partial_sum(v312(), 7), v312());
  EXPECT_EQ(project(v312(), {1}) + project_complement(v312(), {1}), v312());
}

TEST(GreedyResidual, Values) {
  auto l1 = make_lp_norm(1), l2 = make_lp_norm(2);
  CoeffVector x(2, {1, 1.9});
  EXPECT_DOUBLE_EQ(greedy_residual(x, 1, 0.5, l1).value, 1.9);
  EXPECT_DOUBLE_EQ(greedy_residual(x, 0, 0.5, l1).value, l1(x));
  EXPECT_DOUBLE_EQ(greedy_residual(v312(), 1, 1.0, l2).value, std::sqrt(5.0));
}

TEST(GreedyResidual, MatchesBruteForceOnLp) {
  Rng rng(33);
  for (double p : {1.0, 2.0, HUGE_VAL}) {
    auto o = make_lp_norm(p);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> v(6);
      for (auto& c : v) c = rng.below(3) ? rng.uniform(-1, 1) : 0.5 * rng.sign();
      int m = 1 + static_cast<int>(rng.below(3));
      double tau = rng.uniform(0.2, 1.0);
      EXPECT_DOUBLE_EQ(greedy_residual(CoeffVector::from_dense(v), m, tau, o).value, oracle::gamma(v, m, tau, p));
    }
  }
}

TEST(Truncation, Values) {
  EXPECT_EQ(truncate(CoeffVector(3, {2, 0.5, -3}), 1.0), CoeffVector(3, {1, 0.5, -1}));
  EXPECT_EQ(truncate(CoeffVector(3, {2, 0.5, -3}), 3.0), CoeffVector(3, {2, 0.5, -3}));
  EXPECT_EQ(truncate(CoeffVector(1, {-2}), 1.0), CoeffVector(1, {-1}));
}

TEST(Threshold, Values) {
  EXPECT_EQ(threshold(CoeffVector(3, {2, 1, 0.5}), 1.0), CoeffVector(3, {2, 0, 0}));
  EXPECT_EQ(threshold(CoeffVector(3, {2, 1, 0.5}), 0.1), CoeffVector(3, {2, 1, 0.5}));
  EXPECT_TRUE(threshold(CoeffVector(3, {2, 1, 0.5}), 2.0).is_zero());
}

TEST(Threshold, SupportIsGreedy) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(8);
    for (auto& c : v) c = rng.uniform(-1, 1);
    auto x = CoeffVector::from_dense(v);
    auto s = threshold(x, rng.uniform(0, 1)).support();
    EXPECT_TRUE(is_weak_greedy_set(x, s, 1.0));
  }
}
