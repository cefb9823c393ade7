#include <gtest/gtest.h>

#include <cmath>

#include "greedylab/norm_spec.hpp"
#include "greedylab/normed_space.hpp"
#include "greedylab/rng.hpp"
#include "oracles.hpp"

using namespace greedylab;

TEST(IndexSet, SortsAndRejectsDuplicates) {
  EXPECT_THROW((IndexSet{3, 1, 3}), DomainError);
  IndexSet s{3, 1, 2};
  EXPECT_EQ(s.indices(), (std::vector<Index>{1, 2, 3}));
  EXPECT_EQ(s.max(), 3);
  EXPECT_EQ(IndexSet{}.max(), 0);
  EXPECT_TRUE(IndexSet::range(3, 2).empty());
}

TEST(IndexSet, Algebra) {
  IndexSet a{1, 2, 5}, b{2, 7};
  EXPECT_EQ(set_union(a, b), (IndexSet{1, 2, 5, 7}));
  EXPECT_EQ(set_intersection(a, b), (IndexSet{2}));
  EXPECT_EQ(set_difference(a, b), (IndexSet{1, 5}));
  EXPECT_FALSE(disjoint(a, b));
  EXPECT_TRUE(precedes(IndexSet{1, 2}, IndexSet{3}));
  EXPECT_FALSE(precedes(IndexSet{1, 4}, IndexSet{3}));
  EXPECT_TRUE(precedes(IndexSet{}, IndexSet{1}));
}

TEST(SignPattern, MaskBitsFollowIndexOrder) {
  IndexSet s{2, 5, 9};
  SignPattern p(s, 0b101);
  EXPECT_EQ(p.at(2), -1);
  EXPECT_EQ(p.at(5), 1);
  EXPECT_EQ(p.at(9), -1);
}

TEST(CoeffVector, OutOfRangeThrows) {
  CoeffVector x(3, {1.0, 2.0});
  EXPECT_EQ(x[2], 2.0);
  EXPECT_EQ(x[3], 0.0);
  EXPECT_THROW(x[4], DomainError);
  EXPECT_THROW(x[0], DomainError);
  EXPECT_EQ(x.support(), (IndexSet{1, 2}));
}

TEST(LpNorm, Values) {
  EXPECT_DOUBLE_EQ(make_lp_norm(2)(CoeffVector(2, {3, 4})), 5.0);
  EXPECT_DOUBLE_EQ(make_lp_norm(1)(CoeffVector(2, {1, 1.9})), 2.9);
  EXPECT_DOUBLE_EQ(make_lp_norm(HUGE_VAL)(CoeffVector(2, {1, 1.9})), 1.9);
  EXPECT_DOUBLE_EQ(make_lp_norm(2)(CoeffVector(3, {1})), 1.0);
  EXPECT_DOUBLE_EQ(make_lp_norm(HUGE_VAL)(CoeffVector(3, {3, 1, 2})), 3.0);
  EXPECT_DOUBLE_EQ(make_lp_norm(HUGE_VAL)(CoeffVector(2, {-5, 4})), 5.0);
  for (double p : {1.0, 1.5, 2.0, 3.0, HUGE_VAL}) EXPECT_EQ(make_lp_norm(p)(CoeffVector(4)), 0.0);
}

TEST(LpNorm, MatchesReferenceOnRandomVectors) {
  Rng rng(7);
  for (double p : {1.0, 1.5, 2.0, 4.0, HUGE_VAL}) {
    auto n = make_lp_norm(p);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> v(6);
      for (auto& c : v) c = rng.uniform(-3, 3);
      EXPECT_NEAR(n(CoeffVector::from_dense(v)), oracle::lp(v, p), 1e-12 * (1 + oracle::lp(v, p)));
    }
  }
}

TEST(LpNorm, MetadataIsUnconditional) {
  const auto& m = make_lp_norm(1.5).metadata();
  EXPECT_TRUE(m.lattice);
  EXPECT_TRUE(m.symmetric);
  EXPECT_EQ(m.K_b.value_or(-1), 1.0);
  EXPECT_EQ(m.K_s.value_or(-1), 1.0);
  EXPECT_EQ(m.C_b.value_or(-1), 1.0);
}

TEST(WeightedTail, SmallExamples) {
  // Tail sums of (1, -1): |1 - 1| and |-1|; l2 part sqrt 2.
  EXPECT_DOUBLE_EQ(make_weighted_tail_norm({1, 1})(CoeffVector(2, {1, -1})), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(make_weighted_tail_norm({1, 1, 1})(CoeffVector(3, {1, -1, 0})), std::sqrt(2.0));
  std::vector<double> w{0.3, 2.5, 0.7};
  for (Index n = 1; n <= 3; ++n) {
    CoeffVector e(3);
    e.set(n, 1.0);
    EXPECT_DOUBLE_EQ(make_weighted_tail_norm(w)(e), std::max(w[static_cast<std::size_t>(n - 1)], 1.0));
  }
}

TEST(WeightedTail, TailSumSupReference) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(7), w(7);
    for (auto& c : x) c = rng.uniform(-1, 1);
    for (auto& c : w) c = rng.uniform(0, 2);
    double ref = 0.0;
    for (std::size_t N = 0; N < x.size(); ++N) {
      double s = 0.0;
      for (std::size_t k = N; k < x.size(); ++k) s += w[k] * x[k];
      ref = std::max(ref, std::abs(s));
    }
    EXPECT_NEAR(tail_sum_sup(x, w), ref, 1e-12);
  }
}

TEST(WeightedTail, CounterexamplePrefixPair) {
  auto o = parse_norm_spec("weighted_tail:counterexample", 6);
  double v = o(indicator(6, {1, 2}, SignPattern::all_plus({1, 2})));
  EXPECT_LE(v, 2.0 * std::sqrt(2.0));
  EXPECT_GE(v, std::sqrt(2.0));
}

TEST(WeightedTail, TailLambdaReference) {
  std::vector<double> w{1.0, 0.2, 0.9, 0.1};
  // Sorted weights 1, .9, .2, .1: prefix sums over sqrt k.
  double ref = std::max({1.0, 1.0 / 1.0, 1.9 / std::sqrt(2.0), 2.1 / std::sqrt(3.0), 2.2 / 2.0});
  EXPECT_NEAR(tail_lambda(w), ref, 1e-15);
}

TEST(MaxNorm, IsPointwiseMax) {
  auto o = make_max_norm({make_lp_norm(1), make_lp_norm(2)});
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> v(5);
    for (auto& c : v) c = rng.uniform(-1, 1);
    EXPECT_DOUBLE_EQ(o(CoeffVector::from_dense(v)), std::max(oracle::lp(v, 1), oracle::lp(v, 2)));
  }
}

TEST(NormSpec, ParsesForms) {
  EXPECT_DOUBLE_EQ(parse_norm_spec("lp:2", 3)(CoeffVector(3, {3, 4})), 5.0);
  EXPECT_DOUBLE_EQ(parse_norm_spec("lp:inf", 3)(CoeffVector(3, {3, 4})), 4.0);
  EXPECT_DOUBLE_EQ(parse_norm_spec("weighted_tail:w=1;1", 2)(CoeffVector(2, {1, -1})), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(parse_norm_spec("max:[lp:1,lp:inf]", 2)(CoeffVector(2, {1, 1})), 2.0);
  EXPECT_THROW(parse_norm_spec("lp:0.5", 3), DomainError);
  EXPECT_THROW(parse_norm_spec("nonsense", 3), DomainError);
}

TEST(NormSpec, MetadataOverride) {
  auto o = parse_norm_spec("lp:2@C_b=0.5,K_s=3", 4);
  EXPECT_EQ(o.metadata().C_b.value_or(-1), 0.5);
  EXPECT_EQ(o.metadata().K_s.value_or(-1), 3.0);
  EXPECT_DOUBLE_EQ(o(CoeffVector(2, {3, 4})), 5.0);
}

// Norm axioms on every built-in oracle.
class NormAxioms : public ::testing::TestWithParam<const char*> {};

TEST_P(NormAxioms, HomogeneityAndTriangle) {
  auto o = parse_norm_spec(GetParam(), 6);
  Rng rng(derive_seed(5, hash_string(GetParam())));
  for (int t = 0; t < 300; ++t) {
    std::vector<double> a(6), b(6);
    for (auto& c : a) c = rng.uniform(-2, 2);
    for (auto& c : b) c = rng.uniform(-2, 2);
    auto x = CoeffVector::from_dense(a), y = CoeffVector::from_dense(b);
    double s = rng.uniform(-3, 3);
    EXPECT_NEAR(o(s * x), std::abs(s) * o(x), 1e-12 * (1 + o(x)));
    EXPECT_LE(o(x + y), o(x) + o(y) + 1e-12);
    EXPECT_GE(o(x), 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(BuiltIn, NormAxioms,
                         ::testing::Values("lp:1", "lp:2", "lp:3", "lp:inf", "weighted_tail:counterexample",
                                           "weighted_tail:w=1;0.5;2;0.1;1;3", "max:[lp:1,lp:2]"));
