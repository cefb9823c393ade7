#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "greedylab/counterexample_space.hpp"
#include "greedylab/norm_spec.hpp"

using namespace greedylab;

namespace {

const WeightSequence& weights() {
  static WeightSequence w = build_weights(40);
  return w;
}

}  // namespace

TEST(Weights, FirstBlock) {
  const auto& w = weights();
  ASSERT_GE(w.J, 20);
  EXPECT_EQ(count_to_string(w.N[0]), "11");
  // Sum of n^{-1/2} for n = 1..11 computed directly.
  double s = 0.0;
  for (int n = 1; n <= 11; ++n) s += 1.0 / std::sqrt(n);
  EXPECT_NEAR(s, 5.32, 0.01);
  double a1 = 1.0 / std::log(2.0);
  EXPECT_NEAR(w.b[0], a1 * 1.0 / s, 1e-12);
}

TEST(Weights, MinimalityAndGrowth) {
  const auto& w = weights();
  for (int j = 1; j <= w.J; ++j) EXPECT_TRUE(minimality_holds(w, j)) << j;
  for (int j = 2; j <= w.J; ++j) {
    EXPECT_GT(w.N[static_cast<std::size_t>(j - 1)], 10 * w.N[static_cast<std::size_t>(j - 2)]);
    EXPECT_LT(w.b[static_cast<std::size_t>(j - 1)], w.b[static_cast<std::size_t>(j - 2)]);
  }
}

TEST(Weights, TRangeSum) {
  double s = 0.0;
  for (int n = 17; n <= 5000; ++n) s += 1.0 / std::sqrt(n);
  EXPECT_NEAR(t_range_sum(17, 5000), s, 1e-10);
  EXPECT_EQ(t_range_sum(5, 4), 0.0);
}

TEST(Weights, CsvRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "greedylab_weights_test.csv";
  auto prefix = weights().dense_prefix(50);
  write_weights_csv(path, prefix);
  EXPECT_EQ(read_weights_csv(path), prefix);
  std::filesystem::remove(path);
}

TEST(BlockVector, SingleBlockExpansion) {
  const auto& w = weights();
  auto x = make_block_vector(1, w);
  auto d = expand(x);
  ASSERT_EQ(d.ambient_dim(), 12);
  EXPECT_NEAR(d[1], 1.0 / std::log(2.0), 1e-15);
  for (Index n = 2; n <= 12; ++n) EXPECT_EQ(d[n], x.blocks[0].repeat);
  EXPECT_EQ(x.blocks[0].repeat, -w.b[0]);
}

TEST(BlockVector, NormAgreesWithDense) {
  const auto& w = weights();
  for (int K = 1; K <= 3; ++K) {
    auto x = make_block_vector(K, w);
    auto d = expand(x);
    auto o = make_weighted_tail_norm(w.dense_prefix(static_cast<std::size_t>(d.ambient_dim())));
    EXPECT_NEAR(block_norm(x, w), o(d), 1e-9) << K;
    auto tx = threshold(x, 0.5 * (w.b[0] + w.b[1]));
    EXPECT_NEAR(block_norm(tx, w), o(expand(tx)), 1e-9) << K;
  }
  EXPECT_EQ(block_norm(BlockVector{}, w), 0.0);
}

TEST(BlockVector, L2FromBlockSums) {
  const auto& w = weights();
  auto x = make_block_vector(25, w);
  double s = 0.0;
  for (const auto& b : x.blocks) s += b.lead * b.lead + count_to_double(b.count) * b.repeat * b.repeat;
  EXPECT_NEAR(block_norm_parts(x, w).l2, std::sqrt(s), 1e-12);
}

TEST(QgViolation, ThresholdedTailMatchesAnalyticSum) {
  const auto& w = weights();
  for (int K = 3; K <= w.J; ++K) {
    auto q = qg_violation_ratio(2, w, K);
    double ref = 0.0;
    for (int n = 3; n <= K; ++n) ref += 1.0 / (n * std::log(n + 1.0));
    EXPECT_NEAR(q.tail_after_k, ref, 1e-6) << K;
  }
}

TEST(QgViolation, SeminormRatioGrowsAfterDip) {
  // Thresholded seminorm is max(|a_1 - S_K|, S_K) with S_K the kept leads, so it dips until S_K > a_1 / 2.
  const auto& w = weights();
  double a1 = 1.0 / std::log(2.0);
  double prev = 0.0;
  for (int K = 3; K <= w.J; ++K) {
    auto q = qg_violation_ratio(2, w, K);
    EXPECT_GE(q.thresholded.tail_sup, std::max(q.tail_after_k, std::abs(a1 - q.tail_after_k)) - 1e-9) << K;
    if (q.tail_after_k > 0.5 * a1) {
      EXPECT_GT(q.seminorm_ratio, prev) << K;
    }
    prev = q.seminorm_ratio;
  }
}

TEST(QgViolation, ThresholdDropsLaterBlocks) {
  const auto& w = weights();
  auto x = make_block_vector(6, w);
  auto tx = threshold(x, 0.5 * (w.b[1] + w.b[2]));
  for (int j = 3; j <= 6; ++j) EXPECT_EQ(tx.blocks[static_cast<std::size_t>(j - 1)].repeat, 0.0) << j;
  EXPECT_NE(tx.blocks[1].repeat, 0.0);
}

TEST(UniformA, SmallSetsWithinTwo) {
  auto r = uniform_A_check(1, weights(), 2'000, 5, 60, 2);
  EXPECT_TRUE(r.bound_holds);
  EXPECT_LE(r.max_ratio, 2.0);
  EXPECT_GE(r.max_ratio, 1.0);
  EXPECT_EQ(r.exact_sup_by_size.front(), 1.0);
}
