#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "greedylab/normed_space.hpp"

namespace greedylab {

// Block lengths outgrow 64 bits near the 20th block.
__extension__ typedef unsigned __int128 Count;

std::string count_to_string(Count c);
double count_to_double(Count c);

double ce_t(double n);
double ce_L(double n);
double ce_a(double n);

// sum_{n=lo}^{hi} n^{-1/2}; 0 when hi < lo. Exact summation below 1000,
// Euler-Maclaurin midpoint form (error < 1e-12) above.
double t_range_sum(Count lo, Count hi);

struct WeightSequence {
  int J = 0;
  int requested = 0;
  // Construction stopped before `requested` blocks because N_{J+1} overflows.
  bool j_max_reached = false;
  std::vector<Count> N;                 // N[j-1] = N_j
  std::vector<double> b;                // b[j-1] = b_j
  std::vector<double> block_weight_sum;  // sum of the weights in B_j

  // Global 1-based index of the a-slot of block j.
  Count lead_index(int j) const;
  // Total length of blocks 1..J.
  Count length() const;
  // Weight at a global index; role is 0 for an a-slot, 1 inside B_j.
  double weight(Count g, int* block = nullptr, int* role = nullptr) const;
  std::vector<double> dense_prefix(std::size_t len) const;
};

WeightSequence build_weights(int J);

// True when N_j - 1 violates the construction constraints (or equals the
// ratio floor), i.e. N_j is the smallest admissible value.
bool minimality_holds(const WeightSequence& w, int j);

struct Block {
  double lead = 0.0;
  double repeat = 0.0;
  Count count = 0;
};

struct BlockVector {
  std::vector<Block> blocks;
  int K() const { return static_cast<int>(blocks.size()); }
};

BlockVector make_block_vector(int K, const WeightSequence& w);
// Dense expansion; throws BudgetError above dense_budget entries.
CoeffVector expand(const BlockVector& x, std::size_t dense_budget = 10'000'000);
BlockVector threshold(const BlockVector& x, double eps);

struct BlockNormParts {
  double tail_sup = 0.0;
  double l2 = 0.0;
  double value = 0.0;
};

BlockNormParts block_norm_parts(const BlockVector& x, const WeightSequence& w);
double block_norm(const BlockVector& x, const WeightSequence& w);
// Tail sum sum_{n >= lead_index(j)} w_n x_n.
double block_tail_from_lead(const BlockVector& x, const WeightSequence& w, int j);

struct QgViolation {
  int k = 0;
  int K = 0;
  double eps = 0.0;
  double ratio = 0.0;  // ||T_eps x|| / ||x||
  BlockNormParts thresholded;
  BlockNormParts original;
  // Tail sum of T_eps x from the lead of block k+1.
  double tail_after_k = 0.0;
  // sum_{n=k+1}^K 1/(n log(n+1)), summed directly.
  double analytic_lower_bound = 0.0;
  double seminorm_ratio = 0.0;  // ||T_eps x||_1 / ||x||_1
};

QgViolation qg_violation_ratio(int k, const WeightSequence& w, int K);

struct UniformAReport {
  int m = 0;
  std::size_t prefix = 0;
  int exhaustive_max_size = 0;
  std::size_t exhaustive_sets = 0;
  std::size_t trials = 0;
  double exhaustive_max_ratio = 0.0;
  double random_max_ratio = 0.0;
  double max_ratio = 0.0;
  IndexSet witness;
  std::vector<int> witness_signs;
  // exact_sup_by_size[k-1] = max over |A| = k inside the prefix.
  std::vector<double> exact_sup_by_size;
  bool bound_holds = false;  // max_ratio <= 2
};

UniformAReport uniform_A_check(int m, const WeightSequence& w, std::size_t trials, std::uint64_t seed,
                               std::size_t prefix = 200, int exhaustive_max_size = 3);

void write_weights_csv(const std::filesystem::path& path, const std::vector<double>& weights);
std::vector<double> read_weights_csv(const std::filesystem::path& path);

}  // namespace greedylab
