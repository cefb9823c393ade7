#include <benchmark/benchmark.h>

#include "greedylab/approx_errors.hpp"
#include "greedylab/constants_lab.hpp"
#include "greedylab/counterexample_space.hpp"
#include "greedylab/greedy_engine.hpp"
#include "greedylab/lebesgue_lab.hpp"
#include "greedylab/norm_spec.hpp"
#include "greedylab/rng.hpp"

using namespace greedylab;

namespace {

CoeffVector random_vector(int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (auto& c : v) c = rng.uniform(-1, 1);
  return CoeffVector::from_dense(std::move(v));
}

// Coarse levels so that weak greedy families are large.
CoeffVector tied_vector(int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (auto& c : v) c = static_cast<double>(1 + rng.below(3)) * rng.sign();
  return CoeffVector::from_dense(std::move(v));
}

const char* kSpecs[] = {"lp:1", "lp:2", "weighted_tail:counterexample", "max:[lp:1,lp:2]"};

}  // namespace

static void BM_NormEval(benchmark::State& st) {
  const char* spec = kSpecs[st.range(0)];
  int dim = static_cast<int>(st.range(1));
  auto o = parse_norm_spec(spec, dim);
  auto x = random_vector(dim, 1);
  for (auto _ : st) benchmark::DoNotOptimize(o(x));
  st.SetLabel(spec);
}
BENCHMARK(BM_NormEval)->ArgsProduct({{0, 1, 2, 3}, {8, 64, 512}});

static void BM_WeakGreedySets(benchmark::State& st) {
  auto x = tied_vector(12, 2);
  int m = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(weak_greedy_sets(x, m, 0.5).sets.size());
}
BENCHMARK(BM_WeakGreedySets)->DenseRange(1, 4);

static void BM_SigmaM(benchmark::State& st) {
  const char* spec = kSpecs[st.range(0)];
  auto o = parse_norm_spec(spec, 8);
  auto x = random_vector(8, 3);
  for (auto _ : st) benchmark::DoNotOptimize(sigma_m(x, 2, o).value);
  st.SetLabel(spec);
}
BENCHMARK(BM_SigmaM)->DenseRange(0, 3);

static void BM_GreedyResidual(benchmark::State& st) {
  auto o = make_lp_norm(1);
  auto x = tied_vector(10, 4);
  for (auto _ : st) benchmark::DoNotOptimize(greedy_residual(x, 3, 0.5, o).value);
}
BENCHMARK(BM_GreedyResidual);

static void BM_EstimateNu(benchmark::State& st) {
  auto o = parse_norm_spec("weighted_tail:counterexample", 6);
  FamilyConfig f;
  f.dim = 6;
  f.grid_budget = 500;
  f.random_vectors = 16;
  f.random_signs = 16;
  int m = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(estimate_nu(m, 0.5, o, f).lower_bound);
}
BENCHMARK(BM_EstimateNu)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

static void BM_EstimateL(benchmark::State& st) {
  auto o = make_lp_norm(1);
  LebesgueFamily f;
  f.dim = 6;
  f.random_vectors = 100;
  for (auto _ : st) benchmark::DoNotOptimize(estimate_L(2, 0.5, o, f).lower_bound);
}
BENCHMARK(BM_EstimateL)->Unit(benchmark::kMillisecond);

static void BM_BlockNorm(benchmark::State& st) {
  static const WeightSequence w = build_weights(64);
  int K = std::min(static_cast<int>(st.range(0)), w.J);
  auto x = make_block_vector(K, w);
  for (auto _ : st) benchmark::DoNotOptimize(block_norm(x, w));
  st.SetComplexityN(K);
}
BENCHMARK(BM_BlockNorm)->RangeMultiplier(2)->Range(2, 32)->Complexity();

static void BM_BuildWeights(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_weights(static_cast<int>(st.range(0))).J);
}
BENCHMARK(BM_BuildWeights)->Arg(20)->Arg(64);
BENCHMARK_MAIN();
