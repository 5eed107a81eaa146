#include "pgrouplab/bounds.hpp"
#include "pgrouplab/fplin.hpp"
#include "pgrouplab/freelie.hpp"
#include "pgrouplab/groups.hpp"
#include "pgrouplab/qcombin.hpp"
#include "pgrouplab/submod.hpp"
#include "pgrouplab/walk.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace pgl;

static void BM_GaussBinom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcombin::gauss_binom(n, n / 2, 7));
}
BENCHMARK(BM_GaussBinom)->Arg(16)->Arg(64)->Arg(256);

static void BM_LyndonWords(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(freelie::lyndon_words(3, n));
}
BENCHMARK(BM_LyndonWords)->Arg(6)->Arg(9)->Arg(12);

static void BM_StructuralSm(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const int m = static_cast<int>(state.range(0));
  std::vector<fplin::FpMat> mats;
  for (int i = 0; i < 64; ++i) mats.push_back(fplin::random_gl(m, 5, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(submod::structural_sm(submod::decompose(mats[i++ % mats.size()])));
}
BENCHMARK(BM_StructuralSm)->Arg(3)->Arg(6)->Arg(8);

static void BM_InvariantSubspaceBruteForce(benchmark::State& state) {
  std::mt19937_64 rng(6);
  auto g = fplin::random_gl(static_cast<int>(state.range(0)), 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fplin::invariant_subspace_count(g));
}
BENCHMARK(BM_InvariantSubspaceBruteForce)->Arg(3)->Arg(4);

static void BM_AutOrder(benchmark::State& state) {
  auto catalog = groups::bundled_catalog("order16");
  for (auto _ : state)
    for (const auto& e : catalog) benchmark::DoNotOptimize(groups::aut_order(e.group));
}
BENCHMARK(BM_AutOrder)->Unit(benchmark::kMillisecond);

static void BM_Census(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(groups::census(2, 4));
}
BENCHMARK(BM_Census)->Unit(benchmark::kMillisecond);

static void BM_NestedSum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bounds::gaussprods_Ai(2, 6, 4, 1, 3));
}
BENCHMARK(BM_NestedSum)->Unit(benchmark::kMillisecond);

static void BM_WalkEvolve(benchmark::State& state) {
  auto spec = walk::WalkSpec::scalar(static_cast<int>(state.range(0)), 2, 2, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(walk::evolve_exact(spec, 100));
}
BENCHMARK(BM_WalkEvolve)->Arg(31)->Arg(127)->Unit(benchmark::kMillisecond);

static void BM_WalkFourier(benchmark::State& state) {
  auto spec = walk::WalkSpec::scalar(static_cast<int>(state.range(0)), 2, 2, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(walk::fourier_of_walk(spec, 100));
}
BENCHMARK(BM_WalkFourier)->Arg(31)->Arg(127)->Unit(benchmark::kMillisecond);

static void BM_WalkTransform(benchmark::State& state) {
  auto spec = walk::WalkSpec::scalar(static_cast<int>(state.range(0)), 2, 2, 1.0);
  auto dist = walk::evolve_exact(spec, 10);
  for (auto _ : state) benchmark::DoNotOptimize(walk::transform(dist));
}
BENCHMARK(BM_WalkTransform)->Arg(31)->Arg(127)->Unit(benchmark::kMillisecond);

static void BM_MonteCarlo(benchmark::State& state) {
  auto spec = walk::WalkSpec::scalar(31, 2, 2, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(walk::monte_carlo(spec, 50, 100000, 1));
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
