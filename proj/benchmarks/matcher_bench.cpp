#include <aperiodica/matcher.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace aperiodica;

namespace {

MatchInstance random_instance(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MatchInstance inst;
  for (std::size_t i = 0; i < n; ++i) {
    Point p(d), q(d);
    for (std::size_t k = 0; k < d; ++k) {
      p[k] = Scalar::fraction(static_cast<long long>(rng() % 100'000), 64);
      q[k] = Scalar::fraction(static_cast<long long>(rng() % 100'000), 64);
    }
    inst.left.push_back(std::move(p));
    inst.right.push_back(std::move(q));
  }
  return inst;
}

void BM_SortedFastPath(benchmark::State& state) {
  auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck_match(inst, {.certify = false}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SortedFastPath)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_GeneralSearch1D(benchmark::State& state) {
  auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck_match(inst, {.certify = false, .force_general = true}));
}
BENCHMARK(BM_GeneralSearch1D)->RangeMultiplier(2)->Range(16, 256);

void BM_GeneralSearch2D(benchmark::State& state) {
  auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck_match(inst));
}
BENCHMARK(BM_GeneralSearch2D)->RangeMultiplier(2)->Range(16, 128);

void BM_HopcroftKarpDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  BipartiteGraph g(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (int k = 0; k < 8; ++k) g.add_edge(u, rng() % n);
  for (auto _ : state) benchmark::DoNotOptimize(hopcroft_karp(g));
}
BENCHMARK(BM_HopcroftKarpDense)->RangeMultiplier(4)->Range(256, 65536);

}  // namespace

BENCHMARK_MAIN();
