#include <aperiodica/discrepancy.hpp>
#include <aperiodica/pointsets.hpp>

#include <benchmark/benchmark.h>

using namespace aperiodica;

namespace {

void BM_FibonacciPointsIn(benchmark::State& state) {
  auto F = make_fibonacci();
  for (auto _ : state) benchmark::DoNotOptimize(F->points_in(Scalar(0), Scalar(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FibonacciPointsIn)->RangeMultiplier(10)->Range(100, 1'000'000)->Unit(benchmark::kMicrosecond);

void BM_FibonacciCount(benchmark::State& state) {
  auto F = make_fibonacci();
  for (auto _ : state) benchmark::DoNotOptimize(F->count_between(Scalar(0), Scalar(state.range(0))));
}
BENCHMARK(BM_FibonacciCount)->RangeMultiplier(100)->Range(100, 100'000'000);

void BM_DiscrepancyReportExampleL(benchmark::State& state) {
  auto L = make_example_l();
  const Region Q = Region::interval(Scalar(0), Scalar((1LL << state.range(0)) + 1));
  for (auto _ : state) benchmark::DoNotOptimize(discrepancy_report(*L, Scalar(1), Q));
}
BENCHMARK(BM_DiscrepancyReportExampleL)->DenseRange(4, 40, 12);

void BM_TubeMeasure1D(benchmark::State& state) {
  std::vector<Box> boxes;
  for (long long i = 0; i < state.range(0); ++i) boxes.push_back(Box::interval(Scalar(3 * i), Scalar(3 * i + 2)));
  const Region E(std::move(boxes));
  for (auto _ : state) benchmark::DoNotOptimize(tube_measure(E, Scalar::fraction(3, 4)));
}
BENCHMARK(BM_TubeMeasure1D)->RangeMultiplier(8)->Range(8, 4096);

}  // namespace

BENCHMARK_MAIN();
