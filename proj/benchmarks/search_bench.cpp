#include <aperiodica/search.hpp>

#include <benchmark/benchmark.h>

using namespace aperiodica;

namespace {

void BM_FindDeviantHalfFib(benchmark::State& state) {
  auto H = make_half_fibonacci();
  const Scalar rho = *H->density().exact;
  const Region window = Region::interval(Scalar(0), Scalar(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_deviant(*H, rho, Scalar(1000), window, 4'000'000));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FindDeviantHalfFib)->RangeMultiplier(10)->Range(1000, 1'000'000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_VerifyShiftRobust(benchmark::State& state) {
  auto H = make_half_fibonacci();
  const Scalar rho = *H->density().exact;
  const Region E = Region::interval(Scalar(0), Scalar(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_shift_robust(*H, rho, E, Scalar(8)));
}
BENCHMARK(BM_VerifyShiftRobust)->RangeMultiplier(10)->Range(100, 100'000)->Unit(benchmark::kMicrosecond);

void BM_ShiftRobustDeviant(benchmark::State& state) {
  auto H = make_half_fibonacci();
  const Scalar rho = *H->density().exact;
  const Region window = Region::interval(Scalar(0), Scalar(20'000));
  for (auto _ : state)
    benchmark::DoNotOptimize(find_shift_robust_deviant(*H, rho, Scalar::fraction(1, 4), Scalar(2), window, 4'000'000));
}
BENCHMARK(BM_ShiftRobustDeviant)->Unit(benchmark::kMillisecond);

void BM_RepetitivityFib(benchmark::State& state) {
  auto F = make_fibonacci();
  const Region patch = Region::interval(Scalar(0), Scalar(state.range(0)));
  const Region window = Region::interval(Scalar(-50'000), Scalar(50'000));
  for (auto _ : state) benchmark::DoNotOptimize(repetitivity_radius(*F, patch, window));
}
BENCHMARK(BM_RepetitivityFib)->Arg(5)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
