#pragma once

#include "aperiodica/pointsets.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace aperiodica {

// Randomized property suites for the tube, counting and van Hove
// inequalities. Every suite is a deterministic function of its seed.
struct SuiteResult {
  std::string name;
  std::string property;
  std::size_t cases = 0;
  std::size_t failures = 0;
  bool pass = false;
  std::string detail;  // first counterexample or summary numbers
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  std::size_t scaling_1d = 1000;
  std::size_t scaling_2d = 200;
  std::size_t monte_carlo_samples = 10'000'000;
  std::size_t inclusion_regions = 1000;
  std::size_t inclusion_samples = 10'000;
  std::size_t count_intervals = 500;
  std::size_t shift_cases = 500;
};

// Random regions with rational coordinates on a 1/8 grid.
class RegionSampler {
 public:
  explicit RegionSampler(std::uint64_t seed) : rng_(seed) {}

  Scalar rational(long long lo, long long hi, long long den = 8);
  // 1 to max_components disjoint intervals inside [-span, span].
  Region region_1d(std::size_t max_components = 5, long long span = 40);
  Region box_2d(long long span = 20);
  std::uint64_t next() { return rng_(); }
  // Uniform in [0, 1).
  double unit();

 private:
  std::mt19937_64 rng_;
};

// mu(E^{+l}) <= l^d mu(E^{+1}) on 1D unions (exact) and 2D boxes (Steiner),
// after a Monte Carlo cross-check of the Steiner kernel.
SuiteResult suite_tube_scaling(const SuiteOptions& opts);
// (E^{+l})^{+r} inside E^{+(l+r)} on sampled grids.
SuiteResult suite_tube_inclusion(const SuiteOptions& opts);
// Packing and covering count bounds for each source.
SuiteResult suite_count_bounds(const SuiteOptions& opts, const std::vector<SourcePtr>& sources);
// |#((E+x) cap S) - #(E cap S)| <= q l^d mu(E^{+1}).
SuiteResult suite_translate_bound(const SuiteOptions& opts, const std::vector<SourcePtr>& sources);
// Deviant intervals of half-Fibonacci with increasing c form a van Hove
// sequence with growing inscribed balls.
SuiteResult suite_deviant_van_hove(const SuiteOptions& opts);

// Z, example L, Fibonacci and half-Fibonacci.
std::vector<SourcePtr> default_suite_sources();

// Suites run on up to `workers` threads; results come back in a fixed order.
std::vector<SuiteResult> run_all_suites(const SuiteOptions& opts, std::size_t workers = 1);

}  // namespace aperiodica
