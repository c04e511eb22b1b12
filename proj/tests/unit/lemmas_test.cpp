#include <aperiodica/lemmas.hpp>

#include <doctest.h>

using namespace aperiodica;

namespace {

SuiteOptions small() {
  SuiteOptions o;
  o.seed = 101;
  o.scaling_1d = 100;
  o.scaling_2d = 20;
  o.monte_carlo_samples = 400'000;
  o.inclusion_regions = 60;
  o.inclusion_samples = 2000;
  o.count_intervals = 100;
  o.shift_cases = 100;
  return o;
}

}  // namespace

TEST_SUITE("lemmas") {

TEST_CASE("sampler is deterministic") {
  RegionSampler a(5), b(5);
  for (int i = 0; i < 20; ++i) CHECK(a.region_1d() == b.region_1d());
}

TEST_CASE("tube scaling suite") {
  auto s = suite_tube_scaling(small());
  INFO(s.detail);
  CHECK(s.pass);
  CHECK(s.cases == 1 + 4 * (100 + 20));
}

TEST_CASE("tube inclusion suite") {
  auto s = suite_tube_inclusion(small());
  INFO(s.detail);
  CHECK(s.pass);
}

TEST_CASE("count bounds suite") {
  auto s = suite_count_bounds(small(), default_suite_sources());
  INFO(s.detail);
  CHECK(s.pass);
  CHECK(s.cases == 400);
}

TEST_CASE("translate bound suite") {
  auto s = suite_translate_bound(small(), default_suite_sources());
  INFO(s.detail);
  CHECK(s.pass);
}

TEST_CASE("deviant van Hove suite") {
  auto s = suite_deviant_van_hove(small());
  INFO(s.detail);
  CHECK(s.pass);
}

}

TEST_SUITE("lemmas") {

TEST_CASE("suite results do not depend on the worker count") {
  SuiteOptions o = small();
  o.monte_carlo_samples = 50'000;
  auto one = run_all_suites(o, 1);
  auto three = run_all_suites(o, 3);
  REQUIRE(one.size() == three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].name == three[i].name);
    CHECK(one[i].cases == three[i].cases);
    CHECK(one[i].detail == three[i].detail);
  }
}

}
