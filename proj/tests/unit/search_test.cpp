#include <aperiodica/error.hpp>
#include <aperiodica/lemmas.hpp>
#include <aperiodica/search.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace aperiodica;

TEST_SUITE("search") {

TEST_CASE("derived constants") {
  auto kz = derive_constants(*make_integer_lattice());
  REQUIRE(kz.q);
  const Scalar r = *kz.delone.r_exact;
  CHECK(*kz.q == Scalar(2) * (kz.eta_prime / r) * Scalar(3));
  CHECK(*kz.q > Scalar(0));
  auto kf = derive_constants(*make_fibonacci());
  REQUIRE(kf.q);
  CHECK(*kf.q == Scalar(2) * (kf.eta_prime / *kf.delone.r_exact) * Scalar(3));
}

TEST_CASE("count bounds on random intervals") {
  RegionSampler rng(21);
  for (auto S : {make_integer_lattice(), make_fibonacci()}) {
    auto k = derive_constants(*S);
    for (int i = 0; i < 500; ++i) {
      Scalar a = rng.rational(-400, 400);
      Scalar len = rng.rational(0, 200) + Scalar::fraction(1, 8);
      auto c = check_count_bounds(*S, k, Region::interval(a, a + len));
      CHECK(c.holds);
    }
  }
}

TEST_CASE("translate bound") {
  RegionSampler rng(22);
  auto S = make_example_l();
  auto k = derive_constants(*S);
  for (int i = 0; i < 300; ++i) {
    Region E = translate(rng.region_1d(4, 50), rng.rational(-100, 100));
    Scalar l = rng.rational(1, 6);
    Scalar x = rng.rational(-1, 1) * l;
    CHECK(check_translate_bound(*S, k, E, Point{x}, l).holds);
  }
}

TEST_CASE("deviant intervals of example L") {
  auto L = make_example_l();
  auto d = find_deviant(*L, Scalar(1), Scalar(3), Region::interval(Scalar(0), Scalar(1 << 14)), 1'000'000);
  REQUIRE(d.find);
  CHECK(d.find->sign == 1);
  CHECK(*d.find->c_achieved_exact > Scalar(3));
  CHECK(d.find->report.discrepancy == Scalar(static_cast<long long>(d.find->report.count)) - d.find->report.expected);
}

TEST_CASE("no deviant interval in Z") {
  auto Z = make_integer_lattice();
  auto d = find_deviant(*Z, Scalar(1), Scalar(1), Region::interval(Scalar(-5000), Scalar(5000)), 1'000'000);
  CHECK_FALSE(d.find);
  CHECK(d.sup_ratio <= 0.5);
}

TEST_CASE("sup ratio matches the quadratic scan") {
  for (auto S : {make_fibonacci(), make_half_fibonacci()}) {
    const Scalar rho = *S->density().exact;
    const Region W = Region::interval(Scalar(0), Scalar(600));
    auto d = find_deviant(*S, rho, Scalar(100), W, 1'000'000);
    auto pts = S->points_in(Scalar(0), Scalar(600));
    CHECK(d.sup_ratio == doctest::Approx(oracle::max_ratio_scan(pts, rho.to_double(), 8.0)).epsilon(1e-9));
  }
}

TEST_CASE("half Fibonacci deviance in a short window") {
  auto H = make_half_fibonacci();
  const Scalar rho = *H->density().exact;
  auto d = find_deviant(*H, rho, Scalar::fraction(1, 2), Region::interval(Scalar(0), Scalar(10'000)), 1'000'000);
  REQUIRE(d.find);
  CHECK(*d.find->c_achieved_exact > Scalar::fraction(1, 2));
  auto again = discrepancy_report(*H, rho, d.find->region);
  CHECK(again.discrepancy == d.find->report.discrepancy);
}

TEST_CASE("opposite translates") {
  auto Z = make_integer_lattice();
  Region E = Region::interval(Scalar::fraction(-1, 2), Scalar::fraction(52, 5));
  auto o = find_opposite_translate(*Z, Scalar(1), E, Region::interval(Scalar(-20), Scalar(20)));
  CHECK(o.report.sign <= 0);
  CHECK(o.report.region == translate(E, -o.x));

  auto L = make_example_l();
  Region Q5 = Region::interval(Scalar(0), Scalar(33));
  auto l = find_opposite_translate(*L, Scalar(1), Q5, Region::interval(Scalar(-100), Scalar(40)));
  CHECK(l.report.sign <= 0);

  CHECK_THROWS_AS(find_opposite_translate(*Z, Scalar(1), Region::interval(Scalar::fraction(1, 2), Scalar::fraction(21, 2)),
                                          Region::interval(Scalar(-20), Scalar(20))),
                  Error);
}

TEST_CASE("shift robust deviants of example L") {
  auto L = make_example_l();
  auto d = find_shift_robust_deviant(*L, Scalar(1), Scalar(1), Scalar(2), Region::interval(Scalar(0), Scalar(1 << 12)),
                                     1'000'000);
  REQUIRE(d.find);
  REQUIRE(d.find->robust);
  CHECK(d.find->robust->worst_ratio > 1.0);
  // independent shift enumeration on a 1/16 grid
  for (long long k = -32; k <= 32; ++k) {
    auto r = discrepancy_report(*L, Scalar(1), translate(d.find->region, Scalar::fraction(k, 16)));
    CHECK(is_c_deviant(r, Scalar(1)));
  }
}

TEST_CASE("robust verification includes the zero shift") {
  auto L = make_example_l();
  Region E = Region::interval(Scalar(0), Scalar(1025));
  auto t = verify_shift_robust(*L, Scalar(1), E, Scalar(2));
  auto r0 = discrepancy_report(*L, Scalar(1), E);
  CHECK(t.min_count <= static_cast<long long>(r0.count));
  CHECK(t.max_count >= static_cast<long long>(r0.count));
  CHECK(t.worst_ratio <= r0.ratio);
  for (long long k = -20; k <= 20; ++k) {
    auto n = static_cast<long long>(count_in(*L, translate(E, Scalar::fraction(k, 10))));
    CHECK(n >= t.min_count);
    CHECK(n <= t.max_count);
  }
}

TEST_CASE("repetitivity") {
  auto Z = make_integer_lattice();
  auto z = repetitivity_radius(*Z, Region::interval(Scalar(0), Scalar(3)), Region::interval(Scalar(-100), Scalar(100)));
  CHECK(z.repetitive);
  CHECK(z.radius == Scalar::fraction(1, 2));

  auto f = repetitivity_radius(*make_fibonacci(), Region::interval(Scalar(0), Scalar(5)),
                               Region::interval(Scalar(-2000), Scalar(2000)));
  CHECK(f.repetitive);
  CHECK(f.radius < Scalar(20));
  CHECK(f.occurrences.size() > 50);

  auto l = repetitivity_radius(*make_example_l(), Region::interval(Scalar(0), Scalar(3)),
                               Region::interval(Scalar(-5000), Scalar(5000)));
  CHECK_FALSE(l.repetitive);
}

TEST_CASE("occurrences are exact translates") {
  auto F = make_fibonacci();
  Region K = Region::interval(Scalar(0), Scalar(8));
  auto patch = F->points_in(Scalar(0), Scalar(8));
  auto occ = find_occurrences(*F, patch, K, Scalar(-500), Scalar(500));
  REQUIRE_FALSE(occ.empty());
  CHECK(std::find(occ.begin(), occ.end(), Scalar(0)) != occ.end());
  for (const auto& x : occ) {
    auto moved = F->points_in(x, x + Scalar(8));
    REQUIRE(moved.size() == patch.size());
    for (std::size_t i = 0; i < patch.size(); ++i) CHECK(moved[i] - x == patch[i]);
  }
}

}

TEST_SUITE("search") {

TEST_CASE("robust search does not depend on the worker count") {
  auto H = make_half_fibonacci();
  const Scalar rho = *H->density().exact;
  const Region W = Region::interval(Scalar(0), Scalar(20'000));
  RobustSearchOptions o;
  o.base.selection = Selection::shortest;
  auto a = find_shift_robust_deviant(*H, rho, Scalar::fraction(1, 4), Scalar(2), W, 1'000'000, o);
  o.workers = 4;
  auto b = find_shift_robust_deviant(*H, rho, Scalar::fraction(1, 4), Scalar(2), W, 1'000'000, o);
  REQUIRE(a.find);
  REQUIRE(b.find);
  CHECK(a.find->region == b.find->region);
  CHECK(a.find->robust->worst_shift == b.find->robust->worst_shift);
}

}
