#include <aperiodica/geometry.hpp>
#include <aperiodica/lemmas.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace aperiodica;

TEST_SUITE("geometry") {

TEST_CASE("regions normalise in one dimension") {
  Region E({Box::interval(Scalar(5), Scalar(11)), Box::interval(Scalar(0), Scalar(1)),
            Box::interval(Scalar(1), Scalar(2))});
  CHECK(E.size() == 2);
  CHECK(E.lo() == Scalar(0));
  CHECK(E.hi() == Scalar(11));
  CHECK(E.gaps() == std::vector<Scalar>{Scalar(3)});
  CHECK(measure(E) == Scalar(8));
  CHECK(Region::parse(E.str()) == E);
  CHECK(Region::parse("[0,2]u[5,11]") == E);
}

TEST_CASE("region parse in two dimensions") {
  Region R = Region::parse("[0,4]x[0,2]");
  CHECK(R.dim() == 2);
  CHECK(measure(R) == Scalar(8));
  CHECK(R.contains(Point{Scalar(4), Scalar(2)}));
  CHECK_FALSE(R.contains(Point{Scalar::fraction(9, 2), Scalar(1)}));
  CHECK_THROWS(Region::parse("[1,0]"));
}

TEST_CASE("translate and scale") {
  Region E = Region::interval(Scalar(0), Scalar(10));
  CHECK(translate(E, Scalar::phi()) == Region::interval(Scalar::phi(), Scalar(10) + Scalar::phi()));
  CHECK(measure(scale(E, Scalar(3))) == Scalar(30));
}

TEST_CASE("exact one dimensional tubes") {
  auto t = tube_measure(Region::interval(Scalar(0), Scalar(10)), Scalar(1));
  REQUIRE(t.exact());
  CHECK(*t.exact_value == Scalar(4));
  // inner halves overlap
  CHECK(*tube_measure(Region::interval(Scalar(0), Scalar(1)), Scalar(1)).exact_value == Scalar(3));
  // outer halves of nearby components overlap
  Region two = Region::parse("[0,10]u[11,20]");
  CHECK(*tube_measure(two, Scalar(1)).exact_value == Scalar(7));
  CHECK(measure(tube_region(two, Scalar(1))) == Scalar(7));
}

TEST_CASE("tube of a square") {
  Region sq = Region::parse("[0,4]x[0,4]");
  auto t = tube_measure(sq, Scalar(1));
  CHECK(t.value == doctest::Approx(28.0 + std::numbers::pi).epsilon(1e-12));
  CHECK(box_dilation_volume(sq.boxes()[0], 1.0) == doctest::Approx(32.0 + std::numbers::pi));
}

TEST_CASE("tube scaling example") {
  Region E = Region::interval(Scalar(0), Scalar(10));
  CHECK(*tube_measure(E, Scalar(3)).exact_value == Scalar(12));
  CHECK(check_tube_scaling(E, Scalar(3)));
}

TEST_CASE("1D tube agrees with the boundary cell oracle") {
  RegionSampler rng(11);
  for (int i = 0; i < 300; ++i) {
    Region E = rng.region_1d(6, 30);
    Scalar eps = rng.rational(0, 5);
    if (eps.is_zero()) eps = Scalar::fraction(1, 8);
    auto t = tube_measure(E, eps);
    REQUIRE(t.exact());
    CHECK(*t.exact_value == oracle::tube_1d_cells(E, eps));
    CHECK(measure(tube_region(E, eps)) == *t.exact_value);
  }
}

TEST_CASE("tube inclusion on a sample grid") {
  auto c = check_tube_inclusion(Region::parse("[0,3]u[4,9]"), Scalar::fraction(3, 2), Scalar(2), 2000);
  CHECK(c.holds);
  CHECK(c.samples >= 2000);
  auto d = check_tube_inclusion(Region::parse("[0,3]x[0,1]"), Scalar(1), Scalar::fraction(1, 2), 2000);
  CHECK(d.holds);
}

TEST_CASE("signed distance to a box") {
  Box B(Point{Scalar(0), Scalar(0)}, Point{Scalar(4), Scalar(2)});
  const double inside[] = {1.0, 1.0};
  const double outside[] = {7.0, 6.0};
  CHECK(signed_distance(B, inside) == doctest::Approx(-1.0));
  CHECK(signed_distance(B, outside) == doctest::Approx(5.0));
}

}
