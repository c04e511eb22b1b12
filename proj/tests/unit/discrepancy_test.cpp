#include <aperiodica/discrepancy.hpp>
#include <aperiodica/error.hpp>

#include <doctest.h>

using namespace aperiodica;

TEST_SUITE("discrepancy") {

TEST_CASE("integer lattice reports") {
  auto Z = make_integer_lattice();
  auto r = discrepancy_report(*Z, Scalar(1), Region::interval(Scalar(0), Scalar(10)));
  CHECK(r.count == 11);
  CHECK(r.expected == Scalar(10));
  CHECK(*r.tube1.exact_value == Scalar(4));
  CHECK(*r.ratio_exact == Scalar::fraction(1, 4));
  CHECK(r.sign == 1);

  auto aligned = discrepancy_report(*Z, Scalar(1), Region::interval(Scalar::fraction(1, 2), Scalar::fraction(21, 2)));
  CHECK(aligned.count == 10);
  CHECK(aligned.discrepancy == Scalar(0));
  CHECK(aligned.sign == 0);
  CHECK(*aligned.ratio_exact == Scalar(0));
}

TEST_CASE("example L on Q_10") {
  auto r = discrepancy_report(*make_example_l(), Scalar(1), Region::interval(Scalar(0), Scalar(1025)));
  CHECK(r.discrepancy == Scalar(12));
  CHECK(*r.ratio_exact == Scalar(3));
  CHECK(is_c_deviant(r, Scalar(2)));
  CHECK_FALSE(is_c_deviant(r, Scalar(3)));
}

TEST_CASE("c-deviance") {
  auto Z = make_integer_lattice();
  auto r = discrepancy_report(*Z, Scalar(1), Region::interval(Scalar(0), Scalar(10)));
  CHECK_FALSE(is_c_deviant(r, Scalar(1)));
  CHECK(is_c_deviant(r, Scalar(0)));
  CHECK(is_c_deviant(r, Scalar::fraction(1, 5)));
}

TEST_CASE("discrepancy from a count matches direct counting") {
  auto F = make_fibonacci();
  const Scalar rho = *F->density().exact;
  Region E = Region::parse("[0,100]u[150,171]");
  auto a = discrepancy_report(*F, rho, E);
  auto b = discrepancy_from_count(a.count, rho, E);
  CHECK(a.discrepancy == b.discrepancy);
  CHECK(a.ratio_exact == b.ratio_exact);
}

TEST_CASE("van Hove check") {
  auto centered = region_family("centered", 400);
  auto v = van_hove_check(centered, {Scalar(1)});
  CHECK(v.pass);
  // both sides of each endpoint: 4/(2i)
  CHECK(*v.ratios_exact[0][9] == Scalar::fraction(1, 5));

  std::vector<Region> two;
  for (long long i = 1; i <= 400; ++i)
    two.push_back(Region({Box::interval(Scalar(0), Scalar(i)), Box::interval(Scalar(2 * i), Scalar(2 * i + 1))}));
  CHECK(van_hove_check(two, {Scalar(1)}, 0.05).pass);

  std::vector<Region> sliding;
  for (long long i = 1; i <= 50; ++i) sliding.push_back(Region::interval(Scalar(i), Scalar(i + 1)));
  auto s = van_hove_check(sliding, {Scalar(1)});
  CHECK_FALSE(s.pass);
  CHECK(*s.ratios_exact[0][7] == Scalar(3));
}

TEST_CASE("deviant sequences are van Hove") {
  auto L = make_example_l();
  std::vector<DiscrepancyReport> reports;
  std::vector<Scalar> cs;
  auto Q = region_family("Qi", 20);
  for (std::size_t i = 0; i < Q.size(); ++i) {
    reports.push_back(discrepancy_report(*L, Scalar(1), Q[i]));
    cs.push_back(Scalar::fraction(static_cast<long long>(i + 1), 4));
  }
  auto v = deviant_implies_van_hove(reports, cs);
  CHECK(v.pass);

  auto Z = make_integer_lattice();
  auto r = discrepancy_report(*Z, Scalar(1), Region::interval(Scalar(0), Scalar(10)));
  std::vector<DiscrepancyReport> same{r, r};
  std::vector<Scalar> growing{Scalar::fraction(1, 8), Scalar(1)};
  CHECK_THROWS_AS(deviant_implies_van_hove(same, growing), Error);
}

TEST_CASE("largest inscribed ball") {
  auto b = largest_inscribed_ball(Region::parse("[0,2]u[5,11]"));
  CHECK(b.center == Point{Scalar(8)});
  CHECK(b.radius == Scalar(3));
  auto s = largest_inscribed_ball(Region::parse("[0,4]x[0,2]"));
  CHECK(s.center == Point{Scalar(2), Scalar(1)});
  CHECK(s.radius == Scalar(1));
  auto seq = region_family("centered", 30);
  for (std::size_t i = 0; i < seq.size(); ++i)
    CHECK(largest_inscribed_ball(seq[i]).radius == Scalar(static_cast<long long>(i + 1)));
}

TEST_CASE("region families") {
  auto Q = region_family("Qi", 10);
  CHECK(Q.back() == Region::interval(Scalar(0), Scalar(1025)));
  auto F = region_family("fibwin", 10);
  CHECK(F.back() == Region::interval(Scalar(0), Scalar(89)));
  CHECK(region_family("centered", 3, 2)[2] == Region::parse("[-3,3]x[-3,3]"));
  CHECK_THROWS(region_family("spiral", 3));
}

}
