#include <aperiodica/hullbuilder.hpp>

#include <doctest.h>

#include <map>
#include <string>

using namespace aperiodica;

namespace {

TowerConfig config_for(const SourcePtr& S, std::vector<Scalar> c, long long window) {
  TowerConfig tc;
  tc.rho = *S->density().exact;
  tc.c = std::move(c);
  tc.windows = {Region::interval(Scalar(0), Scalar(window))};
  return tc;
}

void check_points(const PatchTower& t) {
  for (const auto& l : t.levels) {
    auto direct = t.source->points_in(l.support.lo() + l.offset, l.support.hi() + l.offset);
    std::vector<Scalar> in;
    for (const auto& p : direct)
      if (l.support.contains(Point{p - l.offset})) in.push_back(p - l.offset);
    CHECK(in == l.points);
  }
}

}  // namespace

TEST_SUITE("hullbuilder") {

TEST_CASE("depth one towers") {
  auto H = make_half_fibonacci();
  auto sk = build_skeleton(H, 1, config_for(H, {Scalar::fraction(1, 4)}, 20'000));
  REQUIRE(sk.complete);
  auto d = instantiate(sk, "D");
  auto n = instantiate(sk, "N");
  for (const auto* t : {&d, &n}) {
    CHECK(t->complete);
    CHECK(t->nested);
    CHECK(t->deviance_persists);
    check_points(*t);
  }
  CHECK(d.levels[0].report.sign == d.levels[0].d_sign);
  CHECK(n.levels[0].report.sign != d.levels[0].d_sign);
  CHECK(is_c_deviant(d.levels[0].report, Scalar::fraction(1, 4)));
  auto ev = distinguish(d, n, 1);
  CHECK(ev.pass);
  CHECK(ev.first_is_d);
  auto w = emit_hull_element(d);
  CHECK(w.points.size() == d.levels[0].points.size());
}

TEST_CASE("bad words are rejected") {
  auto H = make_half_fibonacci();
  auto sk = build_skeleton(H, 1, config_for(H, {Scalar::fraction(1, 4)}, 20'000));
  CHECK_THROWS(instantiate(sk, "X"));
  CHECK_THROWS(instantiate(sk, "DD"));
}

TEST_CASE("tampered towers fail verification") {
  auto H = make_half_fibonacci();
  auto t = build_tower(H, "D", config_for(H, {Scalar::fraction(1, 4)}, 20'000));
  REQUIRE(t.complete);
  t.levels[0].offset += Scalar(1);
  t.levels[0].points = {};
  verify_tower(t);
  CHECK_FALSE(t.deviance_persists);
}

TEST_CASE("example L is not repetitive at tower scale") {
  auto L = make_example_l();
  TowerConfig tc = config_for(L, {Scalar(1), Scalar(2)}, 1 << 16);
  auto sk = build_skeleton(L, 2, tc);
  CHECK_FALSE(sk.complete);
  REQUIRE(sk.failure_level);
  CHECK(sk.failure_reason.find("not-repetitive") != std::string::npos);
}

}

TEST_SUITE("tower") {

TEST_CASE("depth two half-Fibonacci towers") {
  auto H = make_half_fibonacci();
  auto sk = build_skeleton(H, 2, config_for(H, {Scalar::fraction(1, 4), Scalar::fraction(1, 2)}, 1'000'000));
  REQUIRE(sk.complete);
  std::map<std::string, PatchTower> towers;
  for (const char* w : {"DD", "DN", "ND", "NN"}) {
    PatchTower t = instantiate(sk, w);
    INFO(w);
    CHECK(t.complete);
    CHECK(t.nested);
    CHECK(t.deviance_persists);
    check_points(t);
    towers.emplace(w, std::move(t));
  }
  // shared prefixes give identical first levels
  CHECK(towers["DD"].levels[0].points == towers["DN"].levels[0].points);
  CHECK(towers["ND"].levels[0].points == towers["NN"].levels[0].points);
  CHECK(towers["DD"].levels[0].support == towers["DN"].levels[0].support);

  CHECK(distinguish(towers["DD"], towers["ND"], 1).pass);
  CHECK(distinguish(towers["DN"], towers["NN"], 1).pass);
  CHECK(distinguish(towers["DD"], towers["DN"], 2).pass);
  CHECK(distinguish(towers["ND"], towers["NN"], 2).pass);
  CHECK_THROWS(distinguish(towers["DD"], towers["DN"], 1));
}

}
