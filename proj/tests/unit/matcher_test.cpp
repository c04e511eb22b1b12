#include <aperiodica/matcher.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace aperiodica;

namespace {

std::vector<Point> line(std::initializer_list<Scalar> xs) {
  std::vector<Point> out;
  for (const auto& x : xs) out.push_back(Point{x});
  return out;
}

}  // namespace

TEST_SUITE("matcher") {

TEST_CASE("Hopcroft-Karp on a small graph") {
  BipartiteGraph g(3, 3);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  g.add_edge(2, 1);
  g.add_edge(2, 2);
  auto m = hopcroft_karp(g);
  CHECK(std::count(m.begin(), m.end(), kUnmatched) == 0);
}

TEST_CASE("simple bottlenecks") {
  MatchInstance same{line({Scalar(0), Scalar(1), Scalar(2)}), line({Scalar(0), Scalar(1), Scalar(2)})};
  auto a = bottleneck_match(same);
  CHECK(a.status == MatchStatus::perfect);
  CHECK(a.bottleneck_sq == Scalar(0));

  const Scalar h = Scalar::fraction(1, 2);
  MatchInstance shifted{line({Scalar(0), Scalar(1), Scalar(2)}),
                        line({h, Scalar(1) + h, Scalar(2) + h})};
  auto b = bottleneck_match(shifted);
  CHECK(*b.bottleneck == h);
  auto g = bottleneck_match(shifted, {.force_general = true});
  CHECK(g.bottleneck_sq == Scalar::fraction(1, 4));
}

TEST_CASE("bottleneck equals the permutation oracle") {
  std::mt19937_64 rng(3);
  auto coord = [&] { return Scalar::fraction(static_cast<long long>(rng() % 161) - 80, 8); };
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const std::size_t d = 1 + trial % 2;
    MatchInstance inst;
    for (std::size_t i = 0; i < n; ++i) {
      Point p(d), q(d);
      for (std::size_t k = 0; k < d; ++k) {
        p[k] = coord();
        q[k] = coord();
      }
      inst.left.push_back(p);
      inst.right.push_back(q);
    }
    const Scalar want = oracle::bottleneck_sq_bruteforce(inst.left, inst.right);
    auto m = bottleneck_match(inst);
    REQUIRE(m.status == MatchStatus::perfect);
    CHECK(m.bottleneck_sq == want);
    CHECK(bottleneck_match(inst, {.force_general = true}).bottleneck_sq == want);
    for (std::size_t u = 0; u < n; ++u) {
      Scalar dsq(0);
      for (std::size_t k = 0; k < d; ++k) {
        Scalar t = inst.left[u][k] - inst.right[m.matching[u]][k];
        dsq += t * t;
      }
      CHECK(dsq <= want);
    }
    if (want > Scalar(0)) {
      REQUIRE(m.certificate);
      CHECK(m.certificate->members.size() > m.certificate->neighbors.size());
      const Scalar below = m.certificate->threshold_sq;
      CHECK(below < want);
    }
  }
}

TEST_CASE("1D fast path agrees with the general search") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    MatchInstance inst;
    const std::size_t n = 5 + rng() % 40;
    for (std::size_t i = 0; i < n; ++i) {
      inst.left.push_back(Point{Scalar::fraction(static_cast<long long>(rng() % 4000), 16)});
      inst.right.push_back(Point{Scalar::fraction(static_cast<long long>(rng() % 4000), 16)});
    }
    auto fast = bottleneck_match(inst);
    auto slow = bottleneck_match(inst, {.force_general = true});
    CHECK(fast.fast_path);
    CHECK(fast.bottleneck_sq == slow.bottleneck_sq);
  }
}

TEST_CASE("Hall witnesses") {
  MatchInstance inst{line({Scalar(0), Scalar(10)}), line({Scalar(0), Scalar::fraction(1, 10)})};
  auto w = hall_witness(inst, Scalar(1));
  REQUIRE(w);
  CHECK(w->side == HallWitness::Side::left);
  CHECK(w->members == std::vector<std::size_t>{1});
  CHECK(w->neighbors.empty());

  auto m = bottleneck_match(inst);
  REQUIRE(m.bottleneck);
  CHECK_FALSE(hall_witness(inst, *m.bottleneck));
  CHECK(hall_witness(inst, *m.bottleneck - Scalar::fraction(1, 1000)));
}

TEST_CASE("unequal sizes report a defect") {
  MatchInstance inst{line({Scalar(0), Scalar(1), Scalar(2)}), line({Scalar(0), Scalar(1)})};
  auto m = bottleneck_match(inst);
  CHECK(m.status != MatchStatus::perfect);
  CHECK(m.defect_count == 1);
}

TEST_CASE("example L is not bounded distance to Z") {
  auto Q = region_family("Qi", 20);
  auto r = non_bd_ratio(*make_example_l(), *make_integer_lattice(), Q);
  REQUIRE(r.entries.size() == 20);
  for (const auto& e : r.entries) {
    const auto i = static_cast<long long>(e.index + 1);
    CHECK(e.difference == Scalar(i + 1));
    CHECK(*e.ratio_exact == Scalar::fraction(i + 1, 4));
  }
  CHECK(r.verdict == GrowthVerdict::grows);
}

TEST_CASE("bounded pairs stay bounded") {
  auto seq = region_family("centered", 400);
  auto Z = make_integer_lattice();
  auto same = non_bd_ratio(*Z, *Z, seq);
  for (const auto& e : same.entries) CHECK(e.difference == Scalar(0));
  CHECK(same.verdict == GrowthVerdict::bounded);

  auto moved = make_integer_lattice(Scalar(1), Scalar::fraction(3, 10));
  auto r = non_bd_ratio(*Z, *moved, seq);
  for (const auto& e : r.entries) CHECK(e.ratio <= 0.25);
  CHECK(r.verdict == GrowthVerdict::bounded);
}

TEST_CASE("lattice bounded distance scans") {
  auto Z = make_integer_lattice();
  auto centered = region_family("centered", 30);
  auto z = lattice_bd_scan(*Z, Scalar(1), Scalar(1), centered, 100000);
  CHECK_FALSE(z.violated);
  CHECK(z.sup_ratio <= 0.5);

  auto Q = region_family("Qi", 22);
  auto l = lattice_bd_scan(*make_example_l(), Scalar(1), Scalar(5), Q, 10'000'000);
  REQUIRE(l.violated);
  CHECK(*l.witness->ratio_exact > Scalar(5));
}

}
