#include <aperiodica/aperiodica.hpp>

#include "oracles.hpp"
#include "run.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace aperiodica;

namespace {

// Pinned thresholds.
constexpr double kCriterion1Seconds = 1.0;
constexpr double kCriterion7Seconds = 30.0;
constexpr double kCriterion8Seconds = 600.0;
constexpr double kCriterion10Seconds = 900.0;
constexpr double kVanHoveRelative = 0.1;  // criterion 9
constexpr std::size_t kScanBudget = 4'000'000;
const Scalar kDistinguishFactor = Scalar::fraction(9, 10);

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Verdict criterion1() {
  auto t0 = Clock::now();
  auto L = make_example_l();
  auto Z = make_integer_lattice();
  bool ok = true;
  std::string bad;
  for (unsigned i = 1; i <= 20; ++i) {
    Region Q = Region::interval(Scalar(0), Scalar((1LL << i) + 1));
    const long long diff = static_cast<long long>(count_in(*L, Q)) - static_cast<long long>(count_in(*Z, Q));
    if (diff != static_cast<long long>(i) + 1) {
      ok = false;
      bad += " i=" + std::to_string(i) + " diff=" + std::to_string(diff);
    }
  }
  const double secs = seconds_since(t0);
  return {ok && secs < kCriterion1Seconds,
          "i=1..20 differences equal i+1" + std::string(ok ? "" : ":" + bad) + ", " + fmt(secs) + " s"};
}

Verdict criterion2() {
  auto Q = region_family("Qi", 20);
  auto r = non_bd_ratio(*make_example_l(), *make_integer_lattice(), Q);
  bool ok = r.entries.size() == 20 && r.verdict == GrowthVerdict::grows;
  for (const auto& e : r.entries) {
    const auto i = static_cast<long long>(e.index + 1);
    ok = ok && e.ratio_exact && *e.ratio_exact == Scalar::fraction(i + 1, 4);
  }
  return {ok, "ratios (i+1)/4 for i=1..20, verdict " + std::string(to_string(r.verdict))};
}

Verdict from_suite(const SuiteResult& s) {
  return {s.pass, s.name + ": " + std::to_string(s.cases) + " cases, " + std::to_string(s.failures) +
                      " failures; " + s.detail};
}

Verdict criterion3() { return from_suite(suite_tube_scaling(SuiteOptions{})); }
Verdict criterion4() { return from_suite(suite_tube_inclusion(SuiteOptions{})); }
Verdict criterion5() { return from_suite(suite_count_bounds(SuiteOptions{}, default_suite_sources())); }
Verdict criterion6() { return from_suite(suite_translate_bound(SuiteOptions{}, default_suite_sources())); }

Verdict criterion7() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  auto coord = [&] { return Scalar::fraction(static_cast<long long>(rng() % 321) - 160, 16); };
  std::size_t brute_bad = 0, fast_bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const std::size_t d = 1 + trial % 2;
    MatchInstance inst;
    for (std::size_t i = 0; i < n; ++i) {
      Point p(d), q(d);
      for (std::size_t k = 0; k < d; ++k) {
        p[k] = coord();
        q[k] = coord();
      }
      inst.left.push_back(std::move(p));
      inst.right.push_back(std::move(q));
    }
    if (bottleneck_match(inst).bottleneck_sq != oracle::bottleneck_sq_bruteforce(inst.left, inst.right)) ++brute_bad;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 60;
    MatchInstance inst;
    for (std::size_t i = 0; i < n; ++i) {
      inst.left.push_back(Point{coord()});
      inst.right.push_back(Point{coord()});
    }
    auto fast = bottleneck_match(inst, {.certify = false});
    auto slow = bottleneck_match(inst, {.certify = false, .force_general = true});
    if (!fast.fast_path || fast.bottleneck_sq != slow.bottleneck_sq) ++fast_bad;
  }
  const double secs = seconds_since(t0);
  return {brute_bad == 0 && fast_bad == 0 && secs < kCriterion7Seconds,
          "brute-force mismatches " + std::to_string(brute_bad) + "/200, fast-path mismatches " +
              std::to_string(fast_bad) + "/1000, " + fmt(secs) + " s"};
}

Scalar exact_sup(const PointSource& S, const Scalar& rho, const Region& window) {
  // c above any attainable ratio, so the scan reports the supremum
  DeviantSearch d = find_deviant(S, rho, Scalar(1000), window, kScanBudget);
  require(d.sup_region.has_value(), ErrorKind::internal, "scan produced no candidate");
  return *discrepancy_report(S, rho, *d.sup_region).ratio_exact;
}

struct HalfFibRun {
  std::vector<Scalar> sups;
  std::vector<DiscrepancyReport> sup_reports;
  std::optional<DeviantFind> c1, c2;
};

const HalfFibRun& half_fib_run() {
  static const HalfFibRun run = [] {
    HalfFibRun r;
    auto H = make_half_fibonacci();
    const Scalar rho = *H->density().exact;
    long long len = 10;
    for (int k = 2; k <= 6; ++k) {
      len *= 10;
      DeviantSearch d = find_deviant(*H, rho, Scalar(1000), Region::interval(Scalar(0), Scalar(len)), kScanBudget);
      auto rep = discrepancy_report(*H, rho, *d.sup_region);
      r.sups.push_back(*rep.ratio_exact);
      r.sup_reports.push_back(rep);
    }
    const Region big = Region::interval(Scalar(0), Scalar(1'000'000));
    r.c1 = find_deviant(*H, rho, Scalar(1), big, kScanBudget).find;
    r.c2 = find_deviant(*H, rho, Scalar(2), big, kScanBudget).find;
    return r;
  }();
  return run;
}

Verdict criterion8() {
  auto t0 = Clock::now();
  auto F = make_fibonacci();
  const Scalar rho = *F->density().exact;
  const Scalar small = exact_sup(*F, rho, Region::interval(Scalar(0), Scalar(1000)));
  const Scalar large = exact_sup(*F, rho, Region::interval(Scalar(0), Scalar(100'000)));
  const bool a = small == large;

  const HalfFibRun& h = half_fib_run();
  bool increasing = true;
  std::string sups;
  for (std::size_t k = 0; k < 4; ++k) {
    sups += " " + fmt(h.sups[k].to_double());
    if (k > 0 && !(h.sups[k] > h.sups[k - 1])) increasing = false;
  }
  const bool b = increasing && h.c1 && h.c2;
  const double secs = seconds_since(t0);
  std::string detail = "(a) fib sup [0,1e3]=" + fmt(small.to_double()) + " [0,1e5]=" + fmt(large.to_double()) +
                       (a ? " equal" : " differ") + "; (b) halffib sups 1e2..1e5:" + sups +
                       (increasing ? " increasing" : " not increasing") + ", sup [0,1e6]=" +
                       fmt(h.sups[4].to_double()) + ", c=1 " + (h.c1 ? "found" : "not found") + ", c=2 " +
                       (h.c2 ? "found" : "not found") + "; " + fmt(secs) + " s";
  return {a && b && secs < kCriterion8Seconds, detail};
}

Verdict criterion9() {
  const HalfFibRun& h = half_fib_run();
  // c_i strictly increasing and below each sup ratio
  const std::vector<Scalar> cs{Scalar::fraction(1, 8), Scalar::fraction(3, 8), Scalar::fraction(5, 8),
                               Scalar::fraction(6, 8), Scalar(1)};
  std::vector<DiscrepancyReport> reps = h.sup_reports;
  VanHoveFromDeviantOptions o;
  o.threshold = kVanHoveRelative;
  o.relative = true;
  VanHoveDiagnostics vh = deviant_implies_van_hove(reps, cs, o);
  bool radii_up = true;
  std::string radii;
  Scalar prev(-1);
  for (const auto& r : reps) {
    Scalar rad = largest_inscribed_ball(r.region).radius;
    radii += " " + fmt(rad.to_double());
    if (!(rad > prev)) radii_up = false;
    prev = rad;
  }
  const auto& first = vh.ratios[0].front();
  const auto& last = vh.ratios[0].back();
  return {vh.pass && radii_up, "tube ratio " + fmt(first) + " -> " + fmt(last) + (vh.pass ? "" : " (" + vh.reason + ")") +
                                   ", radii" + radii};
}

Verdict criterion10() {
  auto t0 = Clock::now();
  auto H = make_half_fibonacci();
  TowerConfig tc;
  tc.rho = *H->density().exact;
  tc.c = {Scalar(1), Scalar(2)};
  tc.windows = {Region::interval(Scalar(0), Scalar(1'000'000))};
  TowerSkeleton sk = build_skeleton(H, 2, tc);
  if (!sk.complete) {
    return {false, "skeleton stops at level " + std::to_string(sk.failure_level.value_or(0)) + ": " +
                       sk.failure_reason + "; " + fmt(seconds_since(t0)) + " s"};
  }
  std::map<std::string, PatchTower> t;
  bool all = true;
  for (const char* w : {"DD", "DN", "ND", "NN"}) {
    t.emplace(w, instantiate(sk, w));
    all = all && t[w].complete && t[w].nested && t[w].deviance_persists;
  }
  const bool prefix = t["DD"].levels[0].points == t["DN"].levels[0].points &&
                      t["ND"].levels[0].points == t["NN"].levels[0].points &&
                      t["DD"].levels[0].support == t["DN"].levels[0].support &&
                      t["ND"].levels[0].support == t["NN"].levels[0].support;
  bool dist = true;
  std::string ratios;
  const std::vector<std::tuple<std::string, std::string, std::size_t>> pairs{
      {"DD", "ND", 1}, {"DD", "NN", 1}, {"DN", "ND", 1}, {"DN", "NN", 1}, {"DD", "DN", 2}, {"ND", "NN", 2}};
  for (const auto& [a, b, lvl] : pairs) {
    DistinguishEvidence ev = distinguish(t[a], t[b], lvl);
    dist = dist && ev.pass && ev.ratio_exact && *ev.ratio_exact > kDistinguishFactor * ev.c;
    ratios += " " + a + "/" + b + "=" + fmt(ev.ratio);
  }
  const double secs = seconds_since(t0);
  return {all && prefix && dist && secs < kCriterion10Seconds,
          std::string("towers ") + (all ? "complete" : "incomplete") + ", prefix sharing " + (prefix ? "exact" : "broken") +
              ", ratios" + ratios + "; " + fmt(secs) + " s"};
}

std::string run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "aperiodica");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

Verdict criterion11() {
  const std::vector<std::vector<std::string>> runs{
      {"nonbd", "--s1", "exampleL", "--s2", "latticeZ", "--family", "Qi", "--max-i", "20"},
      {"deviant", "--source", "halffib", "--c", "1/2", "--window", "[0,10000]", "--seed", "7"},
      {"deviant", "--source", "fib", "--c", "1000", "--window", "[0,100000]"},
      {"verify-lemmas", "--seed", "7"},
      {"hull", "--source", "halffib", "--word", "DN", "--c", "1/4,1/2", "--window", "[0,1000000]"},
  };
  std::size_t same = 0;
  std::string bad;
  for (const auto& r : runs) {
    if (run_cli(r) == run_cli(r))
      ++same;
    else
      bad += " " + r[0];
  }
  return {same == runs.size(), std::to_string(same) + "/" + std::to_string(runs.size()) +
                                   " commands byte-identical on re-run" + (bad.empty() ? "" : ", differing:" + bad)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                        criterion5, criterion6, criterion7, criterion8,
                                                        criterion9, criterion10, criterion11};
  std::vector<std::size_t> which;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) which.push_back(std::strtoul(argv[++i], nullptr, 10));
  }
  if (which.empty())
    for (std::size_t i = 1; i <= criteria.size(); ++i) which.push_back(i);

  int failed = 0;
  for (std::size_t i : which) {
    if (i < 1 || i > criteria.size()) {
      std::cerr << "no criterion " << i << '\n';
      return 2;
    }
    Verdict v;
    try {
      v = criteria[i - 1]();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    std::cout << "criterion " << i << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << std::endl;
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
