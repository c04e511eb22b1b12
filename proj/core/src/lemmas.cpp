#include "aperiodica/lemmas.hpp"

#include "aperiodica/discrepancy.hpp"
#include "aperiodica/error.hpp"
#include "aperiodica/search.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace aperiodica {

Scalar RegionSampler::rational(long long lo, long long hi, long long den) {
  const auto span = static_cast<std::uint64_t>((hi - lo) * den + 1);
  return Scalar::fraction(lo * den + static_cast<long long>(rng_() % span), den);
}

double RegionSampler::unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

Region RegionSampler::region_1d(std::size_t max_components, long long span) {
  const std::size_t k = 1 + static_cast<std::size_t>(rng_() % max_components);
  std::vector<Scalar> ends;
  while (ends.size() < 2 * k) {
    Scalar v = rational(-span, span);
    if (std::find(ends.begin(), ends.end(), v) == ends.end()) ends.push_back(v);
  }
  std::sort(ends.begin(), ends.end());
  std::vector<Box> boxes;
  for (std::size_t i = 0; i < k; ++i) boxes.push_back(Box::interval(ends[2 * i], ends[2 * i + 1]));
  return Region(std::move(boxes));
}

Region RegionSampler::box_2d(long long span) {
  Point lo(2), hi(2);
  for (std::size_t a = 0; a < 2; ++a) {
    Scalar u = rational(-span, span), v = rational(-span, span);
    while (v == u) v = rational(-span, span);
    lo[a] = u < v ? u : v;
    hi[a] = u < v ? v : u;
  }
  return Region::box(std::move(lo), std::move(hi));
}

namespace {

const std::array<Scalar, 4>& scaling_levels() {
  static const std::array<Scalar, 4> ls{Scalar(1), Scalar::fraction(3, 2), Scalar(2), Scalar(4)};
  return ls;
}

void note_failure(SuiteResult& s, const std::string& what) {
  if (s.failures++ == 0) s.detail = what;
}

void finish(SuiteResult& s) {
  s.pass = s.cases > 0 && s.failures == 0;
  if (s.pass && s.detail.empty()) s.detail = std::to_string(s.cases) + " cases";
}

// Fraction of uniform samples in the bounding square that land in the tube,
// compared with the Steiner value; true when within 3 standard errors.
bool monte_carlo_agrees(const Box& B, double eps, std::size_t n, RegionSampler& rng, std::string& log) {
  const double x0 = B.lo()[0].to_double() - eps, x1 = B.hi()[0].to_double() + eps;
  const double y0 = B.lo()[1].to_double() - eps, y1 = B.hi()[1].to_double() + eps;
  const double area = (x1 - x0) * (y1 - y0);
  const double bx0 = x0 + eps, bx1 = x1 - eps, by0 = y0 + eps, by1 = y1 - eps;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double px = x0 + (x1 - x0) * rng.unit();
    const double py = y0 + (y1 - y0) * rng.unit();
    // distance to the boundary of the box, inside or out
    const double dx = std::max(bx0 - px, px - bx1), dy = std::max(by0 - py, py - by1);
    const double d = dx <= 0 && dy <= 0 ? -std::max(dx, dy) : std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
    if (d <= eps) ++hits;
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(n);
  const double est = frac * area;
  const double sigma = area * std::sqrt(frac * (1 - frac) / static_cast<double>(n));
  const double kernel = tube_measure(Region({B}), Scalar(rational_from_double(eps))).value;
  std::ostringstream os;
  os << "mc eps=" << eps << " kernel=" << kernel << " estimate=" << est << " sigma=" << sigma << "; ";
  log += os.str();
  return std::fabs(est - kernel) <= 3 * sigma;
}

}  // namespace

SuiteResult suite_tube_scaling(const SuiteOptions& opts) {
  SuiteResult s;
  s.name = "tube-scaling";
  s.property = "mu(E^{+l}) <= l^d mu(E^{+1})";
  RegionSampler rng(opts.seed);

  const Box probe(Point{Scalar(0), Scalar(0)}, Point{Scalar(3), Scalar::fraction(5, 4)});
  std::string mc_log;
  bool mc_ok = true;
  for (const auto& l : scaling_levels())
    mc_ok = monte_carlo_agrees(probe, l.to_double(), opts.monte_carlo_samples, rng, mc_log) && mc_ok;
  ++s.cases;
  if (!mc_ok) note_failure(s, "steiner kernel disagrees with monte carlo: " + mc_log);

  for (std::size_t i = 0; i < opts.scaling_1d; ++i) {
    Region E = rng.region_1d();
    for (const auto& l : scaling_levels()) {
      ++s.cases;
      if (!check_tube_scaling(E, l)) note_failure(s, E.str() + " l=" + l.str());
    }
  }
  for (std::size_t i = 0; i < opts.scaling_2d; ++i) {
    Region E = rng.box_2d();
    for (const auto& l : scaling_levels()) {
      ++s.cases;
      if (!check_tube_scaling(E, l, 1e-9)) note_failure(s, E.str() + " l=" + l.str());
    }
  }
  finish(s);
  if (s.pass) s.detail += "; " + mc_log;
  return s;
}

SuiteResult suite_tube_inclusion(const SuiteOptions& opts) {
  SuiteResult s;
  s.name = "tube-inclusion";
  s.property = "(E^{+l})^{+r} subset of E^{+(l+r)}";
  RegionSampler rng(opts.seed + 1);
  std::size_t samples = 0;
  for (std::size_t i = 0; i < opts.inclusion_regions; ++i) {
    Region E = i % 2 == 0 ? rng.region_1d() : rng.box_2d(10);
    Scalar l = rng.rational(0, 4), r = rng.rational(0, 4);
    if (l.is_zero()) l = Scalar::fraction(1, 8);
    if (r.is_zero()) r = Scalar::fraction(1, 8);
    InclusionCheck c = check_tube_inclusion(E, l, r, opts.inclusion_samples);
    ++s.cases;
    samples += c.samples;
    if (!c.holds || c.samples < opts.inclusion_samples)
      note_failure(s, E.str() + " l=" + l.str() + " r=" + r.str() + " counterexamples=" +
                          std::to_string(c.counterexamples) + " samples=" + std::to_string(c.samples));
  }
  finish(s);
  if (s.pass) s.detail += ", " + std::to_string(samples) + " samples";
  return s;
}

SuiteResult suite_count_bounds(const SuiteOptions& opts, const std::vector<SourcePtr>& sources) {
  SuiteResult s;
  s.name = "count-bounds";
  s.property = "(eta/R^d)(mu(E)-mu(E^{+R})) <= #(E cap S) <= (eta'/r^d)(mu(E)+mu(E^{+r}))";
  RegionSampler rng(opts.seed + 2);
  for (const auto& S : sources) {
    ConstantsTable k = derive_constants(*S);
    for (std::size_t i = 0; i < opts.count_intervals; ++i) {
      Scalar a = rng.rational(-500, 500);
      Scalar len = rng.rational(0, 300);
      if (len.is_zero()) len = Scalar::fraction(1, 8);
      Region E = Region::interval(a, a + len);
      CountBoundsCheck c = check_count_bounds(*S, k, E);
      ++s.cases;
      if (!c.holds)
        note_failure(s, S->spec() + " " + E.str() + " count=" + std::to_string(c.count) +
                            " bounds=[" + std::to_string(c.lower) + "," + std::to_string(c.upper) + "]");
    }
  }
  finish(s);
  return s;
}

SuiteResult suite_translate_bound(const SuiteOptions& opts, const std::vector<SourcePtr>& sources) {
  SuiteResult s;
  s.name = "translate-bound";
  s.property = "|#((E+x) cap S) - #(E cap S)| <= q l^d mu(E^{+1})";
  RegionSampler rng(opts.seed + 3);
  for (const auto& S : sources) {
    ConstantsTable k = derive_constants(*S);
    double worst = 0.0;
    for (std::size_t i = 0; i < opts.shift_cases; ++i) {
      Region E = translate(rng.region_1d(5, 60), rng.rational(-300, 300));
      Scalar l = rng.rational(1, 8);
      Scalar x = rng.rational(-8, 8);
      while (abs(x) > l) x = rng.rational(-8, 8);
      TranslateBoundCheck t = check_translate_bound(*S, k, E, Point{x}, l);
      ++s.cases;
      worst = std::max(worst, static_cast<double>(t.difference) / t.bound);
      if (!t.holds)
        note_failure(s, S->spec() + " " + E.str() + " x=" + x.str() + " l=" + l.str() +
                            " diff=" + std::to_string(t.difference) + " bound=" + std::to_string(t.bound));
    }
    std::ostringstream os;
    os << S->spec() << " max diff/bound " << worst << "; ";
    if (s.failures == 0) s.detail += os.str();
  }
  finish(s);
  return s;
}

SuiteResult suite_deviant_van_hove(const SuiteOptions& /*opts*/) {
  SuiteResult s;
  s.name = "deviant-van-hove";
  s.property = "c_i-deviant regions with increasing c_i are van Hove with growing inscribed balls";
  SourcePtr S = make_half_fibonacci();
  const Scalar rho = *S->density().exact;
  const Region window = Region::interval(Scalar(0), Scalar(100'000));
  DeviantSearchOptions o;
  o.selection = Selection::shortest;
  std::vector<Scalar> cs;
  std::vector<DiscrepancyReport> reports;
  for (long long k = 1; k <= 6; ++k) {
    Scalar c = Scalar::fraction(k, 8);
    DeviantSearch d = find_deviant(*S, rho, c, window, 1'000'000, o);
    ++s.cases;
    if (!d.find) {
      note_failure(s, "no " + c.str() + "-deviant interval in " + window.str());
      continue;
    }
    cs.push_back(c);
    reports.push_back(d.find->report);
  }
  if (s.failures == 0) {
    VanHoveFromDeviantOptions vo;
    vo.threshold = 0.1;
    vo.relative = true;
    VanHoveDiagnostics vh = deviant_implies_van_hove(reports, cs, vo);
    ++s.cases;
    if (!vh.pass) note_failure(s, "van Hove check: " + vh.reason);
    Scalar prev(-1);
    std::ostringstream os;
    os << "radii";
    for (const auto& r : reports) {
      Scalar rad = largest_inscribed_ball(r.region).radius;
      os << ' ' << rad.to_double();
      ++s.cases;
      if (!(rad > prev)) note_failure(s, "inscribed radius does not increase at " + r.region.str());
      prev = rad;
    }
    if (s.failures == 0) s.detail = os.str();
  }
  finish(s);
  return s;
}

std::vector<SourcePtr> default_suite_sources() {
  return {make_integer_lattice(), make_example_l(), make_fibonacci(), make_half_fibonacci()};
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opts, std::size_t workers) {
  const auto sources = default_suite_sources();
  return detail::parallel_map<SuiteResult>(5, workers, [&](std::size_t k) {
    switch (k) {
      case 0: return suite_tube_scaling(opts);
      case 1: return suite_tube_inclusion(opts);
      case 2: return suite_count_bounds(opts, sources);
      case 3: return suite_translate_bound(opts, sources);
      default: return suite_deviant_van_hove(opts);
    }
  });
}

}  // namespace aperiodica
