#include "aperiodica/search.hpp"

#include "parallel.hpp"

#include "aperiodica/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>

namespace aperiodica {

namespace {

// Sorted points of a window with double shadows and the discrepancy
// potential G(y) = #{p <= y} - rho*y sampled at midpoints.
struct LineScan {
  std::vector<Scalar> pts;
  std::vector<double> x;
  std::vector<double> mid;  // mid[j] between pts[j] and pts[j+1]
  std::vector<double> F;    // (j+1) - rho*mid[j]

  Scalar mid_exact(std::size_t j) const { return midpoint(pts[j], pts[j + 1]); }
};

LineScan load_scan(const PointSource& S, const Scalar& lo, const Scalar& hi, double rho, std::size_t budget,
                   bool& truncated) {
  LineScan s;
  s.pts = S.points_in(lo, hi);
  if (s.pts.size() > budget) {
    s.pts.resize(budget);
    truncated = true;
  }
  s.x.reserve(s.pts.size());
  for (const auto& p : s.pts) s.x.push_back(p.to_double());
  if (s.pts.size() >= 2) {
    s.mid.resize(s.pts.size() - 1);
    s.F.resize(s.pts.size() - 1);
    for (std::size_t j = 0; j + 1 < s.pts.size(); ++j) {
      s.mid[j] = 0.5 * (s.x[j] + s.x[j + 1]);
      s.F[j] = static_cast<double>(j + 1) - rho * s.mid[j];
    }
  }
  return s;
}

struct Cand {
  std::size_t a = 0, b = 0;
  double score = 0.0;  // lower bound on the signed discrepancy magnitude
  int sign = 0;
  std::size_t comp = 0;
};

// Endpoint potentials: positive score = Rp[b] - Lp[a], negative = Ln[a] - Rn[b].
struct Potentials {
  const std::vector<double>* Rp;
  const std::vector<double>* Lp;
  const std::vector<double>* Ln;
  const std::vector<double>* Rn;
};

// Per right endpoint, the left endpoint with the largest score.
std::vector<Cand> best_per_right(const std::vector<double>& mid, const Potentials& P, std::size_t first,
                                 std::size_t last, double minlen, int sign_filter) {
  std::vector<Cand> out;
  if (last <= first) return out;
  std::size_t A = first;  // next left endpoint to admit
  bool any = false;
  std::size_t imin = 0, imax = 0;  // argmin of Lp, argmax of Ln
  for (std::size_t b = first; b < last; ++b) {
    while (A < b && mid[b] - mid[A] >= minlen) {
      if (!any) {
        imin = imax = A;
        any = true;
      } else {
        if ((*P.Lp)[A] <= (*P.Lp)[imin]) imin = A;
        if ((*P.Ln)[A] >= (*P.Ln)[imax]) imax = A;
      }
      ++A;
    }
    if (!any) continue;
    Cand best;
    bool have = false;
    if (sign_filter >= 0) {
      double s = (*P.Rp)[b] - (*P.Lp)[imin];
      best = {imin, b, s, +1, 0};
      have = true;
    }
    if (sign_filter <= 0) {
      double s = (*P.Ln)[imax] - (*P.Rn)[b];
      if (!have || s > best.score) best = {imax, b, s, -1, 0};
      have = true;
    }
    out.push_back(best);
  }
  return out;
}

class ExtremumTree {
 public:
  ExtremumTree(const std::vector<double>& v, bool is_min) : n_(v.size()), is_min_(is_min) {
    size_ = 1;
    while (size_ < n_) size_ <<= 1;
    t_.assign(2 * size_, is_min ? INFINITY : -INFINITY);
    for (std::size_t i = 0; i < n_; ++i) t_[size_ + i] = v[i];
    for (std::size_t i = size_ - 1; i > 0; --i)
      t_[i] = is_min ? std::min(t_[2 * i], t_[2 * i + 1]) : std::max(t_[2 * i], t_[2 * i + 1]);
  }

  // Rightmost index in [lo, hi] whose value beats bound (< for min, > for max).
  std::optional<std::size_t> rightmost(std::size_t lo, std::size_t hi, double bound) const {
    if (lo > hi || n_ == 0) return std::nullopt;
    return descend(1, 0, size_ - 1, lo, hi, bound);
  }

 private:
  bool beats(double v, double bound) const { return is_min_ ? v < bound : v > bound; }

  std::optional<std::size_t> descend(std::size_t node, std::size_t l, std::size_t r, std::size_t lo,
                                     std::size_t hi, double bound) const {
    if (r < lo || l > hi || !beats(t_[node], bound)) return std::nullopt;
    if (l == r) return l;
    std::size_t m = (l + r) / 2;
    if (auto x = descend(2 * node + 1, m + 1, r, lo, hi, bound)) return x;
    return descend(2 * node, l, m, lo, hi, bound);
  }

  std::size_t n_, size_ = 1;
  bool is_min_;
  std::vector<double> t_;
};

// Per right endpoint, the nearest left endpoint whose score exceeds T.
std::vector<Cand> nearest_per_right(const std::vector<double>& mid, const Potentials& P, std::size_t first,
                                    std::size_t last, double minlen, double T, int sign_filter) {
  std::vector<Cand> out;
  if (last <= first) return out;
  ExtremumTree tmin(*P.Lp, true), tmax(*P.Ln, false);
  std::size_t A = first;
  for (std::size_t b = first; b < last; ++b) {
    while (A < b && mid[b] - mid[A] >= minlen) ++A;
    if (A == first) continue;
    std::size_t hi = A - 1;
    std::optional<Cand> best;
    if (sign_filter >= 0) {
      if (auto a = tmin.rightmost(first, hi, (*P.Rp)[b] - T)) best = Cand{*a, b, (*P.Rp)[b] - (*P.Lp)[*a], +1, 0};
    }
    if (sign_filter <= 0) {
      if (auto a = tmax.rightmost(first, hi, (*P.Rn)[b] + T)) {
        Cand c{*a, b, (*P.Ln)[*a] - (*P.Rn)[b], -1, 0};
        if (!best || c.a > best->a) best = c;
      }
    }
    if (best) out.push_back(*best);
  }
  return out;
}

bool ratio_exceeds(const DiscrepancyReport& rep, const Scalar& c) { return is_c_deviant(rep, c); }

struct Verified {
  Region region;
  DiscrepancyReport report;
};

std::optional<Verified> verify_plain(const LineScan& s, const Cand& cand, const Scalar& rho,
                                     const Scalar& min_length) {
  Scalar lo = s.mid_exact(cand.a), hi = s.mid_exact(cand.b);
  if (hi - lo < min_length) return std::nullopt;
  Region R = Region::interval(lo, hi);
  DiscrepancyReport rep = discrepancy_from_count(cand.b - cand.a, rho, R);
  return Verified{std::move(R), std::move(rep)};
}

void sort_by_policy(std::vector<Cand>& cands, const std::vector<LineScan>& scans, Selection sel) {
  auto len = [&](const Cand& c) { return scans[c.comp].mid[c.b] - scans[c.comp].mid[c.a]; };
  auto left = [&](const Cand& c) { return scans[c.comp].mid[c.a]; };
  if (sel == Selection::shortest) {
    std::stable_sort(cands.begin(), cands.end(), [&](const Cand& x, const Cand& y) {
      if (len(x) != len(y)) return len(x) < len(y);
      return left(x) < left(y);
    });
  } else {
    std::stable_sort(cands.begin(), cands.end(), [&](const Cand& x, const Cand& y) {
      if (x.score != y.score) return x.score > y.score;
      if (len(x) != len(y)) return len(x) < len(y);
      return left(x) < left(y);
    });
  }
}

DeviantFind make_find(Verified v) {
  DeviantFind f;
  f.region = std::move(v.region);
  f.report = std::move(v.report);
  f.c_achieved = f.report.ratio;
  f.c_achieved_exact = f.report.ratio_exact;
  f.sign = f.report.sign;
  return f;
}

void check_search_args(const PointSource& S, const Scalar& rho, const Scalar& c, const Region& window,
                       const DeviantSearchOptions& opts) {
  require(S.dim() == 1, ErrorKind::invalid_parameter, "deviant search is implemented for 1D sources");
  require(window.dim() == 1 && !window.empty(), ErrorKind::invalid_parameter, "search window must be a 1D region");
  require(rho.sign() > 0, ErrorKind::invalid_parameter, "rho must be positive");
  require(c.sign() > 0, ErrorKind::invalid_parameter, "c must be positive");
  require(opts.min_length >= Scalar(2), ErrorKind::invalid_parameter, "min_length must be at least 2");
}

// Sliding extrema of G over [mid_j - ell, mid_j + ell]:
// hmax[j] = sup G, hmin[j] = inf G. Points index from the start of s.
void sliding_extrema(const LineScan& s, double rho, double ell, std::vector<double>& hmin, std::vector<double>& hmax) {
  const std::size_t m = s.mid.size(), n = s.x.size();
  hmin.assign(m, 0.0);
  hmax.assign(m, 0.0);
  std::deque<std::size_t> dmax, dmin;  // indices into points
  std::size_t lo = 0, hi = 0;           // window [lo, hi) of points
  for (std::size_t j = 0; j < m; ++j) {
    double y0 = s.mid[j] - ell, y1 = s.mid[j] + ell;
    while (hi < n && s.x[hi] <= y1) {
      double gr = static_cast<double>(hi + 1) - rho * s.x[hi];
      double gl = static_cast<double>(hi) - rho * s.x[hi];
      while (!dmax.empty() && static_cast<double>(dmax.back() + 1) - rho * s.x[dmax.back()] <= gr) dmax.pop_back();
      dmax.push_back(hi);
      while (!dmin.empty() && static_cast<double>(dmin.back()) - rho * s.x[dmin.back()] >= gl) dmin.pop_back();
      dmin.push_back(hi);
      ++hi;
    }
    while (lo < hi && s.x[lo] < y0) ++lo;
    while (!dmax.empty() && dmax.front() < lo) dmax.pop_front();
    while (!dmin.empty() && dmin.front() < lo) dmin.pop_front();
    // G just right of y0 counts the points below y0, which is lo.
    double g_left = static_cast<double>(lo) - rho * y0;
    double g_right = static_cast<double>(hi) - rho * y1;
    double mx = g_left, mn = g_right;
    if (!dmax.empty()) mx = std::max(mx, static_cast<double>(dmax.front() + 1) - rho * s.x[dmax.front()]);
    if (!dmin.empty()) mn = std::min(mn, static_cast<double>(dmin.front()) - rho * s.x[dmin.front()]);
    hmax[j] = mx;
    hmin[j] = mn;
  }
}

// Robust count range of [s.mid[a], s.mid[b]] over shifts in [-ell, ell], in doubles.
std::pair<long long, long long> robust_count_range(const LineScan& s, std::size_t a, std::size_t b, double ell) {
  const double u = s.mid[a], w = s.mid[b];
  auto idx_lo = [&](double v) { return static_cast<std::size_t>(std::lower_bound(s.x.begin(), s.x.end(), v) - s.x.begin()); };
  auto idx_hi = [&](double v) { return static_cast<std::size_t>(std::upper_bound(s.x.begin(), s.x.end(), v) - s.x.begin()); };
  // Events: right end reaching a point (enter), left end passing a point (leave).
  std::vector<std::pair<double, int>> ev;
  for (std::size_t i = idx_lo(w - ell); i < idx_hi(w + ell); ++i) ev.emplace_back(s.x[i] - w, +1);
  for (std::size_t i = idx_lo(u - ell); i < idx_hi(u + ell); ++i) ev.emplace_back(s.x[i] - u, -1);
  std::sort(ev.begin(), ev.end());
  long long cur = static_cast<long long>(idx_hi(w - ell)) - static_cast<long long>(idx_lo(u - ell));
  long long mn = cur, mx = cur;
  std::size_t k = 0;
  while (k < ev.size() && ev[k].first <= -ell) {
    if (ev[k].second < 0 && ev[k].first == -ell) --cur;
    ++k;
  }
  mn = std::min(mn, cur);
  mx = std::max(mx, cur);
  while (k < ev.size()) {
    double v = ev[k].first;
    long long enters = 0, leaves = 0;
    while (k < ev.size() && ev[k].first == v) {
      (ev[k].second > 0 ? enters : leaves) += 1;
      ++k;
    }
    long long at = cur + enters;
    mx = std::max(mx, at);
    mn = std::min(mn, at);
    cur = at - leaves;
    if (v < ell) {
      mn = std::min(mn, cur);
      mx = std::max(mx, cur);
    }
  }
  return {mn, mx};
}

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

// Midpoint indices whose surroundings within h repeat those of anchor j0,
// matched on rounded gap codes. Empty when the gaps have too many distinct
// lengths to encode.
std::vector<std::size_t> patch_returns(const LineScan& s, std::size_t j0, double h, const std::string& codes) {
  std::vector<std::size_t> out;
  const double m = s.mid[j0];
  auto i0 = static_cast<std::size_t>(std::lower_bound(s.x.begin(), s.x.end(), m - h) - s.x.begin());
  auto i1 = static_cast<std::size_t>(std::upper_bound(s.x.begin(), s.x.end(), m + h) - s.x.begin());
  if (i0 == 0 || i1 >= s.x.size()) return out;
  // gaps i0-1 .. i1-1 fix every point from i0-1 to i1
  const std::size_t g0 = i0 - 1, g1 = i1;
  const std::string_view hay(codes);
  const std::string_view needle = hay.substr(g0, g1 - g0);
  const std::boyer_moore_horspool_searcher searcher(needle.begin(), needle.end());
  auto it = hay.begin();
  while (true) {
    auto [b, e] = searcher(it, hay.end());
    if (b == hay.end()) break;
    std::size_t g = static_cast<std::size_t>(b - hay.begin());
    out.push_back(g + (j0 - g0));
    it = b + 1;
  }
  return out;
}

std::string gap_codes(const LineScan& s) {
  std::string codes;
  if (s.x.size() < 2) return codes;
  std::vector<double> kinds;
  codes.reserve(s.x.size() - 1);
  for (std::size_t i = 0; i + 1 < s.x.size(); ++i) {
    double g = s.x[i + 1] - s.x[i];
    std::size_t k = 0;
    while (k < kinds.size() && std::fabs(kinds[k] - g) > 1e-6 * std::max(1.0, g)) ++k;
    if (k == kinds.size()) {
      if (kinds.size() == 255) return {};
      kinds.push_back(g);
    }
    codes.push_back(static_cast<char>(k + 1));
  }
  return codes;
}

// Pairs of returns of one anchor patch with |F_b - F_a| above T. Deficits need
// one more unit since a point hit exactly by both shifted endpoints is
// counted at both.
void return_pair_candidates(const LineScan& s, const std::vector<std::size_t>& occ, double minlen, double T, int sign,
                            Selection sel, std::size_t comp, std::vector<Cand>& out) {
  const std::size_t n = occ.size();
  if (n < 2) return;
  auto push = [&](std::size_t a, std::size_t b, double d) {
    Cand c;
    c.a = a;
    c.b = b;
    c.sign = d > 0 ? 1 : -1;
    c.score = std::fabs(d);
    c.comp = comp;
    out.push_back(c);
  };
  auto ok = [&](double d) {
    if (d > T) return sign >= 0;
    if (-d > T + 1) return sign <= 0;
    return false;
  };
  if (sel == Selection::shortest) {
    constexpr std::size_t kCap = 20000;
    for (std::size_t l = 1; l < std::min(n, kCap); ++l) {
      for (std::size_t k = l; k-- > 0;) {
        if (s.mid[occ[l]] - s.mid[occ[k]] < minlen) continue;
        double d = s.F[occ[l]] - s.F[occ[k]];
        if (ok(d)) {
          push(occ[k], occ[l], d);
          break;
        }
      }
    }
    return;
  }
  // max ratio: prefix extrema of F over returns far enough to the left
  std::size_t kmin = kUnset, kmax = kUnset, k = 0;
  for (std::size_t l = 0; l < n; ++l) {
    while (k < l && s.mid[occ[l]] - s.mid[occ[k]] >= minlen) {
      if (kmin == kUnset || s.F[occ[k]] < s.F[occ[kmin]]) kmin = k;
      if (kmax == kUnset || s.F[occ[k]] > s.F[occ[kmax]]) kmax = k;
      ++k;
    }
    if (kmin == kUnset) continue;
    double up = s.F[occ[l]] - s.F[occ[kmin]], down = s.F[occ[l]] - s.F[occ[kmax]];
    if (ok(up)) push(occ[kmin], occ[l], up);
    if (ok(down)) push(occ[kmax], occ[l], down);
  }
}

}  // namespace

ConstantsTable derive_constants(const PointSource& S) {
  ConstantsTable k;
  k.d = S.dim();
  k.delone = S.delone();
  // Packing by cubes of side 2R, covering by cubes of side 2r/sqrt(d).
  switch (k.d) {
    case 1:
      k.eta = Scalar::fraction(1, 2);
      k.eta_prime = Scalar::fraction(1, 2);
      break;
    case 2:
      k.eta = Scalar::fraction(1, 4);
      k.eta_prime = Scalar::fraction(1, 2);
      break;
    case 4:
      k.eta = Scalar::fraction(1, 16);
      k.eta_prime = Scalar(1);
      break;
    default:
      fail(ErrorKind::invalid_parameter, "counting constants are pinned for d in {1, 2, 4}");
  }
  Scalar factor = Scalar(2) * k.eta_prime * Scalar(1 + (1LL << k.d));
  if (k.delone.r_exact) {
    k.q = factor / pow(*k.delone.r_exact, static_cast<unsigned>(k.d));
    k.q_value = k.q->to_double();
  } else {
    k.q_value = factor.to_double() / std::pow(k.delone.r, static_cast<double>(k.d));
  }
  return k;
}

CountBoundsCheck check_count_bounds(const PointSource& S, const ConstantsTable& k, const Region& E) {
  CountBoundsCheck c;
  c.count = S.count_in(E);
  Scalar mu = measure(E);
  const auto& dp = k.delone;
  const unsigned d = static_cast<unsigned>(k.d);
  if (dp.r_exact && dp.R_exact) {
    TubeMeasure tR = tube_measure(E, *dp.R_exact), tr = tube_measure(E, *dp.r_exact);
    if (tR.exact() && tr.exact()) {
      c.lower_exact = k.eta / pow(*dp.R_exact, d) * (mu - *tR.exact_value);
      c.upper_exact = k.eta_prime / pow(*dp.r_exact, d) * (mu + *tr.exact_value);
      c.lower = c.lower_exact->to_double();
      c.upper = c.upper_exact->to_double();
      Scalar n(static_cast<long long>(c.count));
      c.holds = *c.lower_exact <= n && n <= *c.upper_exact;
      return c;
    }
  }
  double R = dp.R, r = dp.r;
  Scalar Rs = dp.R_exact ? *dp.R_exact : Scalar(rational_from_double(R));
  Scalar rs = dp.r_exact ? *dp.r_exact : Scalar(rational_from_double(r));
  TubeMeasure tR = tube_measure(E, Rs), tr = tube_measure(E, rs);
  double m = mu.to_double();
  c.lower = k.eta.to_double() / std::pow(R, d) * (m - (tR.value - tR.error_bound));
  c.upper = k.eta_prime.to_double() / std::pow(r, d) * (m + tr.value + tr.error_bound);
  double n = static_cast<double>(c.count);
  c.holds = c.lower <= n * (1 + 1e-12) && n <= c.upper * (1 + 1e-12);
  return c;
}

TranslateBoundCheck check_translate_bound(const PointSource& S, const ConstantsTable& k, const Region& E,
                                          const Point& x, const Scalar& l) {
  require(x.size() == S.dim(), ErrorKind::dimension_mismatch, "shift dimension");
  Scalar norm_sq(0);
  for (const auto& c : x) norm_sq += c * c;
  require(norm_sq <= l * l, ErrorKind::invalid_parameter, "shift longer than l");
  require(l.to_double() >= k.delone.r * (1 - 1e-12), ErrorKind::invalid_parameter, "l must be at least r");
  TranslateBoundCheck t;
  long long a = static_cast<long long>(S.count_in(translate(E, x)));
  long long b = static_cast<long long>(S.count_in(E));
  t.difference = a > b ? a - b : b - a;
  TubeMeasure tube = tube_measure(E, Scalar(1));
  unsigned d = static_cast<unsigned>(k.d);
  if (k.q && tube.exact()) {
    t.bound_exact = *k.q * pow(l, d) * *tube.exact_value;
    t.bound = t.bound_exact->to_double();
    t.holds = Scalar(t.difference) <= *t.bound_exact;
  } else {
    t.bound = k.q_value * std::pow(l.to_double(), d) * (tube.value + tube.error_bound);
    t.holds = static_cast<double>(t.difference) <= t.bound * (1 + 1e-12);
  }
  return t;
}

DeviantSearch find_deviant(const PointSource& S, const Scalar& rho, const Scalar& c, const Region& window,
                           std::size_t budget, const DeviantSearchOptions& opts) {
  check_search_args(S, rho, c, window, opts);
  DeviantSearch out;
  const double rd = rho.to_double(), minlen = opts.min_length.to_double();
  const double T = 4 * c.to_double();
  std::vector<LineScan> scans;
  std::vector<Cand> top, hits;
  for (std::size_t ci = 0; ci < window.size(); ++ci) {
    const Box& w = window.boxes()[ci];
    scans.push_back(load_scan(S, w.lo()[0], w.hi()[0], rd, budget, out.truncated));
    const LineScan& s = scans.back();
    out.points_scanned += s.pts.size();
    Potentials P{&s.F, &s.F, &s.F, &s.F};
    auto best = best_per_right(s.mid, P, 0, s.mid.size(), minlen, opts.sign);
    for (auto& cnd : best) cnd.comp = ci;
    top.insert(top.end(), best.begin(), best.end());
    if (opts.selection == Selection::shortest) {
      auto near = nearest_per_right(s.mid, P, 0, s.mid.size(), minlen, T, opts.sign);
      for (auto& cnd : near) cnd.comp = ci;
      hits.insert(hits.end(), near.begin(), near.end());
    }
  }

  sort_by_policy(top, scans, Selection::max_ratio);
  // supremum over all candidates
  for (std::size_t i = 0; i < top.size() && i < opts.exact_retries; ++i) {
    auto v = verify_plain(scans[top[i].comp], top[i], rho, opts.min_length);
    if (!v) continue;
    if (!out.sup_region || v->report.ratio > out.sup_ratio) {
      out.sup_ratio = v->report.ratio;
      out.sup_region = v->region;
    }
    break;
  }

  if (opts.selection == Selection::max_ratio) hits = top;
  sort_by_policy(hits, scans, opts.selection);
  std::size_t tried = 0;
  for (const auto& cand : hits) {
    if (cand.score <= T * (1 - 1e-9)) {
      if (opts.selection == Selection::max_ratio) break;
      continue;
    }
    if (tried++ >= opts.exact_retries) break;
    auto v = verify_plain(scans[cand.comp], cand, rho, opts.min_length);
    if (!v || !ratio_exceeds(v->report, c)) continue;
    if (opts.sign != 0 && v->report.sign != opts.sign) continue;
    out.find = make_find(std::move(*v));
    break;
  }
  return out;
}

OppositeTranslate find_opposite_translate(const PointSource& S, const Scalar& rho, const Region& E,
                                          const Region& scan_window) {
  require(S.dim() == 1 && E.dim() == 1 && scan_window.dim() == 1, ErrorKind::invalid_parameter,
          "opposite translate search is 1D");
  DiscrepancyReport base = discrepancy_report(S, rho, E);
  require(base.sign != 0, ErrorKind::invalid_parameter, "region has zero discrepancy");
  const Scalar x_min = E.hi() - scan_window.hi(), x_max = E.lo() - scan_window.lo();
  require(x_min <= x_max, ErrorKind::invalid_parameter, "scan window is shorter than the region");
  // Shifts s = -x keep E + s inside the window for s in [s_lo, s_hi].
  const Scalar s_lo = -x_max, s_hi = -x_min;
  const std::vector<Scalar> pts = S.points_in(scan_window.lo(), scan_window.hi());

  // A point p is counted by component [a, b] of E + s for s in [p - b, p - a].
  struct Ev {
    double v;
    int delta;  // count change when s moves right across v
    std::size_t p;
    std::size_t comp;
  };
  std::vector<Ev> ev;
  const double slo = s_lo.to_double(), shi = s_hi.to_double();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double xi = pts[i].to_double();
    for (std::size_t k = 0; k < E.size(); ++k) {
      double a = E.boxes()[k].lo()[0].to_double(), b = E.boxes()[k].hi()[0].to_double();
      if (xi - b >= slo - 1 && xi - b <= shi + 1) ev.push_back({xi - b, +1, i, 2 * k + 1});
      if (xi - a >= slo - 1 && xi - a <= shi + 1) ev.push_back({xi - a, -1, i, 2 * k});
    }
  }
  std::sort(ev.begin(), ev.end(), [](const Ev& a, const Ev& b) { return a.v < b.v; });
  auto exact_of = [&](const Ev& e) {
    const Box& b = E.boxes()[e.comp / 2];
    return pts[e.p] - (e.comp % 2 ? b.hi()[0] : b.lo()[0]);
  };

  const Scalar expected = rho * measure(E);
  const double expected_d = expected.to_double();
  const int want = -base.sign;
  OppositeTranslate out;
  std::string profile;

  auto plausible = [&](long long n) {
    double disc = static_cast<double>(n) - expected_d;
    return want > 0 ? disc >= -0.5 : disc <= 0.5;
  };
  auto try_shift = [&](const Scalar& s) {
    Region R = translate(E, s);
    std::size_t n = S.count_in(R);
    ++out.segments_checked;
    if (out.segments_checked <= 40) profile += " " + (-s).str() + ":" + std::to_string(n);
    int sg = (Scalar(static_cast<long long>(n)) - expected).sign();
    if (sg == want || sg == 0) {
      out.x = -s;
      out.report = discrepancy_from_count(n, rho, R);
      return true;
    }
    return false;
  };

  // Walk segments outward from s = 0 on both sides, nearest first.
  std::size_t r = static_cast<std::size_t>(
      std::upper_bound(ev.begin(), ev.end(), 0.0, [](double v, const Ev& e) { return v < e.v; }) - ev.begin());
  std::ptrdiff_t l = static_cast<std::ptrdiff_t>(r) - 1;
  Scalar r_lo(0), l_hi(0);  // current segment boundaries next to zero
  std::optional<long long> r_count, l_count;
  bool r_done = false, l_done = false;
  while (!r_done || !l_done) {
    double dr = r_done ? INFINITY : r_lo.to_double();
    double dl = l_done ? INFINITY : -l_hi.to_double();
    if (dr <= dl) {
      Scalar hi = r < ev.size() ? exact_of(ev[r]) : s_hi;
      if (hi > s_hi) hi = s_hi;
      if (r_lo >= s_hi) {
        r_done = true;
        continue;
      }
      if (r_lo < hi) {
        Scalar m = midpoint(r_lo, hi);
        if (!r_count) r_count = static_cast<long long>(S.count_in(translate(E, m)));
        if (m >= s_lo && plausible(*r_count) && try_shift(m)) return out;
      }
      if (r >= ev.size()) {
        r_done = true;
        continue;
      }
      if (r_count) *r_count += ev[r].delta;
      r_lo = hi > r_lo ? hi : r_lo;
      ++r;
    } else {
      Scalar lo = l >= 0 ? exact_of(ev[static_cast<std::size_t>(l)]) : s_lo;
      if (lo < s_lo) lo = s_lo;
      if (l_hi <= s_lo) {
        l_done = true;
        continue;
      }
      if (lo < l_hi) {
        Scalar m = midpoint(lo, l_hi);
        if (!l_count) l_count = static_cast<long long>(S.count_in(translate(E, m)));
        if (m <= s_hi && plausible(*l_count) && try_shift(m)) return out;
      }
      if (l < 0) {
        l_done = true;
        continue;
      }
      if (l_count) *l_count -= ev[static_cast<std::size_t>(l)].delta;
      l_hi = lo < l_hi ? lo : l_hi;
      --l;
    }
  }
  fail(ErrorKind::not_found, "no translate with opposite discrepancy inside " + scan_window.str() +
                                 "; profile (x:count):" + profile);
}

RobustTranscript verify_shift_robust(const PointSource& S, const Scalar& rho, const Region& E, const Scalar& ell) {
  require(S.dim() == 1 && E.dim() == 1, ErrorKind::invalid_parameter, "robustness check is 1D");
  require(ell.sign() > 0, ErrorKind::invalid_parameter, "ell must be positive");
  const Scalar mu = measure(E), expected = rho * mu;
  const Scalar tube = *tube_measure(E, Scalar(1)).exact_value;
  const long long base = static_cast<long long>(S.count_in(E));
  const int sgn = (Scalar(base) - expected).sign();
  std::vector<Scalar> pts = S.points_in(E.lo() - ell, E.hi() + ell);

  struct Ev {
    Scalar v;
    int kind;  // +1 enter, -1 leave
  };
  std::vector<Ev> ev;
  for (const auto& p : pts) {
    for (const auto& b : E.boxes()) {
      Scalar enter = p - b.hi()[0], leave = p - b.lo()[0];
      if (enter >= -ell && enter <= ell) ev.push_back({enter, +1});
      if (leave >= -ell && leave <= ell) ev.push_back({leave, -1});
    }
  }
  std::vector<std::pair<double, std::size_t>> keys(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) keys[i] = {ev[i].v.to_double(), i};
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    double tol = 1e-9 * std::max({1.0, std::fabs(a.first), std::fabs(b.first)});
    if (a.first < b.first - tol) return true;
    if (b.first < a.first - tol) return false;
    return ev[a.second].v < ev[b.second].v;
  });

  auto count_at = [&](const Scalar& s) {
    long long n = 0;
    for (const auto& b : E.boxes()) {
      auto lo = std::lower_bound(pts.begin(), pts.end(), b.lo()[0] + s);
      auto hi = std::upper_bound(pts.begin(), pts.end(), b.hi()[0] + s);
      n += hi - lo;
    }
    return n;
  };

  RobustTranscript t;
  t.ell = ell;
  bool first = true;
  Scalar worst_val;
  auto record = [&](long long n, const Scalar& s) {
    ++t.shifts_checked;
    if (first) {
      t.min_count = t.max_count = n;
    } else {
      t.min_count = std::min(t.min_count, n);
      t.max_count = std::max(t.max_count, n);
    }
    Scalar val = Scalar(sgn) * (Scalar(n) - expected);
    if (first || val < worst_val) {
      worst_val = val;
      t.worst_shift = s;
      t.worst_discrepancy = Scalar(n) - expected;
    }
    first = false;
  };

  Scalar prev = -ell;
  long long cur = count_at(-ell);
  record(cur, -ell);
  std::size_t k = 0;
  while (k < keys.size() && ev[keys[k].second].v == -ell) {
    if (ev[keys[k].second].kind < 0) --cur;
    ++k;
  }
  while (k < keys.size()) {
    const Scalar v = ev[keys[k].second].v;
    if (prev < v) record(cur, midpoint(prev, v));
    long long enters = 0, leaves = 0;
    while (k < keys.size() && ev[keys[k].second].v == v) {
      (ev[keys[k].second].kind > 0 ? enters : leaves) += 1;
      ++k;
    }
    long long at = cur + enters;
    record(at, v);
    cur = at - leaves;
    prev = v;
  }
  if (prev < ell) {
    record(cur, midpoint(prev, ell));
    record(cur, ell);
  }
  // pad to at least 100 evenly spaced shifts
  if (t.shifts_checked < 100) {
    for (int i = 0; i <= 100; ++i) {
      Scalar s = -ell + Scalar(2) * ell * Scalar::fraction(i, 100);
      record(count_at(s), s);
    }
  }
  if (sgn == 0) worst_val = Scalar(0) - abs(worst_val);
  t.worst_ratio_exact = worst_val / tube;
  t.worst_ratio = t.worst_ratio_exact->to_double();
  return t;
}

DeviantSearch find_shift_robust_deviant(const PointSource& S, const Scalar& rho, const Scalar& c,
                                        const Scalar& ell, const Region& window, std::size_t budget,
                                        const RobustSearchOptions& opts) {
  check_search_args(S, rho, c, window, opts.base);
  require(ell.sign() > 0, ErrorKind::invalid_parameter, "ell must be positive");
  ConstantsTable K = derive_constants(S);
  DeviantSearch out;

  // Sufficient condition: (c + q ell^d)-deviance.
  if (K.q) {
    Scalar target = c + *K.q * ell;
    DeviantSearch plain = find_deviant(S, rho, target, window, budget, opts.base);
    out.sup_ratio = plain.sup_ratio;
    out.sup_region = plain.sup_region;
    out.points_scanned = plain.points_scanned;
    out.truncated = plain.truncated;
    if (plain.find) {
      RobustTranscript t = verify_shift_robust(S, rho, plain.find->region, ell);
      t.via_translate_bound = true;
      require(t.worst_ratio_exact && *t.worst_ratio_exact > c, ErrorKind::internal,
              "translate bound violated for " + plain.find->region.str());
      out.find = std::move(plain.find);
      out.find->robust = std::move(t);
      return out;
    }
  }

  // Direct search: conservative potentials from sliding extrema of G.
  const double rd = rho.to_double(), ld = ell.to_double(), minlen = opts.base.min_length.to_double();
  const double T = 4 * c.to_double();
  std::vector<LineScan> scans;
  std::vector<std::vector<double>> hmins, hmaxs;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;  // admissible midpoint index range per component
  std::vector<Cand> safe, rough, returns;
  out.points_scanned = 0;
  for (std::size_t ci = 0; ci < window.size(); ++ci) {
    const Box& w = window.boxes()[ci];
    Scalar pad = ell + Scalar(1);
    scans.push_back(load_scan(S, w.lo()[0] - pad, w.hi()[0] + pad, rd, budget, out.truncated));
    const LineScan& s = scans.back();
    out.points_scanned += s.pts.size();
    hmins.emplace_back();
    hmaxs.emplace_back();
    sliding_extrema(s, rd, ld, hmins.back(), hmaxs.back());
    double wlo = w.lo()[0].to_double(), whi = w.hi()[0].to_double();
    std::size_t first = static_cast<std::size_t>(std::lower_bound(s.mid.begin(), s.mid.end(), wlo) - s.mid.begin());
    std::size_t last = static_cast<std::size_t>(std::upper_bound(s.mid.begin(), s.mid.end(), whi) - s.mid.begin());
    ranges.emplace_back(first, last);
    Potentials cons{&hmins.back(), &hmaxs.back(), &hmins.back(), &hmaxs.back()};
    auto c1 = opts.base.selection == Selection::shortest
                  ? nearest_per_right(s.mid, cons, first, last, minlen, T, opts.base.sign)
                  : best_per_right(s.mid, cons, first, last, minlen, opts.base.sign);
    for (auto& x : c1) x.comp = ci;
    safe.insert(safe.end(), c1.begin(), c1.end());
    Potentials plain{&s.F, &s.F, &s.F, &s.F};
    auto c2 = opts.base.selection == Selection::shortest
                  ? nearest_per_right(s.mid, plain, first, last, minlen, T, opts.base.sign)
                  : best_per_right(s.mid, plain, first, last, minlen, opts.base.sign);
    for (auto& x : c2) x.comp = ci;

    // anchors: endpoints of the strongest plain candidates, then evenly spaced midpoints
    if (last > first) {
      std::vector<Cand> strong = c2;
      std::stable_sort(strong.begin(), strong.end(), [](const Cand& x, const Cand& y) { return x.score > y.score; });
      std::vector<std::size_t> anchors;
      const std::size_t half = opts.return_anchors / 2;
      for (std::size_t i = 0; i < strong.size() && anchors.size() + 1 < half + 1; ++i) {
        anchors.push_back(strong[i].a);
        anchors.push_back(strong[i].b);
      }
      for (std::size_t i = 0; anchors.size() < opts.return_anchors && i < opts.return_anchors - half; ++i)
        anchors.push_back(first + (last - first) * (2 * i + 1) / (2 * (opts.return_anchors - half)));
      const std::string codes = gap_codes(s);
      if (!codes.empty()) {
        auto per_anchor = detail::parallel_map<std::vector<Cand>>(anchors.size(), opts.workers, [&](std::size_t k) {
          auto occ = patch_returns(s, anchors[k], ld + 1.0, codes);
          std::erase_if(occ, [&](std::size_t j) { return j < first || j >= last; });
          std::vector<Cand> found;
          return_pair_candidates(s, occ, minlen, T, opts.base.sign, opts.base.selection, ci, found);
          return found;
        });
        for (auto& f : per_anchor) returns.insert(returns.end(), f.begin(), f.end());
      }
    }
    rough.insert(rough.end(), c2.begin(), c2.end());
  }

  auto accept = [&](const Cand& cand) -> bool {
    auto v = verify_plain(scans[cand.comp], cand, rho, opts.base.min_length);
    if (!v || !ratio_exceeds(v->report, c)) return false;
    if (opts.base.sign != 0 && v->report.sign != opts.base.sign) return false;
    RobustTranscript t = verify_shift_robust(S, rho, v->region, ell);
    if (!t.worst_ratio_exact || !(*t.worst_ratio_exact > c)) return false;
    out.find = make_find(std::move(*v));
    out.find->robust = std::move(t);
    return true;
  };

  // Returns of one patch: the shift profile is flat, so the first exact check decides.
  sort_by_policy(returns, scans, opts.base.selection);
  std::size_t tried = 0;
  for (const auto& cand : returns) {
    if (tried++ >= opts.base.exact_retries) break;
    if (accept(cand)) {
      out.find->robust->via_patch_return = true;
      return out;
    }
  }

  sort_by_policy(safe, scans, opts.base.selection);
  tried = 0;
  for (const auto& cand : safe) {
    if (cand.score <= T) {
      if (opts.base.selection == Selection::max_ratio) break;
      continue;
    }
    if (tried++ >= opts.base.exact_retries) break;
    if (accept(cand)) return out;
  }

  // Plain candidates ranked by their double-precision robust range.
  std::vector<Cand> scored;
  sort_by_policy(rough, scans, opts.base.selection);
  std::size_t evaluated = 0;
  for (const auto& cand : rough) {
    if (cand.score <= T) continue;
    if (evaluated++ >= opts.robust_evaluations) break;
    auto [mn, mx] = robust_count_range(scans[cand.comp], cand.a, cand.b, ld);
    const auto& s = scans[cand.comp];
    double expected = rd * (s.mid[cand.b] - s.mid[cand.a]);
    double robust = cand.sign > 0 ? static_cast<double>(mn) - expected : expected - static_cast<double>(mx);
    if (robust > T) {
      Cand r = cand;
      r.score = robust;
      scored.push_back(r);
      if (opts.base.selection == Selection::shortest && scored.size() >= opts.base.exact_retries) break;
    }
  }
  sort_by_policy(scored, scans, opts.base.selection);
  tried = 0;
  for (const auto& cand : scored) {
    if (tried++ >= opts.base.exact_retries) break;
    if (accept(cand)) return out;
  }
  return out;
}

}  // namespace aperiodica
