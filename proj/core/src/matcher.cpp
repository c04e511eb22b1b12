#include "aperiodica/matcher.hpp"

#include "aperiodica/error.hpp"
#include "aperiodica/search.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace aperiodica {

std::vector<std::size_t> hopcroft_karp(const BipartiteGraph& g) {
  const std::size_t nl = g.left_size(), nr = g.right_size();
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> match_l(nl, kUnmatched), match_r(nr, kUnmatched), dist(nl);
  std::vector<std::size_t> queue;
  queue.reserve(nl);

  auto bfs = [&]() {
    queue.clear();
    bool found = false;
    for (std::size_t u = 0; u < nl; ++u) {
      if (match_l[u] == kUnmatched) {
        dist[u] = 0;
        queue.push_back(u);
      } else {
        dist[u] = inf;
      }
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      std::size_t u = queue[h];
      for (auto v : g.neighbors(u)) {
        std::size_t w = match_r[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist[w] == inf) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  };

  // Iterative DFS along layered edges.
  std::vector<std::size_t> it(nl);
  std::vector<std::size_t> stack;
  auto dfs = [&](std::size_t root) {
    stack.clear();
    stack.push_back(root);
    while (!stack.empty()) {
      std::size_t u = stack.back();
      const auto& nb = g.neighbors(u);
      if (it[u] == nb.size()) {
        dist[u] = inf;
        stack.pop_back();
        continue;
      }
      std::size_t v = nb[it[u]];
      std::size_t w = match_r[v];
      if (w == kUnmatched) {
        // augment along the stack
        for (std::size_t k = stack.size(); k-- > 0;) {
          std::size_t x = stack[k];
          std::size_t y = g.neighbors(x)[it[x]];
          match_r[y] = x;
          match_l[x] = y;
        }
        return true;
      }
      if (dist[w] == dist[u] + 1) {
        stack.push_back(w);
      } else {
        ++it[u];
      }
      // When a child is exhausted it is popped with dist = inf, and the parent
      // re-examines the same edge, which now fails the layer test.
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t u = 0; u < nl; ++u)
      if (match_l[u] == kUnmatched) dfs(u);
  }
  return match_l;
}

std::string_view to_string(MatchStatus s) {
  switch (s) {
    case MatchStatus::perfect: return "perfect";
    case MatchStatus::defect: return "defect";
    case MatchStatus::witness: return "witness";
  }
  return "unknown";
}

std::string_view to_string(GrowthVerdict v) { return v == GrowthVerdict::grows ? "grows" : "bounded"; }

namespace {

Scalar dist_sq(const Point& a, const Point& b) {
  Scalar s(0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    Scalar d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

void validate(const MatchInstance& inst) {
  require(!inst.left.empty() && !inst.right.empty(), ErrorKind::invalid_parameter,
          "both sides of a matching instance must be nonempty");
  std::size_t d = inst.left.front().size();
  require(d >= 1, ErrorKind::invalid_parameter, "points of dimension 0");
  for (const auto& p : inst.left) require(p.size() == d, ErrorKind::dimension_mismatch, "left points differ in dimension");
  for (const auto& p : inst.right) require(p.size() == d, ErrorKind::dimension_mismatch, "right points differ in dimension");
}

std::optional<HallWitness> witness_from_matching(const BipartiteGraph& g, const std::vector<std::size_t>& match_l) {
  const std::size_t nl = g.left_size(), nr = g.right_size();
  std::vector<std::size_t> match_r(nr, kUnmatched);
  for (std::size_t u = 0; u < nl; ++u)
    if (match_l[u] != kUnmatched) match_r[match_l[u]] = u;

  auto start = std::find(match_l.begin(), match_l.end(), kUnmatched);
  if (start != match_l.end()) {
    std::vector<char> seen_l(nl, 0), seen_r(nr, 0);
    std::deque<std::size_t> q{static_cast<std::size_t>(start - match_l.begin())};
    seen_l[q.front()] = 1;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop_front();
      for (auto v : g.neighbors(u)) {
        if (seen_r[v]) continue;
        seen_r[v] = 1;
        std::size_t w = match_r[v];
        if (w != kUnmatched && !seen_l[w]) {
          seen_l[w] = 1;
          q.push_back(w);
        }
      }
    }
    HallWitness hw;
    hw.side = HallWitness::Side::left;
    for (std::size_t u = 0; u < nl; ++u)
      if (seen_l[u]) hw.members.push_back(u);
    for (std::size_t v = 0; v < nr; ++v)
      if (seen_r[v]) hw.neighbors.push_back(v);
    return hw;
  }
  auto rstart = std::find(match_r.begin(), match_r.end(), kUnmatched);
  if (rstart == match_r.end()) return std::nullopt;
  // Deficient right side: alternate from an unmatched right vertex.
  std::vector<std::vector<std::size_t>> radj(nr);
  for (std::size_t u = 0; u < nl; ++u)
    for (auto v : g.neighbors(u)) radj[v].push_back(u);
  std::vector<char> seen_l(nl, 0), seen_r(nr, 0);
  std::deque<std::size_t> q{static_cast<std::size_t>(rstart - match_r.begin())};
  seen_r[q.front()] = 1;
  while (!q.empty()) {
    std::size_t v = q.front();
    q.pop_front();
    for (auto u : radj[v]) {
      if (seen_l[u]) continue;
      seen_l[u] = 1;
      std::size_t w = match_l[u];
      if (w != kUnmatched && !seen_r[w]) {
        seen_r[w] = 1;
        q.push_back(w);
      }
    }
  }
  HallWitness hw;
  hw.side = HallWitness::Side::right;
  for (std::size_t v = 0; v < nr; ++v)
    if (seen_r[v]) hw.members.push_back(v);
  for (std::size_t u = 0; u < nl; ++u)
    if (seen_l[u]) hw.neighbors.push_back(u);
  return hw;
}

BipartiteGraph threshold_graph(const MatchInstance& inst, const Scalar& t_sq) {
  BipartiteGraph g(inst.left.size(), inst.right.size());
  const bool one_d = inst.left.front().size() == 1;
  if (one_d) {
    // sorted right side, then a window per left point
    std::vector<std::size_t> order(inst.right.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return inst.right[a][0] < inst.right[b][0]; });
    std::vector<double> rv(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) rv[k] = inst.right[order[k]][0].to_double();
    double t = std::sqrt(t_sq.to_double());
    for (std::size_t u = 0; u < inst.left.size(); ++u) {
      double x = inst.left[u][0].to_double();
      double slack = 1e-9 * std::max({1.0, std::fabs(x), t});
      auto lo = std::lower_bound(rv.begin(), rv.end(), x - t - slack);
      auto hi = std::upper_bound(rv.begin(), rv.end(), x + t + slack);
      for (auto k = lo; k != hi; ++k) {
        std::size_t v = order[static_cast<std::size_t>(k - rv.begin())];
        if (dist_sq(inst.left[u], inst.right[v]) <= t_sq) g.add_edge(u, v);
      }
    }
    return g;
  }
  for (std::size_t u = 0; u < inst.left.size(); ++u)
    for (std::size_t v = 0; v < inst.right.size(); ++v)
      if (dist_sq(inst.left[u], inst.right[v]) <= t_sq) g.add_edge(u, v);
  return g;
}

std::optional<HallWitness> witness_at(const MatchInstance& inst, const Scalar& t_sq) {
  BipartiteGraph g = threshold_graph(inst, t_sq);
  auto m = hopcroft_karp(g);
  auto hw = witness_from_matching(g, m);
  if (hw) hw->threshold_sq = t_sq;
  return hw;
}

// Largest pairwise distance strictly below t in 1D, squared.
std::optional<Scalar> next_lower_1d(const std::vector<Scalar>& a, const std::vector<Scalar>& b_sorted, const Scalar& t) {
  std::optional<Scalar> best;
  if (t.sign() <= 0) return best;
  for (const auto& x : a) {
    auto lo = std::upper_bound(b_sorted.begin(), b_sorted.end(), x - t);
    auto hi = std::lower_bound(b_sorted.begin(), b_sorted.end(), x + t);
    if (lo >= hi) continue;
    Scalar d1 = abs(x - *lo), d2 = abs(*std::prev(hi) - x);
    Scalar d = d1 > d2 ? d1 : d2;
    if (!best || d > *best) best = d;
  }
  if (!best) return std::nullopt;
  return *best * *best;
}

MatchOutcome general_match(const MatchInstance& inst, const MatchOptions& opts) {
  const std::size_t nl = inst.left.size(), nr = inst.right.size();
  require(nl * nr <= 16'000'000, ErrorKind::invalid_parameter, "instance too large for the general matcher");
  const std::size_t target = std::min(nl, nr);
  MatchOutcome out;
  out.defect_count = nl > nr ? nl - nr : nr - nl;

  if (opts.max_threshold) {
    Scalar t_sq = *opts.max_threshold * *opts.max_threshold;
    BipartiteGraph g = threshold_graph(inst, t_sq);
    auto m = hopcroft_karp(g);
    std::size_t size = static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [](std::size_t v) { return v != kUnmatched; }));
    if (size < target || nl != nr) {
      out.status = MatchStatus::witness;
      out.witness = witness_from_matching(g, m);
      if (out.witness) out.witness->threshold_sq = t_sq;
      out.matching = std::move(m);
      return out;
    }
  }

  struct Pair {
    double key;
    std::uint32_t u, v;
  };
  std::vector<Scalar> d(nl * nr);
  std::vector<Pair> pairs;
  pairs.reserve(nl * nr);
  for (std::size_t u = 0; u < nl; ++u)
    for (std::size_t v = 0; v < nr; ++v) {
      d[u * nr + v] = dist_sq(inst.left[u], inst.right[v]);
      pairs.push_back({d[u * nr + v].to_double(), static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)});
    }
  std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
    double tol = 1e-9 * std::max(1.0, std::max(a.key, b.key));
    if (a.key < b.key - tol) return true;
    if (b.key < a.key - tol) return false;
    return d[a.u * nr + a.v] < d[b.u * nr + b.v];
  });
  // rank of every pair among the distinct squared distances
  std::vector<std::uint32_t> rank(nl * nr);
  std::vector<std::size_t> first_of_rank;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& p = pairs[k];
    if (k == 0 || !(d[p.u * nr + p.v] == d[pairs[k - 1].u * nr + pairs[k - 1].v])) first_of_rank.push_back(k);
    rank[p.u * nr + p.v] = static_cast<std::uint32_t>(first_of_rank.size() - 1);
  }

  auto graph_at = [&](std::size_t r) {
    BipartiteGraph g(nl, nr);
    for (std::size_t u = 0; u < nl; ++u)
      for (std::size_t v = 0; v < nr; ++v)
        if (rank[u * nr + v] <= r) g.add_edge(u, v);
    return g;
  };
  auto matched = [&](const std::vector<std::size_t>& m) {
    return static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [](std::size_t v) { return v != kUnmatched; }));
  };

  std::size_t lo = 0, hi = first_of_rank.size() - 1;
  std::vector<std::size_t> best;
  {
    auto g = graph_at(hi);
    best = hopcroft_karp(g);
  }
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    auto g = graph_at(mid);
    auto m = hopcroft_karp(g);
    if (matched(m) == target) {
      hi = mid;
      best = std::move(m);
    } else {
      lo = mid + 1;
    }
  }
  const auto& p = pairs[first_of_rank[lo]];
  out.bottleneck_sq = d[p.u * nr + p.v];
  out.matching = std::move(best);
  out.status = nl == nr ? MatchStatus::perfect : MatchStatus::defect;
  if (opts.certify && lo > 0) {
    auto g = graph_at(lo - 1);
    auto m = hopcroft_karp(g);
    out.certificate = witness_from_matching(g, m);
    const auto& q = pairs[first_of_rank[lo - 1]];
    if (out.certificate) out.certificate->threshold_sq = d[q.u * nr + q.v];
  } else if (opts.certify && out.bottleneck_sq.sign() > 0) {
    // no smaller distance at all: the empty graph
    out.certificate = witness_at(inst, Scalar(0));
  }
  return out;
}

void finish(MatchOutcome& out, const MatchInstance& inst) {
  if (inst.left.front().size() == 1 && out.status != MatchStatus::witness) {
    // exact square root exists: it is a difference of coordinates
    Scalar best(0);
    for (std::size_t u = 0; u < out.matching.size(); ++u) {
      if (out.matching[u] == kUnmatched) continue;
      Scalar dd = abs(inst.left[u][0] - inst.right[out.matching[u]][0]);
      if (dd > best) best = dd;
    }
    out.bottleneck = best;
  }
  out.bottleneck_value = out.bottleneck ? out.bottleneck->to_double() : std::sqrt(out.bottleneck_sq.to_double());
}

}  // namespace

std::optional<HallWitness> hall_witness(const MatchInstance& inst, const Scalar& t) {
  validate(inst);
  require(t.sign() >= 0, ErrorKind::invalid_parameter, "threshold must be nonnegative");
  return witness_at(inst, t * t);
}

MatchOutcome bottleneck_match(const MatchInstance& inst, const MatchOptions& opts) {
  validate(inst);
  const std::size_t n = inst.left.size();
  const bool fast = inst.left.front().size() == 1 && n == inst.right.size() && !opts.force_general &&
                    !opts.max_threshold;
  if (!fast) {
    MatchOutcome out = general_match(inst, opts);
    finish(out, inst);
    return out;
  }

  auto sorted_order = [](const std::vector<Point>& pts) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> key(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) key[i] = pts[i][0].to_double();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      double tol = 1e-9 * std::max({1.0, std::fabs(key[a]), std::fabs(key[b])});
      if (key[a] < key[b] - tol) return true;
      if (key[b] < key[a] - tol) return false;
      return pts[a][0] < pts[b][0];
    });
    return order;
  };
  auto lo = sorted_order(inst.left), ro = sorted_order(inst.right);
  MatchOutcome out;
  out.fast_path = true;
  out.status = MatchStatus::perfect;
  out.matching.assign(n, kUnmatched);
  Scalar best(0);
  for (std::size_t k = 0; k < n; ++k) {
    out.matching[lo[k]] = ro[k];
    Scalar dd = abs(inst.left[lo[k]][0] - inst.right[ro[k]][0]);
    if (dd > best) best = dd;
  }
  out.bottleneck = best;
  out.bottleneck_sq = best * best;
  out.bottleneck_value = best.to_double();

  if (opts.certify && n <= 20000) {
    std::vector<Scalar> a, b;
    for (const auto& p : inst.left) a.push_back(p[0]);
    for (auto k : ro) b.push_back(inst.right[k][0]);
    if (auto t2 = next_lower_1d(a, b, best)) out.certificate = witness_at(inst, *t2);
    else if (best.sign() > 0) out.certificate = witness_at(inst, Scalar(0));
  }
  if (opts.verify_fast_path) {
    MatchOptions g = opts;
    g.force_general = true;
    g.certify = false;
    g.verify_fast_path = false;
    MatchOutcome ref = general_match(inst, g);
    require(ref.bottleneck_sq == out.bottleneck_sq, ErrorKind::internal,
            "sorted-order matching disagrees with the general search: " + out.bottleneck_sq.str() + " vs " +
                ref.bottleneck_sq.str());
  }
  return out;
}

NonBdResult non_bd_ratio(const PointSource& S1, const PointSource& S2, std::span<const Region> sequence,
                         double van_hove_threshold) {
  require(S1.dim() == S2.dim(), ErrorKind::dimension_mismatch, "sources differ in dimension");
  NonBdResult res;
  res.van_hove = van_hove_check(sequence, {Scalar(1)}, van_hove_threshold);
  require(res.van_hove.pass, ErrorKind::invalid_parameter, "sequence is not van Hove: " + res.van_hove.reason);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    NonBdEntry e;
    e.index = i;
    e.count1 = S1.count_in(sequence[i]);
    e.count2 = S2.count_in(sequence[i]);
    e.difference = abs(Scalar(static_cast<long long>(e.count1)) - Scalar(static_cast<long long>(e.count2)));
    e.tube1 = tube_measure(sequence[i], Scalar(1));
    if (e.tube1.exact()) {
      e.ratio_exact = e.difference / *e.tube1.exact_value;
      e.ratio = e.ratio_exact->to_double();
    } else {
      e.ratio = e.difference.to_double() / e.tube1.value;
    }
    res.entries.push_back(std::move(e));
  }
  auto gt = [](const NonBdEntry& a, const NonBdEntry& b) {
    if (a.ratio_exact && b.ratio_exact) return *a.ratio_exact > *b.ratio_exact;
    return a.ratio > b.ratio;
  };
  const NonBdEntry* first_nonzero = nullptr;
  for (const auto& e : res.entries)
    if (e.ratio > 0 || (e.ratio_exact && !e.ratio_exact->is_zero())) {
      first_nonzero = &e;
      break;
    }
  std::size_t rises = 0;
  const NonBdEntry* running = &res.entries.front();
  for (std::size_t i = 1; i < res.entries.size(); ++i) {
    if (gt(res.entries[i], *running)) {
      ++rises;
      running = &res.entries[i];
    }
  }
  bool grows = false;
  if (first_nonzero) {
    const auto& last = res.entries.back();
    if (last.ratio_exact && first_nonzero->ratio_exact) grows = *last.ratio_exact > Scalar(4) * *first_nonzero->ratio_exact;
    else grows = last.ratio > 4 * first_nonzero->ratio;
  }
  res.verdict = grows && rises >= 3 ? GrowthVerdict::grows : GrowthVerdict::bounded;
  return res;
}

LatticeScanVerdict lattice_bd_scan(const PointSource& S, const Scalar& rho, const Scalar& c,
                                   std::span<const Region> windows, std::size_t budget) {
  require(S.dim() == 1, ErrorKind::invalid_parameter, "lattice_bd_scan searches 1D sources");
  LatticeScanVerdict v;
  for (const auto& w : windows) {
    DeviantSearch s = find_deviant(S, rho, c, w, budget);
    ++v.windows_scanned;
    if (s.sup_region && (!v.sup_region || s.sup_ratio > v.sup_ratio)) {
      v.sup_ratio = s.sup_ratio;
      v.sup_region = s.sup_region;
    }
    if (s.find) {
      v.violated = true;
      v.witness = s.find->report;
      break;
    }
  }
  return v;
}

}  // namespace aperiodica
