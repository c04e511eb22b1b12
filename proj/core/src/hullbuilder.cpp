#include "aperiodica/hullbuilder.hpp"

#include "aperiodica/error.hpp"

#include <algorithm>

namespace aperiodica {

namespace {

const Region& window_for(const TowerConfig& cfg, std::size_t level) {
  require(!cfg.windows.empty(), ErrorKind::invalid_parameter, "tower config needs at least one search window");
  return cfg.windows[std::min(level - 1, cfg.windows.size() - 1)];
}

Scalar center_of(const Region& R) { return largest_inscribed_ball(R).center[0]; }

std::vector<Scalar> shifted(std::vector<Scalar> pts, const Scalar& by) {
  for (auto& p : pts) p -= by;
  return pts;
}

std::vector<Scalar> points_of(const PointSource& S, const Region& R) {
  std::vector<Scalar> out;
  for (const auto& b : R.boxes()) {
    auto part = S.points_in(b.lo()[0], b.hi()[0]);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

bool inside(const Region& inner, const Region& outer) {
  return std::all_of(inner.boxes().begin(), inner.boxes().end(), [&](const Box& b) {
    return std::any_of(outer.boxes().begin(), outer.boxes().end(), [&](const Box& o) {
      return o.lo()[0] <= b.lo()[0] && b.hi()[0] <= o.hi()[0];
    });
  });
}

std::optional<RepetitivityResult> rep_of(const PointSource& S, const Region& R, const Scalar& factor) {
  Scalar t = center_of(R);
  Scalar half = factor * measure(R);
  return repetitivity_radius(S, R, Region::interval(t - half, t + half));
}

}  // namespace

std::string_view to_string(Letter l) { return l == Letter::D ? "D" : "N"; }

TowerSkeleton build_skeleton(const SourcePtr& S, std::size_t depth, const TowerConfig& config) {
  require(S != nullptr && S->dim() == 1, ErrorKind::invalid_parameter, "towers are built on 1D sources");
  require(depth >= 1, ErrorKind::invalid_parameter, "tower depth must be at least 1");
  require(config.c.size() >= depth, ErrorKind::invalid_parameter, "need one deviance level per tower level");
  require(config.rho.sign() > 0, ErrorKind::invalid_parameter, "rho must be positive");
  TowerSkeleton sk;
  sk.source = S;
  sk.config = config;
  const Scalar R = S->delone().R_exact ? *S->delone().R_exact : Scalar(rational_from_double(S->delone().R));

  for (std::size_t i = 1; i <= depth; ++i) {
    SkeletonLevel lv;
    lv.c = config.c[i - 1];
    if (i == 1) {
      lv.ell = config.ell1;
      lv.min_length = config.base_min_length;
    } else {
      const auto& prev = sk.levels.back();
      Scalar rmax = prev.rep_d->radius > prev.rep_n->radius ? prev.rep_d->radius : prev.rep_n->radius;
      lv.ell = Scalar(2) * rmax + config.margin;
      // room for a copy of the previous support anywhere within ell/2 of the center
      Scalar need = lv.ell + measure(prev.d_region) + prev.ell + Scalar(2) * R + Scalar(2);
      lv.min_length = need > config.base_min_length ? need : config.base_min_length;
    }
    const Region& W = window_for(config, i);
    RobustSearchOptions ro;
    ro.base.selection = Selection::shortest;
    ro.base.min_length = lv.min_length;
    ro.robust_evaluations = config.robust_evaluations;
    ro.workers = config.workers;
    DeviantSearch found = find_shift_robust_deviant(*S, config.rho, lv.c, lv.ell, W, config.budget, ro);
    if (!found.find) {
      sk.failure_level = i;
      sk.failure_reason = "no " + lv.c.str() + "-deviant region robust to shifts of " + lv.ell.str() + " with length >= " +
                          lv.min_length.str() + " in " + W.str() + " (best plain ratio " +
                          std::to_string(found.sup_ratio) + ")";
      return sk;
    }
    lv.d_find = std::move(*found.find);
    lv.d_region = lv.d_find.region;
    try {
      OppositeTranslate opp = find_opposite_translate(*S, config.rho, lv.d_region, W);
      lv.y = opp.x;
      lv.n_region = translate(lv.d_region, -opp.x);
      lv.n_report = opp.report;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_found) throw;
      sk.failure_level = i;
      sk.failure_reason = e.what();
      return sk;
    }
    if (i == 1) {
      Scalar t = center_of(lv.d_region);
      auto pts = points_of(*S, lv.d_region);
      require(!pts.empty(), ErrorKind::internal, "deviant region without points");
      const Scalar* best = &pts.front();
      for (const auto& p : pts)
        if (abs(p - t) < abs(*best - t)) best = &p;
      sk.anchor = *best;
    }
    if (i < depth) {
      lv.rep_d = rep_of(*S, lv.d_region, config.rep_scan_factor);
      lv.rep_n = rep_of(*S, lv.n_region, config.rep_scan_factor);
      if (!lv.rep_d->repetitive || !lv.rep_n->repetitive) {
        sk.levels.push_back(std::move(lv));
        sk.failure_level = i + 1;
        const Region& bad = !lv.rep_d->repetitive ? lv.d_region : lv.n_region;
        sk.failure_reason = std::string(to_string(ErrorKind::not_repetitive)) + ": patch of " + bad.str() +
                            " occurs fewer than twice within " + config.rep_scan_factor.str() +
                            " patch lengths of its center";
        return sk;
      }
    }
    sk.levels.push_back(std::move(lv));
  }
  sk.complete = true;
  return sk;
}

PatchTower instantiate(const TowerSkeleton& sk, std::string_view word) {
  require(!word.empty(), ErrorKind::invalid_parameter, "tower word must be nonempty");
  for (char ch : word) require(ch == 'D' || ch == 'N', ErrorKind::invalid_parameter, "tower words use letters D and N");
  require(word.size() <= sk.config.c.size(), ErrorKind::invalid_parameter,
          "word of length " + std::to_string(word.size()) + " is longer than the " +
              std::to_string(sk.config.c.size()) + " configured levels");
  const PointSource& S = *sk.source;
  PatchTower t;
  t.word = std::string(word);
  t.source = sk.source;
  t.rho = sk.config.rho;
  t.c.assign(sk.config.c.begin(), sk.config.c.begin() + static_cast<std::ptrdiff_t>(word.size()));

  const std::size_t usable = std::min(word.size(), sk.levels.size());
  for (std::size_t i = 1; i <= usable; ++i) {
    const SkeletonLevel& lv = sk.levels[i - 1];
    if (i > 1 && !lv.d_find.robust) break;
    Letter letter = word[i - 1] == 'D' ? Letter::D : Letter::N;
    const Region& target = letter == Letter::D ? lv.d_region : lv.n_region;
    TowerLevel out;
    out.index = i;
    out.letter = letter;
    out.c = lv.c;
    out.ell = lv.ell;
    out.d_sign = lv.d_find.sign;
    if (i == 1) {
      out.support = translate(lv.d_region, -sk.anchor);
      out.offset = letter == Letter::D ? sk.anchor : sk.anchor - lv.y;
    } else {
      const TowerLevel& prev = t.levels.back();
      Scalar center = center_of(target);
      Scalar half = lv.ell / Scalar(2);
      auto occ = find_occurrences(S, prev.points, prev.support, center - half, center + half);
      std::optional<Scalar> best;
      for (const auto& z : occ) {
        if (!inside(translate(prev.support, z), target)) continue;
        if (!best || abs(z - center) < abs(*best - center)) best = z;
      }
      if (!best) {
        t.failure_level = i;
        t.failure_reason = "no copy of the level " + std::to_string(i - 1) + " patch within " + half.str() +
                           " of the center of " + target.str();
        break;
      }
      out.offset = *best;
      out.support = translate(target, -*best);
    }
    out.points = shifted(points_of(S, translate(out.support, out.offset)), out.offset);
    out.report = discrepancy_from_count(out.points.size(), t.rho, out.support);
    t.ell.push_back(lv.ell);
    t.levels.push_back(std::move(out));
  }
  if (!t.failure_level) {
    if (t.levels.size() == word.size()) {
      t.complete = true;
    } else {
      t.failure_level = sk.failure_level ? sk.failure_level : std::optional<std::size_t>(t.levels.size() + 1);
      t.failure_reason = sk.failure_reason;
    }
  }
  verify_tower(t);
  return t;
}

PatchTower build_tower(const SourcePtr& S, std::string_view word, const TowerConfig& config) {
  return instantiate(build_skeleton(S, word.size(), config), word);
}

void verify_tower(PatchTower& t) {
  t.nested = true;
  for (std::size_t i = 1; i < t.levels.size(); ++i) {
    const auto& a = t.levels[i - 1].points;
    const auto& b = t.levels[i].points;
    if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) t.nested = false;
    if (!inside(t.levels[i - 1].support, t.levels[i].support)) t.nested = false;
  }
  t.deviance_persists = true;
  // stored points and reports must be what the source gives
  for (const auto& lv : t.levels) {
    bool ok = lv.report.count == lv.points.size() && lv.report.region == lv.support;
    if (ok && t.source) ok = shifted(points_of(*t.source, translate(lv.support, lv.offset)), lv.offset) == lv.points;
    if (!ok) t.nested = t.deviance_persists = false;
  }
  // D levels stay c_i-deviant under every shift up to ell_i; N levels have the
  // opposite sign or zero.
  for (const auto& lv : t.levels) {
    if (lv.letter != Letter::D) continue;
    if (!is_c_deviant(lv.report, lv.c)) t.deviance_persists = false;
    if (t.source) {
      RobustTranscript r = verify_shift_robust(*t.source, t.rho, translate(lv.support, lv.offset), lv.ell);
      if (!r.worst_ratio_exact || !(*r.worst_ratio_exact > lv.c)) t.deviance_persists = false;
    }
  }
  for (const auto& lv : t.levels)
    if (lv.letter == Letter::N && lv.d_sign != 0 && lv.report.sign == lv.d_sign) t.deviance_persists = false;
}

HullElementWindow emit_hull_element(const PatchTower& t) {
  require(t.complete && !t.levels.empty(), ErrorKind::invalid_parameter, "hull element needs a complete tower");
  const TowerLevel& top = t.levels.back();
  Scalar c = center_of(top.support);
  HullElementWindow w;
  w.word = t.word;
  w.support = translate(top.support, -c);
  w.points = shifted(top.points, c);
  w.recenter_shift = c;
  return w;
}

DistinguishEvidence distinguish(const PatchTower& u, const PatchTower& v, std::size_t level) {
  require(u.source && v.source && u.source->spec() == v.source->spec(), ErrorKind::invalid_parameter,
          "towers are built on different sources");
  require(u.rho == v.rho, ErrorKind::invalid_parameter, "towers use different densities");
  require(level >= 1 && level <= u.levels.size() && level <= v.levels.size(), ErrorKind::invalid_parameter,
          "level " + std::to_string(level) + " missing from a tower");
  require(u.c.size() >= level && v.c.size() >= level && u.c[level - 1] == v.c[level - 1],
          ErrorKind::invalid_parameter, "towers use different deviance levels");
  const TowerLevel& lu = u.levels[level - 1];
  const TowerLevel& lv = v.levels[level - 1];
  require(lu.letter != lv.letter, ErrorKind::invalid_parameter,
          "words agree at letter " + std::to_string(level));
  const TowerLevel& d = lu.letter == Letter::D ? lu : lv;
  const TowerLevel& n = lu.letter == Letter::D ? lv : lu;
  const PointSource& S = *u.source;

  DistinguishEvidence ev;
  ev.level = level;
  ev.first_is_d = lu.letter == Letter::D;
  ev.c = d.c;
  ev.ell = d.ell;
  ev.delta = center_of(n.support) - center_of(d.support);
  ev.region = translate(d.support, ev.delta);
  require(measure(ev.region) == measure(n.support), ErrorKind::internal, "D and N supports differ in size");
  ev.count_d = S.count_in(translate(ev.region, d.offset));
  ev.count_n = S.count_in(translate(ev.region, n.offset));
  ev.expected = u.rho * measure(ev.region);
  ev.disc_d = Scalar(static_cast<long long>(ev.count_d)) - ev.expected;
  ev.disc_n = Scalar(static_cast<long long>(ev.count_n)) - ev.expected;
  Scalar diff = abs(ev.disc_d - ev.disc_n);
  TubeMeasure tube = tube_measure(ev.region, Scalar(1));
  ev.ratio_exact = diff / *tube.exact_value;
  ev.ratio = ev.ratio_exact->to_double();
  ev.pass = *ev.ratio_exact > Scalar::fraction(9, 10) * ev.c;
  return ev;
}

}  // namespace aperiodica
