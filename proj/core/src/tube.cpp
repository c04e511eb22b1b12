#include "aperiodica/error.hpp"
#include "aperiodica/geometry.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <numbers>

namespace aperiodica {

namespace {

struct DBox {
  std::vector<double> lo, hi;
};

std::vector<DBox> to_dboxes(const Region& E) {
  std::vector<DBox> out;
  out.reserve(E.size());
  for (const auto& b : E.boxes()) {
    DBox d;
    for (std::size_t k = 0; k < b.dim(); ++k) {
      d.lo.push_back(b.lo()[k].to_double());
      d.hi.push_back(b.hi()[k].to_double());
    }
    out.push_back(std::move(d));
  }
  return out;
}

double signed_distance(const DBox& b, std::span<const double> x) {
  double out2 = 0.0, in = INFINITY;
  bool inside = true;
  for (std::size_t k = 0; k < b.lo.size(); ++k) {
    double below = b.lo[k] - x[k], above = x[k] - b.hi[k];
    double g = std::max(below, above);
    if (g > 0) {
      inside = false;
      out2 += g * g;
    } else {
      in = std::min(in, -g);
    }
  }
  return inside ? -in : std::sqrt(out2);
}

double boundary_distance(const std::vector<DBox>& boxes, std::span<const double> x) {
  double best = INFINITY;
  for (const auto& b : boxes) best = std::min(best, std::fabs(signed_distance(b, x)));
  return best;
}

// Volume of the unit ball in R^j.
double unit_ball_volume(unsigned j) {
  return std::pow(std::numbers::pi, j / 2.0) / std::tgamma(j / 2.0 + 1.0);
}

double steiner_tube(const Box& B, double eps) {
  double outer = box_dilation_volume(B, eps);
  double inner = 1.0;
  for (std::size_t k = 0; k < B.dim(); ++k) inner *= std::max(B.side(k).to_double() - 2 * eps, 0.0);
  return outer - inner;
}

TubeMeasure grid_tube(const Region& E, double eps, const TubeOptions& opts) {
  const std::size_t d = E.dim();
  auto boxes = to_dboxes(E);
  Box bb = E.bounding_box();
  std::vector<double> lo(d), ext(d);
  for (std::size_t k = 0; k < d; ++k) {
    lo[k] = bb.lo()[k].to_double() - eps;
    ext[k] = bb.hi()[k].to_double() + eps - lo[k];
  }
  const std::size_t n0 = 16;
  std::size_t per_cell = std::size_t{1} << d;

  std::vector<double> h(d);
  for (std::size_t k = 0; k < d; ++k) h[k] = ext[k] / n0;

  std::vector<double> centers;
  std::size_t total0 = 1;
  for (std::size_t k = 0; k < d; ++k) total0 *= n0;
  centers.reserve(total0 * d);
  for (std::size_t idx = 0; idx < total0; ++idx) {
    std::size_t rem = idx;
    for (std::size_t k = 0; k < d; ++k) {
      centers.push_back(lo[k] + (static_cast<double>(rem % n0) + 0.5) * h[k]);
      rem /= n0;
    }
  }

  double lower = 0.0, uncertain_volume = 0.0;
  std::size_t processed = 0;
  std::vector<double> pending;
  while (true) {
    double vol = 1.0, diag2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      vol *= h[k];
      diag2 += h[k] * h[k];
    }
    double half_diag = 0.5 * std::sqrt(diag2);
    pending.clear();
    std::size_t n = centers.size() / d;
    for (std::size_t i = 0; i < n; ++i) {
      std::span<const double> c(&centers[i * d], d);
      double dist = boundary_distance(boxes, c);
      if (dist + half_diag <= eps) lower += vol;
      else if (dist - half_diag <= eps) pending.insert(pending.end(), c.begin(), c.end());
    }
    processed += n;
    std::size_t m = pending.size() / d;
    uncertain_volume = static_cast<double>(m) * vol;
    bool converged = uncertain_volume <= opts.rel_tolerance * (lower + 0.5 * uncertain_volume);
    if (converged || m == 0 || processed + m * per_cell > opts.cell_budget) break;

    centers.clear();
    centers.reserve(m * per_cell * d);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t child = 0; child < per_cell; ++child) {
        for (std::size_t k = 0; k < d; ++k) {
          double off = ((child >> k) & 1u) ? 0.25 * h[k] : -0.25 * h[k];
          centers.push_back(pending[i * d + k] + off);
        }
      }
    }
    for (auto& hk : h) hk *= 0.5;
  }

  TubeMeasure t;
  t.method = TubeMethod::grid_estimate;
  t.value = lower + 0.5 * uncertain_volume;
  t.error_bound = 0.5 * uncertain_volume;
  t.cells = processed;
  return t;
}

}  // namespace

std::string_view to_string(TubeMethod m) {
  switch (m) {
    case TubeMethod::exact_1d: return "exact-1d";
    case TubeMethod::steiner_box: return "steiner-box";
    case TubeMethod::steiner_separated: return "steiner-separated";
    case TubeMethod::grid_estimate: return "grid-estimate";
  }
  return "unknown";
}

Region tube_region(const Region& E, const Scalar& eps) {
  require(E.dim() == 1, ErrorKind::dimension_mismatch, "tube_region is 1D only");
  require(eps.sign() > 0, ErrorKind::invalid_parameter, "eps must be positive");
  std::vector<Box> parts;
  for (const auto& b : E.boxes()) {
    parts.push_back(Box::interval(b.lo()[0] - eps, b.lo()[0] + eps));
    parts.push_back(Box::interval(b.hi()[0] - eps, b.hi()[0] + eps));
  }
  return Region(std::move(parts));
}

double box_dilation_volume(const Box& B, double eps) {
  const std::size_t d = B.dim();
  // e[k] = elementary symmetric polynomial of degree k in the side lengths.
  std::vector<double> e(d + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    double a = B.side(k).to_double();
    for (std::size_t j = k + 1; j > 0; --j) e[j] += a * e[j - 1];
  }
  double v = 0.0;
  for (std::size_t j = 0; j <= d; ++j) v += unit_ball_volume(static_cast<unsigned>(j)) * std::pow(eps, j) * e[d - j];
  return v;
}

TubeMeasure tube_measure(const Region& E, const Scalar& eps, const TubeOptions& opts) {
  require(eps.sign() > 0, ErrorKind::invalid_parameter, "eps must be positive");
  TubeMeasure t;
  if (E.empty()) {
    t.exact_value = Scalar(0);
    return t;
  }
  if (E.dim() == 1) {
    Scalar m = measure(tube_region(E, eps));
    t.value = m.to_double();
    t.exact_value = std::move(m);
    t.method = TubeMethod::exact_1d;
    return t;
  }
  const double e = eps.to_double();
  const double rounding = 16 * DBL_EPSILON * static_cast<double>(E.dim() + 1);
  Scalar two_eps_sq = Scalar(4) * eps * eps;
  bool separated = true;
  for (std::size_t i = 0; i < E.size() && separated; ++i) {
    for (std::size_t j = i + 1; j < E.size(); ++j) {
      if (E.boxes()[i].distance_sq(E.boxes()[j]) <= two_eps_sq) {
        separated = false;
        break;
      }
    }
  }
  if (separated) {
    for (const auto& b : E.boxes()) t.value += steiner_tube(b, e);
    t.error_bound = rounding * t.value;
    t.method = E.size() == 1 ? TubeMethod::steiner_box : TubeMethod::steiner_separated;
    return t;
  }
  return grid_tube(E, e, opts);
}

double signed_distance(const Box& B, std::span<const double> x) {
  DBox d;
  for (std::size_t k = 0; k < B.dim(); ++k) {
    d.lo.push_back(B.lo()[k].to_double());
    d.hi.push_back(B.hi()[k].to_double());
  }
  return signed_distance(d, x);
}

double distance_to_boundary(const Region& E, std::span<const double> x) {
  require(x.size() == E.dim(), ErrorKind::dimension_mismatch, "point/region dimension mismatch");
  return boundary_distance(to_dboxes(E), x);
}

InclusionCheck check_tube_inclusion(const Region& E, const Scalar& l, const Scalar& r,
                                    std::size_t n_samples) {
  require(l.sign() > 0 && r.sign() > 0, ErrorKind::invalid_parameter, "l and r must be positive");
  require(!E.empty(), ErrorKind::invalid_parameter, "empty region");
  const double ld = l.to_double(), rd = r.to_double();
  const std::size_t d = E.dim();
  auto boxes = to_dboxes(E);

  // Distance to the boundary of T = E^{+l}.
  std::function<double(std::span<const double>)> dist_T;
  std::vector<double> t_ends;
  std::vector<double> lo(d), hi(d);
  std::optional<DBox> inner;
  if (d == 1) {
    Region T = tube_region(E, l);
    for (const auto& b : T.boxes()) {
      t_ends.push_back(b.lo()[0].to_double());
      t_ends.push_back(b.hi()[0].to_double());
    }
    dist_T = [&t_ends](std::span<const double> x) {
      auto it = std::lower_bound(t_ends.begin(), t_ends.end(), x[0]);
      double best = INFINITY;
      if (it != t_ends.end()) best = *it - x[0];
      if (it != t_ends.begin()) best = std::min(best, x[0] - *std::prev(it));
      return best;
    };
    lo[0] = t_ends.front() - rd;
    hi[0] = t_ends.back() + rd;
  } else {
    require(E.size() == 1, ErrorKind::invalid_parameter,
            "tube inclusion sampling in d >= 2 supports a single box");
    const DBox& K = boxes.front();
    bool has_inner = true;
    DBox shrunk;
    for (std::size_t k = 0; k < d; ++k) {
      shrunk.lo.push_back(K.lo[k] + ld);
      shrunk.hi.push_back(K.hi[k] - ld);
      if (!(shrunk.lo[k] < shrunk.hi[k])) has_inner = false;
      lo[k] = K.lo[k] - ld - rd;
      hi[k] = K.hi[k] + ld + rd;
    }
    if (has_inner) inner = shrunk;
    dist_T = [&K, &inner, ld](std::span<const double> x) {
      double v = std::fabs(signed_distance(K, x) - ld);
      if (inner) v = std::min(v, std::fabs(signed_distance(*inner, x)));
      return v;
    };
  }
  for (std::size_t k = 0; k < d; ++k) {
    double pad = 1e-3 * (hi[k] - lo[k]);
    lo[k] -= pad;
    hi[k] += pad;
  }

  const double bound = ld + rd;
  double scale = 1.0;
  for (std::size_t k = 0; k < d; ++k) scale = std::max(scale, std::fabs(lo[k]) + std::fabs(hi[k]));
  const double tol = 1e-9 * scale;

  std::size_t per_axis = d == 1 ? std::max<std::size_t>(n_samples, 16)
                                : static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n_samples), 1.0 / d)));
  InclusionCheck out;
  for (int attempt = 0; attempt < 12; ++attempt) {
    out = InclusionCheck{};
    std::size_t total = 1;
    for (std::size_t k = 0; k < d; ++k) total *= per_axis;
    std::vector<double> x(d);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      for (std::size_t k = 0; k < d; ++k) {
        x[k] = lo[k] + (static_cast<double>(rem % per_axis) + 0.5) * (hi[k] - lo[k]) / per_axis;
        rem /= per_axis;
      }
      if (dist_T(x) > rd) continue;
      ++out.samples;
      double excess = boundary_distance(boxes, x) - bound;
      out.worst_excess = out.samples == 1 ? excess : std::max(out.worst_excess, excess);
      if (excess > tol) ++out.counterexamples;
    }
    if (out.samples >= n_samples) break;
    per_axis *= 2;
  }
  out.holds = out.counterexamples == 0;
  return out;
}

bool check_tube_scaling(const Region& E, const Scalar& l, double rel_tol) {
  require(l >= Scalar(1), ErrorKind::invalid_parameter, "tube scaling needs l >= 1");
  TubeMeasure big = tube_measure(E, l);
  TubeMeasure unit = tube_measure(E, Scalar(1));
  Scalar factor = pow(l, static_cast<unsigned>(E.dim()));
  if (big.exact() && unit.exact()) return *big.exact_value <= factor * *unit.exact_value;
  double f = factor.to_double();
  return big.value - big.error_bound <= f * (unit.value + unit.error_bound) + rel_tol * f * unit.value;
}

}  // namespace aperiodica
