#include "aperiodica/discrepancy.hpp"

#include "aperiodica/error.hpp"

#include <algorithm>
#include <cmath>

namespace aperiodica {

DiscrepancyReport discrepancy_from_count(std::size_t count, const Scalar& rho, const Region& E) {
  require(!E.empty(), ErrorKind::invalid_parameter, "discrepancy of an empty region");
  DiscrepancyReport rep;
  rep.region = E;
  rep.count = count;
  rep.expected = rho * measure(E);
  rep.discrepancy = Scalar(static_cast<long long>(count)) - rep.expected;
  rep.sign = rep.discrepancy.sign();
  rep.tube1 = tube_measure(E, Scalar(1));
  if (rep.tube1.exact()) {
    rep.ratio_exact = abs(rep.discrepancy) / *rep.tube1.exact_value;
    rep.ratio = rep.ratio_exact->to_double();
  } else {
    rep.ratio = std::fabs(rep.discrepancy.to_double()) / rep.tube1.value;
  }
  return rep;
}

DiscrepancyReport discrepancy_report(const PointSource& S, const Scalar& rho, const Region& E) {
  require(E.dim() == S.dim(), ErrorKind::dimension_mismatch, "region and source dimensions differ");
  require(rho.sign() > 0, ErrorKind::invalid_parameter, "rho must be positive");
  return discrepancy_from_count(S.count_in(E), rho, E);
}

bool is_c_deviant(const DiscrepancyReport& report, const Scalar& c) {
  if (report.ratio_exact) return *report.ratio_exact > c;
  return report.ratio > c.to_double();
}

VanHoveDiagnostics van_hove_check(std::span<const Region> sequence, const std::vector<Scalar>& eps_list,
                                  double threshold) {
  require(!sequence.empty(), ErrorKind::invalid_parameter, "van Hove check needs a nonempty sequence");
  require(!eps_list.empty(), ErrorKind::invalid_parameter, "van Hove check needs at least one eps");
  VanHoveDiagnostics diag;
  diag.eps = eps_list;
  const std::size_t n = sequence.size();
  for (std::size_t e = 0; e < eps_list.size(); ++e) {
    std::vector<double> r;
    std::vector<std::optional<Scalar>> rx;
    for (const auto& A : sequence) {
      Scalar mu = measure(A);
      require(mu.sign() > 0, ErrorKind::invalid_parameter, "van Hove sequence has a null region");
      TubeMeasure t = tube_measure(A, eps_list[e]);
      if (t.exact()) {
        Scalar q = *t.exact_value / mu;
        r.push_back(q.to_double());
        rx.push_back(std::move(q));
      } else {
        r.push_back(t.value / mu.to_double());
        rx.push_back(std::nullopt);
      }
    }
    diag.ratios.push_back(std::move(r));
    diag.ratios_exact.push_back(std::move(rx));
  }

  diag.pass = true;
  const std::size_t start = n * 3 / 4;
  for (std::size_t e = 0; e < eps_list.size() && diag.pass; ++e) {
    const auto& r = diag.ratios[e];
    const auto& rx = diag.ratios_exact[e];
    for (std::size_t i = start + 1; i < n; ++i) {
      bool increased = rx[i] && rx[i - 1] ? *rx[i] > *rx[i - 1] : r[i] > r[i - 1] * (1 + 1e-12);
      if (increased) {
        diag.pass = false;
        diag.failing_eps = e;
        diag.failing_index = i;
        diag.reason = "tube ratio increases at index " + std::to_string(i) + " for eps=" + eps_list[e].str();
        break;
      }
    }
    if (diag.pass && !(r[n - 1] < threshold)) {
      diag.pass = false;
      diag.failing_eps = e;
      diag.failing_index = n - 1;
      diag.reason = "final tube ratio " + std::to_string(r[n - 1]) + " not below " + std::to_string(threshold) +
                    " for eps=" + eps_list[e].str();
    }
  }
  return diag;
}

VanHoveDiagnostics deviant_implies_van_hove(std::span<const DiscrepancyReport> reports,
                                            std::span<const Scalar> c_seq,
                                            const VanHoveFromDeviantOptions& opts) {
  require(!reports.empty(), ErrorKind::invalid_parameter, "empty deviant sequence");
  require(reports.size() == c_seq.size(), ErrorKind::invalid_parameter, "reports and c sequence differ in length");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    require(is_c_deviant(reports[i], c_seq[i]), ErrorKind::invalid_parameter,
            "region " + std::to_string(i) + " is not " + c_seq[i].str() + "-deviant");
    if (i > 0) {
      require(c_seq[i] > c_seq[i - 1], ErrorKind::invalid_parameter,
              "deviance levels must increase strictly; index " + std::to_string(i));
    }
  }
  std::vector<Region> regions;
  for (const auto& r : reports) regions.push_back(r.region);
  double threshold = opts.threshold;
  if (opts.relative) {
    auto first = van_hove_check(std::span<const Region>(regions.data(), 1), opts.eps_list, INFINITY);
    double lowest = INFINITY;
    for (const auto& r : first.ratios) lowest = std::min(lowest, r.front());
    threshold = opts.threshold * lowest;
  }
  return van_hove_check(regions, opts.eps_list, threshold);
}

Ball largest_inscribed_ball(const Region& E) {
  require(!E.empty(), ErrorKind::invalid_parameter, "empty region has no inscribed ball");
  std::optional<Ball> best;
  for (const auto& b : E.boxes()) {
    Scalar r = b.side(0);
    for (std::size_t k = 1; k < b.dim(); ++k)
      if (b.side(k) < r) r = b.side(k);
    Ball cand{b.center(), r / Scalar(2)};
    if (!best || cand.radius > best->radius ||
        (cand.radius == best->radius &&
         std::lexicographical_compare(cand.center.begin(), cand.center.end(), best->center.begin(), best->center.end()))) {
      best = std::move(cand);
    }
  }
  return *best;
}

std::vector<Region> region_family(std::string_view name, std::size_t max_i, std::size_t dim) {
  require(max_i >= 1, ErrorKind::invalid_parameter, "family needs max_i >= 1");
  require(dim >= 1, ErrorKind::invalid_parameter, "family dimension must be positive");
  std::vector<Region> out;
  if (name == "centered") {
    for (std::size_t i = 1; i <= max_i; ++i) {
      Scalar h(static_cast<long long>(i));
      out.push_back(Region::box(Point(dim, -h), Point(dim, h)));
    }
    return out;
  }
  require(dim == 1, ErrorKind::invalid_parameter, "family " + std::string(name) + " is 1D");
  if (name == "Qi") {
    require(max_i <= 62, ErrorKind::invalid_parameter, "Qi family supports i <= 62");
    for (std::size_t i = 1; i <= max_i; ++i)
      out.push_back(Region::interval(Scalar(0), Scalar((1LL << i) + 1)));
    return out;
  }
  if (name == "fibwin") {
    require(max_i <= 90, ErrorKind::invalid_parameter, "fibwin family supports i <= 90");
    long long a = 1, b = 1;
    for (std::size_t i = 1; i <= max_i; ++i) {
      out.push_back(Region::interval(Scalar(0), Scalar(b)));
      long long c = a + b;
      a = b;
      b = c;
    }
    return out;
  }
  fail(ErrorKind::invalid_parameter, "unknown family '" + std::string(name) + "' (centered, Qi, fibwin)");
}

}  // namespace aperiodica
