#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracle {

namespace {

Scalar dist_sq(const Point& a, const Point& b) {
  Scalar s(0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    Scalar d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

}  // namespace

Scalar bottleneck_sq_bruteforce(const std::vector<Point>& left, const std::vector<Point>& right) {
  const std::size_t n = left.size();
  if (n == 0) return Scalar(0);
  // exact squared distances, replaced by their rank among the distinct values
  std::vector<Scalar> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = dist_sq(left[i], right[j]);
  std::vector<Scalar> values = d;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::size_t> rank(n * n);
  for (std::size_t k = 0; k < d.size(); ++k)
    rank[k] = static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), d[k]) - values.begin());

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = values.size();
  do {
    std::size_t worst = 0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, rank[i * n + perm[i]]);
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return values[best];
}

std::vector<Scalar> cut_project_bruteforce(const Scalar& lo, const Scalar& hi, const Scalar& a, const Scalar& b) {
  const Scalar phi = Scalar::phi(), phis = Scalar::phi_conjugate();
  // x - x* = n sqrt5
  const double s5 = std::sqrt(5.0);
  const long long n0 = static_cast<long long>(std::floor((a - hi).to_double() / s5)) - 2;
  const long long n1 = static_cast<long long>(std::ceil((b - lo).to_double() / s5)) + 2;
  std::vector<Scalar> out;
  for (long long n = n0; n <= n1; ++n) {
    const Scalar np = Scalar(n) * phi;
    const long long m0 = static_cast<long long>(std::floor((a - np).to_double())) - 2;
    const long long m1 = static_cast<long long>(std::ceil((b - np).to_double())) + 2;
    for (long long m = m0; m <= m1; ++m) {
      Scalar x = Scalar(m) + np;
      Scalar y = Scalar(m) + Scalar(n) * phis;
      if (a <= x && x <= b && lo <= y && y < hi) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Scalar tube_1d_cells(const Region& E, const Scalar& eps) {
  std::vector<Scalar> bd;
  for (const auto& b : E.boxes()) {
    bd.push_back(b.lo()[0]);
    bd.push_back(b.hi()[0]);
  }
  std::sort(bd.begin(), bd.end());
  Scalar total(0);
  for (std::size_t i = 0; i < bd.size(); ++i) {
    Scalar left = eps, right = eps;
    if (i > 0) {
      Scalar h = (bd[i] - bd[i - 1]) / Scalar(2);
      if (h < left) left = h;
    }
    if (i + 1 < bd.size()) {
      Scalar h = (bd[i + 1] - bd[i]) / Scalar(2);
      if (h < right) right = h;
    }
    total += left + right;
  }
  return total;
}

double max_ratio_scan(const std::vector<Scalar>& pts, double rho, double min_len) {
  std::vector<double> x;
  for (const auto& p : pts) x.push_back(p.to_double());
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    double a = 0.5 * (x[i] + x[i + 1]);
    for (std::size_t j = i + 1; j + 1 < x.size(); ++j) {
      double b = 0.5 * (x[j] + x[j + 1]);
      if (b - a < min_len) continue;
      double disc = static_cast<double>(j - i) - rho * (b - a);
      best = std::max(best, std::fabs(disc) / 4.0);
    }
  }
  return best;
}

std::size_t count_naive(const std::vector<Scalar>& pts, const Region& E) {
  std::size_t n = 0;
  for (const auto& p : pts)
    if (E.contains(Point{p})) ++n;
  return n;
}

}  // namespace oracle
