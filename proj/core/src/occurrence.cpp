#include "aperiodica/error.hpp"
#include "aperiodica/search.hpp"

#include <algorithm>
#include <cmath>

namespace aperiodica {

std::vector<Scalar> find_occurrences(const PointSource& S, std::span<const Scalar> patch, const Region& K,
                                     const Scalar& shift_lo, const Scalar& shift_hi) {
  require(S.dim() == 1 && K.dim() == 1, ErrorKind::invalid_parameter, "occurrence search is 1D");
  require(!patch.empty(), ErrorKind::invalid_parameter, "patch must be nonempty");
  std::vector<Scalar> out;
  if (shift_hi < shift_lo) return out;

  const std::vector<Scalar> pts = S.points_in(K.lo() + shift_lo, K.hi() + shift_hi);
  std::vector<double> x(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) x[i] = pts[i].to_double();
  const Scalar& p0 = patch.front();
  std::vector<double> diff(patch.size());
  for (std::size_t i = 0; i < patch.size(); ++i) diff[i] = (patch[i] - p0).to_double();
  std::vector<std::pair<double, double>> comps;
  for (const auto& b : K.boxes()) comps.emplace_back(b.lo()[0].to_double(), b.hi()[0].to_double());

  const double slo = shift_lo.to_double(), shi = shift_hi.to_double();
  const double p0d = p0.to_double();
  const double klo = K.lo().to_double(), khi = K.hi().to_double();
  const double tol = 1e-7 * std::max({1.0, std::fabs(klo) + std::fabs(slo), std::fabs(khi) + std::fabs(shi)});

  // membership of pts[i] in K + shift; 0 out, 1 in, 2 too close to call
  auto member = [&](std::size_t i, double shift) {
    double y = x[i] - shift;
    for (const auto& [a, b] : comps) {
      if (y > a + tol && y < b - tol) return 1;
      if (std::fabs(y - a) <= tol || std::fabs(y - b) <= tol) return 2;
    }
    return 0;
  };

  for (std::size_t j = 0; j < pts.size(); ++j) {
    double shift = x[j] - p0d;
    if (shift < slo - tol || shift > shi + tol) continue;
    // points of S in the hull of K + shift
    std::size_t i0 = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), klo + shift - tol) - x.begin());
    std::size_t i1 = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), khi + shift + tol) - x.begin());
    std::size_t k = 0;
    bool ok = true, ambiguous = false;
    for (std::size_t i = i0; i < i1 && ok; ++i) {
      int m = member(i, shift);
      if (m == 0) continue;
      if (m == 2) {
        ambiguous = true;
        break;
      }
      if (k >= patch.size() || std::fabs((x[i] - x[j]) - diff[k]) > tol) ok = false;
      ++k;
    }
    if (!ok) continue;
    if (!ambiguous && k != patch.size()) continue;

    // exact confirmation
    Scalar s = pts[j] - p0;
    if (s < shift_lo || s > shift_hi) continue;
    std::vector<Scalar> inside;
    for (std::size_t i = i0; i < i1; ++i) {
      Scalar y = pts[i] - s;
      bool in = std::any_of(K.boxes().begin(), K.boxes().end(),
                            [&](const Box& b) { return b.lo()[0] <= y && y <= b.hi()[0]; });
      if (in) inside.push_back(std::move(y));
    }
    // hull bounds were padded by tol, so nothing in K + s is missed
    if (inside.size() != patch.size()) continue;
    if (std::equal(inside.begin(), inside.end(), patch.begin())) out.push_back(std::move(s));
  }
  return out;
}

RepetitivityResult repetitivity_radius(const PointSource& S, const Region& patch_support, const Region& scan_window) {
  require(S.dim() == 1 && patch_support.dim() == 1 && scan_window.dim() == 1, ErrorKind::invalid_parameter,
          "repetitivity radius is computed for 1D sources");
  std::vector<Scalar> patch;
  for (const auto& b : patch_support.boxes()) {
    auto part = S.points_in(b.lo()[0], b.hi()[0]);
    patch.insert(patch.end(), part.begin(), part.end());
  }
  require(!patch.empty(), ErrorKind::invalid_parameter, "patch " + patch_support.str() + " holds no points");
  RepetitivityResult res;
  res.patch_size = patch.size();
  res.occurrences = find_occurrences(S, patch, patch_support, scan_window.lo() - patch_support.lo(),
                                     scan_window.hi() - patch_support.hi());
  res.repetitive = res.occurrences.size() >= 2;
  if (!res.repetitive) return res;
  Scalar gmax(0);
  for (std::size_t i = 1; i < res.occurrences.size(); ++i) {
    Scalar g = res.occurrences[i] - res.occurrences[i - 1];
    if (g > gmax) gmax = g;
  }
  res.radius = gmax / Scalar(2);
  return res;
}

}  // namespace aperiodica
