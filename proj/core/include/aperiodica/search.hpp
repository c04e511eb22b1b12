#pragma once

#include "aperiodica/discrepancy.hpp"
#include "aperiodica/geometry.hpp"
#include "aperiodica/pointsets.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace aperiodica {

// Counting constants for a source: for every bounded E,
//   (eta / R^d) (mu(E) - mu(E^{+R})) <= #(E cap S) <= (eta' / r^d) (mu(E) + mu(E^{+r})),
// and a translate by ||x|| <= l, l >= r, changes counts by at most q l^d mu(E^{+1}).
struct ConstantsTable {
  std::size_t d = 1;
  DeloneParams delone;
  Scalar eta, eta_prime;
  std::optional<Scalar> q;  // exact when r is exact
  double q_value = 0.0;
};

ConstantsTable derive_constants(const PointSource& S);

struct CountBoundsCheck {
  std::size_t count = 0;
  double lower = 0.0, upper = 0.0;
  std::optional<Scalar> lower_exact, upper_exact;
  bool holds = false;
};

CountBoundsCheck check_count_bounds(const PointSource& S, const ConstantsTable& k, const Region& E);

struct TranslateBoundCheck {
  long long difference = 0;
  double bound = 0.0;
  std::optional<Scalar> bound_exact;
  bool holds = false;
};

// | #((E + x) cap S) - #(E cap S) | <= q l^d mu(E^{+1}) for ||x|| <= l.
TranslateBoundCheck check_translate_bound(const PointSource& S, const ConstantsTable& k, const Region& E,
                                          const Point& x, const Scalar& l);

enum class Selection { max_ratio, shortest };

struct DeviantSearchOptions {
  // Floor on candidate interval length; at least 2 so that mu(E^{+1}) = 4.
  Scalar min_length = Scalar(8);
  Selection selection = Selection::max_ratio;
  // +1 only excess, -1 only deficit, 0 either.
  int sign = 0;
  // Candidates re-checked exactly before giving up on numerical ties.
  std::size_t exact_retries = 32;
};

struct RobustTranscript {
  Scalar ell;
  std::size_t shifts_checked = 0;
  long long min_count = 0, max_count = 0;
  Scalar worst_shift;
  Scalar worst_discrepancy;
  std::optional<Scalar> worst_ratio_exact;
  double worst_ratio = 0.0;
  // Found via the (c + q l^d)-deviance sufficient condition.
  bool via_translate_bound = false;
  // Endpoints sit in two copies of the same patch of radius > l, so the
  // count is shift invariant up to boundary hits.
  bool via_patch_return = false;
};

struct DeviantFind {
  Region region;
  DiscrepancyReport report;
  double c_achieved = 0.0;
  std::optional<Scalar> c_achieved_exact;
  int sign = 0;
  std::optional<RobustTranscript> robust;
};

struct DeviantSearch {
  std::optional<DeviantFind> find;
  double sup_ratio = 0.0;
  std::optional<Region> sup_region;
  std::size_t points_scanned = 0;
  bool truncated = false;
};

// 1D search over intervals whose endpoints are midpoints between consecutive
// points of S inside window. budget caps the number of points scanned per
// window component.
DeviantSearch find_deviant(const PointSource& S, const Scalar& rho, const Scalar& c, const Region& window,
                           std::size_t budget, const DeviantSearchOptions& opts = {});

struct TranslateProfileEntry {
  Scalar shift;
  std::size_t count = 0;
};

struct OppositeTranslate {
  Scalar x;  // E - x has discrepancy of opposite sign or zero
  DiscrepancyReport report;
  std::size_t segments_checked = 0;
};

// Throws not_found with the count profile when no translate inside
// scan_window works.
OppositeTranslate find_opposite_translate(const PointSource& S, const Scalar& rho, const Region& E,
                                          const Region& scan_window);

// Exhaustive check over every count-distinct shift |x| <= ell.
RobustTranscript verify_shift_robust(const PointSource& S, const Scalar& rho, const Region& E, const Scalar& ell);

struct RobustSearchOptions {
  DeviantSearchOptions base;
  // Candidates whose shift profile is evaluated in the fallback scan.
  std::size_t robust_evaluations = 4000;
  // Anchor patches tried by the patch-return route.
  std::size_t return_anchors = 32;
  std::size_t workers = 1;
};

DeviantSearch find_shift_robust_deviant(const PointSource& S, const Scalar& rho, const Scalar& c,
                                        const Scalar& ell, const Region& window, std::size_t budget,
                                        const RobustSearchOptions& opts = {});

// Translates x with (S - x) cap K == S cap K, for x in [shift_lo, shift_hi].
// patch lists S cap K in increasing order.
std::vector<Scalar> find_occurrences(const PointSource& S, std::span<const Scalar> patch, const Region& K,
                                     const Scalar& shift_lo, const Scalar& shift_hi);

struct RepetitivityResult {
  bool repetitive = false;
  std::vector<Scalar> occurrences;
  Scalar radius;  // half the largest gap between consecutive occurrences
  std::size_t patch_size = 0;
};

RepetitivityResult repetitivity_radius(const PointSource& S, const Region& patch_support, const Region& scan_window);

}  // namespace aperiodica
