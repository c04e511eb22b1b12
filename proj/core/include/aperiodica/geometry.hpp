#pragma once

#include "aperiodica/scalar.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aperiodica {

using Point = std::vector<Scalar>;

// Closed axis-aligned box with lo[k] < hi[k] on every axis.
class Box {
 public:
  Box(Point lo, Point hi);
  static Box interval(Scalar lo, Scalar hi);

  std::size_t dim() const { return lo_.size(); }
  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }
  Scalar side(std::size_t k) const { return hi_[k] - lo_[k]; }
  Scalar volume() const;
  Point center() const;
  bool contains(const Point& x) const;

  Box translated(const Point& x) const;
  Box scaled(const Scalar& s) const;
  // Squared Euclidean distance between the two closed boxes.
  Scalar distance_sq(const Box& other) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  Point lo_, hi_;
};

// Finite union of boxes. In one dimension overlapping or touching intervals
// are merged and components are sorted, so gaps are strictly positive. In
// higher dimensions boxes must be pairwise disjoint and are sorted by lo.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Box> boxes);
  static Region interval(Scalar lo, Scalar hi);
  static Region box(Point lo, Point hi);
  // [a,b], products with x, unions with u; x binds tighter than u.
  static Region parse(std::string_view text);

  std::size_t dim() const { return dim_; }
  bool empty() const { return boxes_.empty(); }
  const std::vector<Box>& boxes() const { return boxes_; }
  std::size_t size() const { return boxes_.size(); }

  Box bounding_box() const;
  bool contains(const Point& x) const;
  // 1D only: lengths of the gaps between consecutive components.
  std::vector<Scalar> gaps() const;
  // 1D only: lo and hi of the whole region.
  Scalar lo() const;
  Scalar hi() const;

  std::string str() const;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  std::vector<Box> boxes_;
  std::size_t dim_ = 0;
};

Scalar measure(const Region& E);
Region translate(const Region& E, const Point& x);
Region translate(const Region& E, const Scalar& x);
Region scale(const Region& E, const Scalar& s);

// Outer/inner epsilon-neighbourhood of the boundary: {x : d(x, dE) <= eps}.
enum class TubeMethod { exact_1d, steiner_box, steiner_separated, grid_estimate };
std::string_view to_string(TubeMethod m);

struct TubeMeasure {
  std::optional<Scalar> exact_value;
  double value = 0.0;
  double error_bound = 0.0;
  TubeMethod method = TubeMethod::exact_1d;
  std::size_t cells = 0;

  bool exact() const { return exact_value.has_value(); }
};

struct TubeOptions {
  double rel_tolerance = 1e-6;
  std::size_t cell_budget = 100'000'000;
};

TubeMeasure tube_measure(const Region& E, const Scalar& eps, const TubeOptions& opts = {});

// 1D only: the tube as an exact region.
Region tube_region(const Region& E, const Scalar& eps);

// Volume of {x : d(x, B) <= eps} for a single box.
double box_dilation_volume(const Box& B, double eps);

double distance_to_boundary(const Region& E, std::span<const double> x);
// Signed distance to a box: negative inside, positive outside.
double signed_distance(const Box& B, std::span<const double> x);

struct InclusionCheck {
  bool holds = true;
  std::size_t samples = 0;
  std::size_t counterexamples = 0;
  double worst_excess = 0.0;
};

// (E^{+l})^{+r} subset of E^{+(l+r)}, tested on a sample grid. Samples are
// taken from a regular grid over the bounding box of the outer tube and
// refined until at least n_samples lie in (E^{+l})^{+r}.
InclusionCheck check_tube_inclusion(const Region& E, const Scalar& l, const Scalar& r,
                                    std::size_t n_samples);

// mu(E^{+l}) <= l^d mu(E^{+1}) for l >= 1. Exact tubes compare exactly; other
// paths allow rel_tol relative slack on top of the reported error bounds.
bool check_tube_scaling(const Region& E, const Scalar& l, double rel_tol = 1e-9);

}  // namespace aperiodica
