#pragma once

#include "aperiodica/geometry.hpp"
#include "aperiodica/scalar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aperiodica {

enum class SourceKind { lattice, periodic, example_L, cut_project_1d, substitution_1d };
std::string_view to_string(SourceKind kind);

// Uniform discreteness radius r and relative denseness radius R.
struct DeloneParams {
  std::optional<Scalar> r_exact, R_exact;
  double r = 0.0, R = 0.0;
  bool declared = true;
};

struct DensityDescriptor {
  std::optional<Scalar> exact;
  double value = 0.0;
  // True when the exact value is a closed form pinned by comparison with
  // direct counting rather than one that follows from the construction.
  bool empirical_closed_form = false;
};

// Generator of a Delone set. Implementations are immutable, so a SourcePtr
// can be shared across threads.
class PointSource {
 public:
  virtual ~PointSource() = default;

  virtual SourceKind kind() const = 0;
  virtual std::size_t dim() const = 0;
  // Canonical textual form accepted by parse_source.
  virtual std::string spec() const = 0;
  virtual DeloneParams delone() const = 0;
  virtual DensityDescriptor density() const = 0;

  // Points in E, sorted lexicographically.
  std::vector<Point> enumerate(const Region& E) const;
  std::size_t count_in(const Region& E) const;

  // 1D: points in the closed interval [lo, hi], sorted.
  virtual std::vector<Scalar> points_in(const Scalar& lo, const Scalar& hi) const;
  virtual std::size_t count_between(const Scalar& lo, const Scalar& hi) const;

 protected:
  virtual std::vector<Point> enumerate_box(const Box& B) const;
  virtual std::size_t count_box(const Box& B) const;
};

using SourcePtr = std::shared_ptr<const PointSource>;

// x = offset + basis * k for k in Z^d; basis columns are the generators.
SourcePtr make_lattice(std::vector<Point> basis, Point offset);
SourcePtr make_integer_lattice(const Scalar& spacing = Scalar(1), const Scalar& offset = Scalar(0));
SourcePtr make_square_lattice(std::size_t d, const Scalar& spacing = Scalar(1));
SourcePtr make_periodic(std::vector<Point> basis, Point offset, std::vector<Point> motif);
// Z together with 1/2 + 2^n for n >= 0.
SourcePtr make_example_l();
// {m + n*phi : m + n*phi* in [lo, hi)}.
SourcePtr make_cut_project(const Scalar& window_lo, const Scalar& window_hi);
SourcePtr make_fibonacci();
// Left or right half of the Fibonacci window.
SourcePtr make_half_fibonacci(bool left = true);

struct SubstitutionRule {
  std::map<char, std::string> images;
  std::map<char, Scalar> lengths;
  char seed = 'a';
  unsigned depth = 20;
};
// Tiles of the iterated seed word laid from 0 to the right, points at tile
// left ends.
SourcePtr make_substitution(const SubstitutionRule& rule);
SourcePtr make_fibonacci_substitution(unsigned depth = 24);

// Forms: latticeZ[:spacing=..,offset=..], latticeZ2[:spacing=..], exampleL,
// fib, halffib[:half=left|right], cp:lo=..,hi=.., sub[:depth=..].
SourcePtr parse_source(std::string_view spec);

std::vector<Point> enumerate(const PointSource& S, const Region& E);
std::size_t count_in(const PointSource& S, const Region& E);

struct DeloneEstimate {
  std::optional<Scalar> r_exact, R_exact;
  double r = 0.0, R = 0.0;
  std::size_t points = 0;
};

// Lower-bound style estimate from a finite window: half the minimal spacing
// and the largest empty-ball radius inside the window.
DeloneEstimate estimate_delone_params(const PointSource& S, const Region& window);

struct DensityResult {
  std::vector<double> ratios;
  std::vector<std::optional<Scalar>> ratios_exact;
  double value = 0.0;
  std::optional<Scalar> exact;
  // max |ratio_j - ratio_last| over the last half of the sequence.
  double tail_spread = 0.0;
  bool analytic = false;
};

struct DensityOptions {
  double van_hove_threshold = 1e-2;
};

DensityResult density(const PointSource& S, std::span<const Region> sequence,
                      const DensityOptions& opts = {});

}  // namespace aperiodica
