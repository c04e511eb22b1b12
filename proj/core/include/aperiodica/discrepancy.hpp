#pragma once

#include "aperiodica/geometry.hpp"
#include "aperiodica/pointsets.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aperiodica {

struct DiscrepancyReport {
  Region region;
  std::size_t count = 0;
  Scalar expected;     // rho * mu(E)
  Scalar discrepancy;  // count - expected
  TubeMeasure tube1;   // mu(E^{+1})
  double ratio = 0.0;  // |discrepancy| / mu(E^{+1})
  std::optional<Scalar> ratio_exact;
  int sign = 0;
};

DiscrepancyReport discrepancy_report(const PointSource& S, const Scalar& rho, const Region& E);
DiscrepancyReport discrepancy_from_count(std::size_t count, const Scalar& rho, const Region& E);

// ratio > c, exactly when the tube is exact.
bool is_c_deviant(const DiscrepancyReport& report, const Scalar& c);

struct VanHoveDiagnostics {
  std::vector<Scalar> eps;
  // ratios[e][i] = mu(A_i^{+eps_e}) / mu(A_i)
  std::vector<std::vector<double>> ratios;
  std::vector<std::vector<std::optional<Scalar>>> ratios_exact;
  bool pass = false;
  std::optional<std::size_t> failing_eps;
  std::optional<std::size_t> failing_index;
  std::string reason;
};

// Passes when, for every eps, the ratio sequence is nonincreasing over its
// last quarter and ends below threshold.
VanHoveDiagnostics van_hove_check(std::span<const Region> sequence, const std::vector<Scalar>& eps_list,
                                  double threshold = 1e-2);

struct VanHoveFromDeviantOptions {
  std::vector<Scalar> eps_list{Scalar(1)};
  // Absolute threshold, or a fraction of the first ratio when relative is set.
  double threshold = 1e-2;
  bool relative = false;
};

// Reports must be c_i-deviant with c strictly increasing.
VanHoveDiagnostics deviant_implies_van_hove(std::span<const DiscrepancyReport> reports,
                                            std::span<const Scalar> c_seq,
                                            const VanHoveFromDeviantOptions& opts = {});

// Named region sequences, i = 1..max_i: "centered" [-i,i]^dim, "Qi" [0,2^i+1],
// "fibwin" [0,F_{i+1}] with F_1 = F_2 = 1.
std::vector<Region> region_family(std::string_view name, std::size_t max_i, std::size_t dim = 1);

struct Ball {
  Point center;
  Scalar radius;
};

// Largest ball inside one box of E: the box center and half the shortest
// side; ties go to the lexicographically smallest center.
Ball largest_inscribed_ball(const Region& E);

}  // namespace aperiodica
