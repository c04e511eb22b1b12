#pragma once

#include <aperiodica/aperiodica.hpp>

#include <vector>

namespace oracle {

using aperiodica::Point;
using aperiodica::Region;
using aperiodica::Scalar;

// Minimum over all permutations of the largest matched squared distance.
// Requires equal sizes, n <= 9.
Scalar bottleneck_sq_bruteforce(const std::vector<Point>& left, const std::vector<Point>& right);

// {m + n phi : m + n phi* in [lo, hi)} inside [a, b], by exact tests over a
// box of (m, n) pairs.
std::vector<Scalar> cut_project_bruteforce(const Scalar& lo, const Scalar& hi, const Scalar& a, const Scalar& b);

// 1D tube measure from the nearest-boundary-point cells: each boundary point
// claims eps on each side, capped at half the distance to its neighbour.
Scalar tube_1d_cells(const Region& E, const Scalar& eps);

// Largest |count - rho*len| / 4 over intervals between midpoints of
// consecutive points in pts with length >= min_len. Quadratic.
double max_ratio_scan(const std::vector<Scalar>& pts, double rho, double min_len);

// Exact count of pts in the closed region.
std::size_t count_naive(const std::vector<Scalar>& pts, const Region& E);

}  // namespace oracle
