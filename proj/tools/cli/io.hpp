#pragma once

#include <aperiodica/geometry.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace aperiodica::cli {

// Point-set file: header "# dim=<d> source=<kind>", then one point per line
// with exact coordinates separated by tabs.
struct PointFile {
  std::size_t dim = 1;
  std::string source;
  std::vector<Point> points;
};

void write_points(std::ostream& os, const PointFile& f);
PointFile read_points(std::istream& is, const std::string& name = "<stream>");
PointFile read_points_file(const std::string& path);

// Writes to path, or to fallback when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& fallback);

}  // namespace aperiodica::cli
