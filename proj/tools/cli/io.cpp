#include "io.hpp"

#include <aperiodica/error.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace aperiodica::cli {

void write_points(std::ostream& os, const PointFile& f) {
  os << "# dim=" << f.dim << " source=" << f.source << '\n';
  for (const auto& p : f.points) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) os << '\t';
      os << p[k].str();
    }
    os << '\n';
  }
}

PointFile read_points(std::istream& is, const std::string& name) {
  PointFile f;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (header) continue;
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        if (tok.rfind("dim=", 0) == 0) f.dim = std::stoul(tok.substr(4));
        else if (tok.rfind("source=", 0) == 0) f.source = tok.substr(7);
      }
      header = true;
      continue;
    }
    Point p;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, '\t'))
      if (!cell.empty()) p.push_back(Scalar::parse(cell));
    require(p.size() == f.dim, ErrorKind::parse_error,
            name + ":" + std::to_string(lineno) + ": expected " + std::to_string(f.dim) + " coordinates");
    f.points.push_back(std::move(p));
  }
  require(header, ErrorKind::parse_error, name + ": missing '# dim=<d> source=<kind>' header");
  return f;
}

PointFile read_points_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::invalid_parameter, "cannot open " + path);
  return read_points(in, path);
}

void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::invalid_parameter, "cannot write " + path);
  out << text;
}

}  // namespace aperiodica::cli
