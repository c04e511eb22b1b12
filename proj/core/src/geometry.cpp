#include "aperiodica/geometry.hpp"

#include "aperiodica/error.hpp"

#include <algorithm>

namespace aperiodica {

Box::Box(Point lo, Point hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require(!lo_.empty(), ErrorKind::invalid_parameter, "box of dimension 0");
  require(lo_.size() == hi_.size(), ErrorKind::dimension_mismatch, "box corners differ in dimension");
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    require(lo_[k] < hi_[k], ErrorKind::invalid_parameter,
            "degenerate box side [" + lo_[k].str() + "," + hi_[k].str() + "]");
  }
}

Box Box::interval(Scalar lo, Scalar hi) { return Box(Point{std::move(lo)}, Point{std::move(hi)}); }

Scalar Box::volume() const {
  Scalar v(1);
  for (std::size_t k = 0; k < dim(); ++k) v *= side(k);
  return v;
}

Point Box::center() const {
  Point c(dim());
  for (std::size_t k = 0; k < dim(); ++k) c[k] = midpoint(lo_[k], hi_[k]);
  return c;
}

bool Box::contains(const Point& x) const {
  require(x.size() == dim(), ErrorKind::dimension_mismatch, "point/box dimension mismatch");
  for (std::size_t k = 0; k < dim(); ++k) {
    if (x[k] < lo_[k] || x[k] > hi_[k]) return false;
  }
  return true;
}

Box Box::translated(const Point& x) const {
  require(x.size() == dim(), ErrorKind::dimension_mismatch, "translation dimension mismatch");
  Point lo = lo_, hi = hi_;
  for (std::size_t k = 0; k < dim(); ++k) {
    lo[k] += x[k];
    hi[k] += x[k];
  }
  return Box(std::move(lo), std::move(hi));
}

Box Box::scaled(const Scalar& s) const {
  require(s.sign() > 0, ErrorKind::invalid_parameter, "scale factor must be positive");
  Point lo = lo_, hi = hi_;
  for (std::size_t k = 0; k < dim(); ++k) {
    lo[k] *= s;
    hi[k] *= s;
  }
  return Box(std::move(lo), std::move(hi));
}

Scalar Box::distance_sq(const Box& other) const {
  require(other.dim() == dim(), ErrorKind::dimension_mismatch, "box dimension mismatch");
  Scalar d(0);
  for (std::size_t k = 0; k < dim(); ++k) {
    Scalar g(0);
    if (other.lo_[k] > hi_[k]) g = other.lo_[k] - hi_[k];
    else if (lo_[k] > other.hi_[k]) g = lo_[k] - other.hi_[k];
    d += g * g;
  }
  return d;
}

Region::Region(std::vector<Box> boxes) {
  if (boxes.empty()) return;
  dim_ = boxes.front().dim();
  for (const auto& b : boxes) {
    require(b.dim() == dim_, ErrorKind::dimension_mismatch, "region boxes differ in dimension");
  }
  if (dim_ == 1) {
    std::sort(boxes.begin(), boxes.end(),
              [](const Box& a, const Box& b) { return a.lo()[0] < b.lo()[0]; });
    Scalar lo = boxes.front().lo()[0], hi = boxes.front().hi()[0];
    for (std::size_t i = 1; i < boxes.size(); ++i) {
      if (boxes[i].lo()[0] <= hi) {
        if (boxes[i].hi()[0] > hi) hi = boxes[i].hi()[0];
      } else {
        boxes_.push_back(Box::interval(lo, hi));
        lo = boxes[i].lo()[0];
        hi = boxes[i].hi()[0];
      }
    }
    boxes_.push_back(Box::interval(lo, hi));
    return;
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      require(boxes[i].distance_sq(boxes[j]).sign() > 0, ErrorKind::invalid_parameter,
              "boxes of a region must be pairwise disjoint");
    }
  }
  std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) {
    return std::lexicographical_compare(a.lo().begin(), a.lo().end(), b.lo().begin(), b.lo().end());
  });
  boxes_ = std::move(boxes);
}

Region Region::interval(Scalar lo, Scalar hi) {
  return Region(std::vector<Box>{Box::interval(std::move(lo), std::move(hi))});
}

Region Region::box(Point lo, Point hi) {
  return Region(std::vector<Box>{Box(std::move(lo), std::move(hi))});
}

Box Region::bounding_box() const {
  require(!empty(), ErrorKind::invalid_parameter, "empty region has no bounding box");
  Point lo = boxes_.front().lo(), hi = boxes_.front().hi();
  for (const auto& b : boxes_) {
    for (std::size_t k = 0; k < dim_; ++k) {
      if (b.lo()[k] < lo[k]) lo[k] = b.lo()[k];
      if (b.hi()[k] > hi[k]) hi[k] = b.hi()[k];
    }
  }
  return Box(std::move(lo), std::move(hi));
}

bool Region::contains(const Point& x) const {
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) { return b.contains(x); });
}

std::vector<Scalar> Region::gaps() const {
  require(dim_ == 1, ErrorKind::dimension_mismatch, "gaps are defined for 1D regions");
  std::vector<Scalar> g;
  for (std::size_t i = 1; i < boxes_.size(); ++i) g.push_back(boxes_[i].lo()[0] - boxes_[i - 1].hi()[0]);
  return g;
}

Scalar Region::lo() const {
  require(dim_ == 1 && !empty(), ErrorKind::invalid_parameter, "lo() needs a nonempty 1D region");
  return boxes_.front().lo()[0];
}

Scalar Region::hi() const {
  require(dim_ == 1 && !empty(), ErrorKind::invalid_parameter, "hi() needs a nonempty 1D region");
  return boxes_.back().hi()[0];
}

std::string Region::str() const {
  if (empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    if (i) out += "u";
    for (std::size_t k = 0; k < dim_; ++k) {
      if (k) out += "x";
      out += "[" + boxes_[i].lo()[k].str() + "," + boxes_[i].hi()[k].str() + "]";
    }
  }
  return out;
}

Scalar measure(const Region& E) {
  Scalar m(0);
  for (const auto& b : E.boxes()) m += b.volume();
  return m;
}

Region translate(const Region& E, const Point& x) {
  std::vector<Box> out;
  out.reserve(E.size());
  for (const auto& b : E.boxes()) out.push_back(b.translated(x));
  return Region(std::move(out));
}

Region translate(const Region& E, const Scalar& x) { return translate(E, Point{x}); }

Region scale(const Region& E, const Scalar& s) {
  std::vector<Box> out;
  out.reserve(E.size());
  for (const auto& b : E.boxes()) out.push_back(b.scaled(s));
  return Region(std::move(out));
}

}  // namespace aperiodica
