#include "aperiodica/pointsets.hpp"

#include "aperiodica/discrepancy.hpp"
#include "aperiodica/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace aperiodica {

namespace {

__extension__ using i128 = __int128;

constexpr double kSqrt5 = 2.2360679774997896964;
constexpr double kPhi = 1.6180339887498948482;
constexpr double kPhiConj = -0.6180339887498948482;

// Exact order of 1D points that are known to be well separated, decided by
// doubles unless two keys are too close to call.
bool scalar_less(const Scalar& a, double da, const Scalar& b, double db) {
  double tol = 1e-9 * std::max(1.0, std::max(std::fabs(da), std::fabs(db)));
  if (da < db - tol) return true;
  if (db < da - tol) return false;
  return a < b;
}

void sort_points(std::vector<Scalar>& pts) {
  std::vector<std::pair<double, std::size_t>> keys(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) keys[i] = {pts[i].to_double(), i};
  std::sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
    return scalar_less(pts[x.second], x.first, pts[y.second], y.first);
  });
  std::vector<Scalar> out;
  out.reserve(pts.size());
  for (const auto& k : keys) out.push_back(std::move(pts[k.second]));
  pts = std::move(out);
}

long long to_ll(const Integer& v) {
  require(v > Integer(std::numeric_limits<long long>::min() / 4) &&
              v < Integer(std::numeric_limits<long long>::max() / 4),
          ErrorKind::invalid_parameter, "coordinate out of supported range");
  return v.convert_to<long long>();
}

bool lex_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Solve M x = y exactly; M given by columns.
std::vector<Point> invert(const std::vector<Point>& cols) {
  const std::size_t d = cols.size();
  std::vector<std::vector<Scalar>> a(d, std::vector<Scalar>(2 * d));
  for (std::size_t i = 0; i < d; ++i) {
    require(cols[i].size() == d, ErrorKind::dimension_mismatch, "lattice basis is not square");
    for (std::size_t j = 0; j < d; ++j) a[i][j] = cols[j][i];
    a[i][d + i] = Scalar(1);
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && a[piv][c].is_zero()) ++piv;
    require(piv < d, ErrorKind::invalid_parameter, "lattice basis is singular");
    std::swap(a[c], a[piv]);
    Scalar inv = Scalar(1) / a[c][c];
    for (auto& v : a[c]) v *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Scalar f = a[r][c];
      for (std::size_t j = 0; j < 2 * d; ++j) a[r][j] -= f * a[c][j];
    }
  }
  // rows of the inverse
  std::vector<Point> inv(d, Point(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) inv[i][j] = a[i][d + j];
  return inv;
}

Scalar determinant(const std::vector<Point>& cols) {
  const std::size_t d = cols.size();
  std::vector<std::vector<Scalar>> a(d, std::vector<Scalar>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = cols[j][i];
  Scalar det(1);
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && a[piv][c].is_zero()) ++piv;
    if (piv == d) return Scalar(0);
    if (piv != c) {
      std::swap(a[c], a[piv]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < d; ++r) {
      if (a[r][c].is_zero()) continue;
      Scalar f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < d; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

std::string point_str(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + p[i].str();
  return s;
}

class LatticeSource : public PointSource {
 public:
  LatticeSource(std::vector<Point> basis, Point offset, std::vector<Point> motif, bool periodic)
      : basis_(std::move(basis)), offset_(std::move(offset)), motif_(std::move(motif)), periodic_(periodic) {
    d_ = basis_.size();
    require(d_ >= 1, ErrorKind::invalid_parameter, "lattice needs a basis");
    require(offset_.size() == d_, ErrorKind::dimension_mismatch, "lattice offset dimension");
    if (motif_.empty()) motif_.push_back(Point(d_, Scalar(0)));
    for (const auto& m : motif_) require(m.size() == d_, ErrorKind::dimension_mismatch, "motif dimension");
    if (d_ == 1 && basis_[0][0].sign() < 0) basis_[0][0] = -basis_[0][0];
    det_ = abs(determinant(basis_));
    require(!det_.is_zero(), ErrorKind::invalid_parameter, "lattice basis is singular");
    inverse_ = invert(basis_);
    diagonal_ = true;
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j)
        if (i != j && !basis_[j][i].is_zero()) diagonal_ = false;
    compute_delone();
  }

  SourceKind kind() const override { return periodic_ ? SourceKind::periodic : SourceKind::lattice; }
  std::size_t dim() const override { return d_; }

  std::string spec() const override {
    bool unit_offset = std::all_of(offset_.begin(), offset_.end(), [](const Scalar& s) { return s.is_zero(); });
    if (!periodic_ && diagonal_) {
      bool equal = true;
      for (std::size_t k = 1; k < d_; ++k) equal = equal && basis_[k][k] == basis_[0][0];
      if (equal && (d_ == 1 || unit_offset)) {
        std::string name = d_ == 1 ? "latticeZ" : "latticeZ" + std::to_string(d_);
        std::vector<std::string> params;
        if (basis_[0][0] != Scalar(1)) params.push_back("spacing=" + basis_[0][0].str());
        if (!unit_offset) params.push_back("offset=" + offset_[0].str());
        for (std::size_t i = 0; i < params.size(); ++i) name += (i ? "," : ":") + params[i];
        return name;
      }
    }
    std::string s = periodic_ ? "periodic:basis=" : "lattice:basis=";
    for (std::size_t j = 0; j < d_; ++j) s += (j ? "|" : "") + point_str(basis_[j]);
    s += ",offset=" + point_str(offset_);
    if (periodic_) {
      s += ",motif=";
      for (std::size_t j = 0; j < motif_.size(); ++j) s += (j ? "|" : "") + point_str(motif_[j]);
    }
    return s;
  }

  DeloneParams delone() const override { return delone_; }

  DensityDescriptor density() const override {
    DensityDescriptor dd;
    dd.exact = Scalar(static_cast<long long>(motif_.size())) / det_;
    dd.value = dd.exact->to_double();
    return dd;
  }

  std::vector<Scalar> points_in(const Scalar& lo, const Scalar& hi) const override {
    require(d_ == 1, ErrorKind::dimension_mismatch, "points_in is 1D only");
    std::vector<Scalar> out;
    if (hi < lo) return out;
    const Scalar& s = basis_[0][0];
    for (const auto& m : motif_) {
      Scalar base = offset_[0] + m[0];
      Integer k0 = ((lo - base) / s).ceil(), k1 = ((hi - base) / s).floor();
      for (Integer k = k0; k <= k1; ++k) out.push_back(base + Scalar(k) * s);
    }
    if (motif_.size() > 1) sort_points(out);
    return out;
  }

  std::size_t count_between(const Scalar& lo, const Scalar& hi) const override {
    require(d_ == 1, ErrorKind::dimension_mismatch, "count_between is 1D only");
    if (hi < lo) return 0;
    const Scalar& s = basis_[0][0];
    std::size_t total = 0;
    for (const auto& m : motif_) {
      Scalar base = offset_[0] + m[0];
      Integer k0 = ((lo - base) / s).ceil(), k1 = ((hi - base) / s).floor();
      if (k1 >= k0) total += static_cast<std::size_t>(to_ll(k1 - k0 + 1));
    }
    return total;
  }

 protected:
  std::vector<Point> enumerate_box(const Box& B) const override {
    std::vector<Point> out;
    for (const auto& m : motif_) {
      Point base = offset_;
      for (std::size_t k = 0; k < d_; ++k) base[k] += m[k];
      // integer coordinate ranges from the box corners
      std::vector<Integer> kmin(d_), kmax(d_);
      for (std::size_t c = 0; c < (std::size_t{1} << d_); ++c) {
        Point y(d_);
        for (std::size_t k = 0; k < d_; ++k) y[k] = ((c >> k) & 1u ? B.hi()[k] : B.lo()[k]) - base[k];
        for (std::size_t i = 0; i < d_; ++i) {
          Scalar ki(0);
          for (std::size_t j = 0; j < d_; ++j) ki += inverse_[i][j] * y[j];
          Integer f = ki.floor(), cl = ki.ceil();
          if (c == 0 || f < kmin[i]) kmin[i] = f;
          if (c == 0 || cl > kmax[i]) kmax[i] = cl;
        }
      }
      std::vector<Integer> k = kmin;
      while (true) {
        Point x = base;
        for (std::size_t j = 0; j < d_; ++j)
          for (std::size_t i = 0; i < d_; ++i) x[i] += basis_[j][i] * Scalar(k[j]);
        if (B.contains(x)) out.push_back(std::move(x));
        std::size_t axis = 0;
        while (axis < d_) {
          if (k[axis] < kmax[axis]) {
            ++k[axis];
            break;
          }
          k[axis] = kmin[axis];
          ++axis;
        }
        if (axis == d_) break;
      }
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
  }

  std::size_t count_box(const Box& B) const override {
    if (!diagonal_ || motif_.size() != 1) return enumerate_box(B).size();
    std::size_t total = 1;
    for (std::size_t k = 0; k < d_; ++k) {
      const Scalar& s = basis_[k][k];
      Scalar sp = abs(s);
      Scalar base = offset_[k] + motif_[0][k];
      Integer k0 = ((B.lo()[k] - base) / sp).ceil(), k1 = ((B.hi()[k] - base) / sp).floor();
      if (k1 < k0) return 0;
      total *= static_cast<std::size_t>(to_ll(k1 - k0 + 1));
    }
    return total;
  }

 private:
  void compute_delone() {
    if (d_ == 1) {
      const Scalar& s = basis_[0][0];
      std::vector<Scalar> pts;
      for (const auto& m : motif_) {
        Scalar base = offset_[0] + m[0];
        Integer k = ((offset_[0] - base) / s).ceil();
        for (int t = 0; t < 3; ++t) pts.push_back(base + Scalar(k + t) * s);
      }
      sort_points(pts);
      Scalar gmin = pts[1] - pts[0], gmax = gmin;
      // a period starting at the first point
      for (std::size_t i = 1; i < pts.size(); ++i) {
        Scalar g = pts[i] - pts[i - 1];
        if (g < gmin) gmin = g;
        if (g > gmax) gmax = g;
      }
      delone_.r_exact = gmin / Scalar(2);
      delone_.R_exact = gmax / Scalar(2);
      delone_.r = delone_.r_exact->to_double();
      delone_.R = delone_.R_exact->to_double();
      return;
    }
    if (diagonal_ && motif_.size() == 1) {
      Scalar smin = abs(basis_[0][0]);
      double r2 = 0.0;
      for (std::size_t k = 0; k < d_; ++k) {
        Scalar s = abs(basis_[k][k]);
        if (s < smin) smin = s;
        r2 += s.to_double() * s.to_double();
      }
      delone_.r_exact = smin / Scalar(2);
      delone_.r = delone_.r_exact->to_double();
      delone_.R = 0.5 * std::sqrt(r2);
      return;
    }
    // General basis: estimate from a sample window.
    delone_.declared = false;
    Point lo(d_), hi(d_);
    double scale = 0.0;
    for (const auto& b : basis_)
      for (const auto& c : b) scale = std::max(scale, std::fabs(c.to_double()));
    Scalar w = Scalar(static_cast<long long>(std::ceil(6 * scale * d_)));
    for (std::size_t k = 0; k < d_; ++k) {
      lo[k] = offset_[k] - w;
      hi[k] = offset_[k] + w;
    }
    auto est = estimate_delone_params(*this, Region::box(lo, hi));
    delone_.r = est.r;
    delone_.R = est.R;
    delone_.r_exact = est.r_exact;
  }

  std::vector<Point> basis_;
  Point offset_;
  std::vector<Point> motif_;
  bool periodic_;
  std::size_t d_ = 1;
  Scalar det_;
  std::vector<Point> inverse_;
  bool diagonal_ = true;
  DeloneParams delone_;
};

class ExampleLSource : public PointSource {
 public:
  SourceKind kind() const override { return SourceKind::example_L; }
  std::size_t dim() const override { return 1; }
  std::string spec() const override { return "exampleL"; }

  DeloneParams delone() const override {
    DeloneParams p;
    p.r_exact = Scalar::fraction(1, 4);
    p.R_exact = Scalar::fraction(1, 2);
    p.r = 0.25;
    p.R = 0.5;
    return p;
  }

  DensityDescriptor density() const override {
    DensityDescriptor dd;
    dd.exact = Scalar(1);
    dd.value = 1.0;
    return dd;
  }

  std::vector<Scalar> points_in(const Scalar& lo, const Scalar& hi) const override {
    std::vector<Scalar> out;
    if (hi < lo) return out;
    auto extras = extra_points(lo, hi);
    Integer k0 = lo.ceil(), k1 = hi.floor();
    std::size_t e = 0;
    for (Integer k = k0; k <= k1; ++k) {
      Scalar sk(k);
      while (e < extras.size() && extras[e] < sk) out.push_back(extras[e++]);
      out.push_back(sk);
    }
    while (e < extras.size()) out.push_back(extras[e++]);
    return out;
  }

  std::size_t count_between(const Scalar& lo, const Scalar& hi) const override {
    if (hi < lo) return 0;
    Integer k0 = lo.ceil(), k1 = hi.floor();
    std::size_t n = k1 >= k0 ? static_cast<std::size_t>(to_ll(k1 - k0 + 1)) : 0;
    return n + extra_points(lo, hi).size();
  }

 private:
  static std::vector<Scalar> extra_points(const Scalar& lo, const Scalar& hi) {
    std::vector<Scalar> out;
    Integer p = 1;
    const Rational half(1, 2);
    while (true) {
      Scalar x(Rational(p) + half);
      if (x > hi) break;
      if (x >= lo) out.push_back(x);
      p *= 2;
    }
    return out;
  }
};

// (a + b*sqrt5) / den with machine integers, for fast exact window tests.
struct QuadFrac {
  long long a = 0, b = 0, den = 1;
};

std::optional<QuadFrac> to_quad_frac(const Scalar& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const Integer limit = Integer(1) << 40;
  Integer pd = denominator(x.rational_part()), qd = denominator(x.sqrt5_part());
  Integer den = boost::multiprecision::lcm(pd, qd);
  Integer a = numerator(x.rational_part()) * (den / pd);
  Integer b = numerator(x.sqrt5_part()) * (den / qd);
  if (den > limit || abs(a) > limit || abs(b) > limit) return std::nullopt;
  return QuadFrac{a.convert_to<long long>(), b.convert_to<long long>(), den.convert_to<long long>()};
}

int quad_sign(i128 p, i128 q) {
  int sp = p > 0 ? 1 : (p < 0 ? -1 : 0);
  int sq = q > 0 ? 1 : (q < 0 ? -1 : 0);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  i128 lhs = p * p, rhs = 5 * q * q;
  return lhs > rhs ? sp : sq;
}

// sign of (m + n*psi) - f where psi = phi (conj=false) or phi* (conj=true).
int compare_mn(long long m, long long n, bool conj, const QuadFrac& f) {
  // 2*den*(m + n*psi) = den*(2m + n) +- den*n*sqrt5
  i128 p = static_cast<i128>(f.den) * (2 * static_cast<i128>(m) + n) - 2 * static_cast<i128>(f.a);
  i128 q = (conj ? -1 : 1) * static_cast<i128>(f.den) * n - 2 * static_cast<i128>(f.b);
  return quad_sign(p, q);
}

class CutProjectSource : public PointSource {
 public:
  CutProjectSource(Scalar lo, Scalar hi, std::string name, std::optional<DeloneParams> declared)
      : lo_(std::move(lo)), hi_(std::move(hi)), name_(std::move(name)) {
    require(lo_ < hi_, ErrorKind::invalid_parameter, "cut-and-project window must satisfy lo < hi");
    lo_q_ = to_quad_frac(lo_);
    hi_q_ = to_quad_frac(hi_);
    require(lo_q_ && hi_q_, ErrorKind::invalid_parameter, "window endpoints have oversized denominators");
    if (declared) {
      delone_ = *declared;
    } else {
      auto est = estimate_delone_params(*this, Region::interval(Scalar(-2000), Scalar(2000)));
      delone_.r_exact = est.r_exact;
      delone_.R_exact = est.R_exact;
      delone_.r = est.r;
      delone_.R = est.R;
      delone_.declared = false;
    }
  }

  SourceKind kind() const override { return SourceKind::cut_project_1d; }
  std::size_t dim() const override { return 1; }
  std::string spec() const override {
    if (!name_.empty()) return name_;
    return "cp:lo=" + lo_.str() + ",hi=" + hi_.str();
  }
  DeloneParams delone() const override { return delone_; }

  DensityDescriptor density() const override {
    DensityDescriptor dd;
    dd.exact = (hi_ - lo_) / Scalar::sqrt5();
    dd.value = dd.exact->to_double();
    dd.empirical_closed_form = true;
    return dd;
  }

  std::vector<Scalar> points_in(const Scalar& A, const Scalar& B) const override {
    std::vector<std::pair<long long, long long>> mn;
    scan(A, B, [&](long long m, long long n) { mn.emplace_back(m, n); });
    std::vector<std::pair<double, std::size_t>> keys(mn.size());
    for (std::size_t i = 0; i < mn.size(); ++i)
      keys[i] = {static_cast<double>(mn[i].first) + static_cast<double>(mn[i].second) * kPhi, i};
    std::sort(keys.begin(), keys.end());
    std::vector<Scalar> out;
    out.reserve(mn.size());
    for (const auto& k : keys) {
      auto [m, n] = mn[k.second];
      out.emplace_back(Rational(2 * static_cast<Integer>(m) + n, 2), Rational(n, 2));
    }
    return out;
  }

  std::size_t count_between(const Scalar& A, const Scalar& B) const override {
    std::size_t n = 0;
    scan(A, B, [&](long long, long long) { ++n; });
    return n;
  }

 private:
  template <class F>
  void scan(const Scalar& A, const Scalar& B, F&& emit) const {
    if (B < A) return;
    auto Aq = to_quad_frac(A), Bq = to_quad_frac(B);
    require(Aq && Bq, ErrorKind::invalid_parameter, "query bounds have oversized denominators");
    const double a = A.to_double(), b = B.to_double();
    const double wl = lo_.to_double(), wh = hi_.to_double();
    require(std::fabs(a) < 1e12 && std::fabs(b) < 1e12, ErrorKind::invalid_parameter,
            "query bounds out of supported range");
    long long n0 = static_cast<long long>(std::floor((a - wh) / kSqrt5)) - 1;
    long long n1 = static_cast<long long>(std::ceil((b - wl) / kSqrt5)) + 1;
    for (long long n = n0; n <= n1; ++n) {
      double mlo = std::max(wl - n * kPhiConj, a - n * kPhi);
      double mhi = std::min(wh - n * kPhiConj, b - n * kPhi);
      if (mhi < mlo - 2) continue;
      long long m0 = static_cast<long long>(std::floor(mlo)) - 1;
      long long m1 = static_cast<long long>(std::ceil(mhi)) + 1;
      for (long long m = m0; m <= m1; ++m) {
        if (compare_mn(m, n, true, *lo_q_) < 0) continue;
        if (compare_mn(m, n, true, *hi_q_) >= 0) continue;
        if (compare_mn(m, n, false, *Aq) < 0) continue;
        if (compare_mn(m, n, false, *Bq) > 0) continue;
        emit(m, n);
      }
    }
  }

  Scalar lo_, hi_;
  std::optional<QuadFrac> lo_q_, hi_q_;
  std::string name_;
  DeloneParams delone_;
};

class SubstitutionSource : public PointSource {
 public:
  SubstitutionSource(const SubstitutionRule& rule, std::string name) : name_(std::move(name)) {
    std::string word(1, rule.seed);
    require(rule.images.count(rule.seed) > 0, ErrorKind::invalid_parameter, "seed letter has no image");
    for (unsigned i = 0; i < rule.depth; ++i) {
      std::string next;
      for (char c : word) {
        auto it = rule.images.find(c);
        require(it != rule.images.end(), ErrorKind::invalid_parameter, std::string("letter without image: ") + c);
        next += it->second;
      }
      word = std::move(next);
      require(word.size() <= 50'000'000, ErrorKind::invalid_parameter, "substitution depth too large");
    }
    Scalar x(0);
    std::map<char, std::size_t> counts;
    Scalar gmin, gmax;
    bool first = true;
    points_.reserve(word.size());
    for (char c : word) {
      auto it = rule.lengths.find(c);
      require(it != rule.lengths.end(), ErrorKind::invalid_parameter, std::string("letter without length: ") + c);
      require(it->second.sign() > 0, ErrorKind::invalid_parameter, "tile lengths must be positive");
      points_.push_back(x);
      x += it->second;
      ++counts[c];
      if (first || it->second < gmin) gmin = it->second;
      if (first || it->second > gmax) gmax = it->second;
      first = false;
    }
    end_ = x;
    delone_.r_exact = gmin / Scalar(2);
    delone_.R_exact = gmax / Scalar(2);
    delone_.r = delone_.r_exact->to_double();
    delone_.R = delone_.R_exact->to_double();
    density_ = static_cast<double>(word.size()) / end_.to_double();
  }

  SourceKind kind() const override { return SourceKind::substitution_1d; }
  std::size_t dim() const override { return 1; }
  std::string spec() const override { return name_; }
  DeloneParams delone() const override { return delone_; }

  DensityDescriptor density() const override {
    DensityDescriptor dd;
    dd.value = density_;
    return dd;
  }

  std::vector<Scalar> points_in(const Scalar& lo, const Scalar& hi) const override {
    check_range(lo, hi);
    auto [b, e] = range(lo, hi);
    return std::vector<Scalar>(points_.begin() + b, points_.begin() + e);
  }

  std::size_t count_between(const Scalar& lo, const Scalar& hi) const override {
    check_range(lo, hi);
    auto [b, e] = range(lo, hi);
    return e - b;
  }

 private:
  void check_range(const Scalar& lo, const Scalar& hi) const {
    if (hi < lo) return;
    require(lo >= Scalar(0) && hi < end_, ErrorKind::insufficient_data,
            "query [" + lo.str() + "," + hi.str() + "] leaves the generated patch [0," + end_.str() + ")");
  }

  std::pair<std::size_t, std::size_t> range(const Scalar& lo, const Scalar& hi) const {
    if (hi < lo) return {0, 0};
    auto b = std::lower_bound(points_.begin(), points_.end(), lo);
    auto e = std::upper_bound(points_.begin(), points_.end(), hi);
    return {static_cast<std::size_t>(b - points_.begin()), static_cast<std::size_t>(e - points_.begin())};
  }

  std::vector<Scalar> points_;
  Scalar end_;
  std::string name_;
  DeloneParams delone_;
  double density_ = 0.0;
};

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Point parse_point(const std::string& s) {
  Point p;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) p.push_back(Scalar::parse(tok));
  return p;
}

std::vector<Point> parse_points(const std::string& s) {
  std::vector<Point> out;
  for (const auto& part : split(s, '|')) out.push_back(parse_point(part));
  return out;
}

}  // namespace

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::lattice: return "lattice";
    case SourceKind::periodic: return "periodic";
    case SourceKind::example_L: return "example_L";
    case SourceKind::cut_project_1d: return "cut_project_1d";
    case SourceKind::substitution_1d: return "substitution_1d";
  }
  return "unknown";
}

std::vector<Point> PointSource::enumerate(const Region& E) const {
  std::vector<Point> out;
  if (E.empty()) return out;
  require(E.dim() == dim(), ErrorKind::dimension_mismatch,
          "region of dimension " + std::to_string(E.dim()) + " for a source of dimension " + std::to_string(dim()));
  if (dim() == 1) {
    for (const auto& b : E.boxes())
      for (auto& x : points_in(b.lo()[0], b.hi()[0])) out.push_back(Point{std::move(x)});
    return out;
  }
  for (const auto& b : E.boxes()) {
    auto pts = enumerate_box(b);
    out.insert(out.end(), std::make_move_iterator(pts.begin()), std::make_move_iterator(pts.end()));
  }
  if (E.size() > 1) std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::size_t PointSource::count_in(const Region& E) const {
  if (E.empty()) return 0;
  require(E.dim() == dim(), ErrorKind::dimension_mismatch,
          "region of dimension " + std::to_string(E.dim()) + " for a source of dimension " + std::to_string(dim()));
  std::size_t n = 0;
  for (const auto& b : E.boxes()) n += dim() == 1 ? count_between(b.lo()[0], b.hi()[0]) : count_box(b);
  return n;
}

std::vector<Scalar> PointSource::points_in(const Scalar& lo, const Scalar& hi) const {
  require(dim() == 1, ErrorKind::dimension_mismatch, "points_in is 1D only");
  std::vector<Scalar> out;
  if (hi < lo) return out;
  for (auto& p : enumerate_box(Box::interval(lo, hi))) out.push_back(std::move(p[0]));
  return out;
}

std::size_t PointSource::count_between(const Scalar& lo, const Scalar& hi) const {
  return points_in(lo, hi).size();
}

std::vector<Point> PointSource::enumerate_box(const Box& B) const {
  require(dim() == 1, ErrorKind::internal, "enumerate_box not implemented for this source");
  std::vector<Point> out;
  for (auto& x : points_in(B.lo()[0], B.hi()[0])) out.push_back(Point{std::move(x)});
  return out;
}

std::size_t PointSource::count_box(const Box& B) const { return enumerate_box(B).size(); }

SourcePtr make_lattice(std::vector<Point> basis, Point offset) {
  return std::make_shared<LatticeSource>(std::move(basis), std::move(offset), std::vector<Point>{}, false);
}

SourcePtr make_integer_lattice(const Scalar& spacing, const Scalar& offset) {
  require(spacing.sign() > 0, ErrorKind::invalid_parameter, "spacing must be positive");
  return make_lattice({Point{spacing}}, Point{offset});
}

SourcePtr make_square_lattice(std::size_t d, const Scalar& spacing) {
  require(d >= 1 && spacing.sign() > 0, ErrorKind::invalid_parameter, "bad square lattice");
  std::vector<Point> basis(d, Point(d, Scalar(0)));
  for (std::size_t k = 0; k < d; ++k) basis[k][k] = spacing;
  return make_lattice(std::move(basis), Point(d, Scalar(0)));
}

SourcePtr make_periodic(std::vector<Point> basis, Point offset, std::vector<Point> motif) {
  require(!motif.empty(), ErrorKind::invalid_parameter, "periodic source needs a motif");
  return std::make_shared<LatticeSource>(std::move(basis), std::move(offset), std::move(motif), true);
}

SourcePtr make_example_l() { return std::make_shared<ExampleLSource>(); }

SourcePtr make_cut_project(const Scalar& window_lo, const Scalar& window_hi) {
  return std::make_shared<CutProjectSource>(window_lo, window_hi, "", std::nullopt);
}

SourcePtr make_fibonacci() {
  DeloneParams p;
  p.r_exact = Scalar::fraction(1, 2);
  p.R_exact = Scalar::phi() / Scalar(2);
  p.r = 0.5;
  p.R = p.R_exact->to_double();
  return std::make_shared<CutProjectSource>(Scalar(-1), Scalar::phi() - Scalar(1), "fib", p);
}

SourcePtr make_half_fibonacci(bool left) {
  // Half windows have gaps phi, phi^2, phi^3.
  Scalar lo(-1), hi = Scalar::phi() - Scalar(1);
  Scalar mid = midpoint(lo, hi);
  DeloneParams p;
  p.r_exact = Scalar::phi() / Scalar(2);
  p.R_exact = pow(Scalar::phi(), 3) / Scalar(2);
  p.r = p.r_exact->to_double();
  p.R = p.R_exact->to_double();
  if (left) return std::make_shared<CutProjectSource>(lo, mid, "halffib", p);
  return std::make_shared<CutProjectSource>(mid, hi, "halffib:half=right", p);
}

SourcePtr make_substitution(const SubstitutionRule& rule) {
  return std::make_shared<SubstitutionSource>(rule, "sub:custom");
}

SourcePtr make_fibonacci_substitution(unsigned depth) {
  SubstitutionRule rule;
  rule.images = {{'a', "ab"}, {'b', "a"}};
  rule.lengths = {{'a', Scalar::phi()}, {'b', Scalar(1)}};
  rule.seed = 'a';
  rule.depth = depth;
  return std::make_shared<SubstitutionSource>(rule, "sub:depth=" + std::to_string(depth));
}

SourcePtr parse_source(std::string_view spec) {
  std::string name(spec.substr(0, spec.find(':')));
  std::map<std::string, std::string> kv;
  if (auto colon = spec.find(':'); colon != std::string_view::npos) {
    for (const auto& item : split(spec.substr(colon + 1), ',')) {
      auto eq = item.find('=');
      require(eq != std::string::npos, ErrorKind::parse_error, "expected key=value in source spec '" + std::string(spec) + "'");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  auto take = [&](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  SourcePtr out;
  if (name == "latticeZ" || name == "Z") {
    out = make_integer_lattice(Scalar::parse(take("spacing", "1")), Scalar::parse(take("offset", "0")));
  } else if (name.rfind("latticeZ", 0) == 0 && name.size() > 8) {
    std::size_t d = std::stoul(name.substr(8));
    out = make_square_lattice(d, Scalar::parse(take("spacing", "1")));
  } else if (name == "lattice" || name == "periodic") {
    auto basis = parse_points(take("basis", ""));
    auto offset = parse_point(take("offset", ""));
    if (offset.empty()) offset.assign(basis.size(), Scalar(0));
    if (name == "lattice") out = make_lattice(std::move(basis), std::move(offset));
    else out = make_periodic(std::move(basis), std::move(offset), parse_points(take("motif", "")));
  } else if (name == "exampleL" || name == "L") {
    out = make_example_l();
  } else if (name == "fib") {
    out = make_fibonacci();
  } else if (name == "halffib") {
    std::string half = take("half", "left");
    require(half == "left" || half == "right", ErrorKind::parse_error, "half must be left or right");
    out = make_half_fibonacci(half == "left");
  } else if (name == "cp") {
    out = make_cut_project(Scalar::parse(take("lo", "-1")), Scalar::parse(take("hi", "-1+1/2+1/2*sqrt5")));
  } else if (name == "sub") {
    out = make_fibonacci_substitution(static_cast<unsigned>(std::stoul(take("depth", "24"))));
  } else {
    fail(ErrorKind::parse_error, "unknown source '" + name + "'");
  }
  require(kv.empty(), ErrorKind::parse_error, "unknown parameter '" + (kv.empty() ? "" : kv.begin()->first) + "' for source " + name);
  return out;
}

std::vector<Point> enumerate(const PointSource& S, const Region& E) { return S.enumerate(E); }
std::size_t count_in(const PointSource& S, const Region& E) { return S.count_in(E); }

DeloneEstimate estimate_delone_params(const PointSource& S, const Region& window) {
  DeloneEstimate est;
  if (S.dim() == 1) {
    std::vector<Scalar> pts;
    for (const auto& b : window.boxes()) {
      auto part = S.points_in(b.lo()[0], b.hi()[0]);
      pts.insert(pts.end(), part.begin(), part.end());
    }
    est.points = pts.size();
    require(pts.size() >= 3, ErrorKind::insufficient_data, "window holds fewer than 3 points");
    Scalar gmin = pts[1] - pts[0], gmax = gmin;
    for (std::size_t i = 2; i < pts.size(); ++i) {
      Scalar g = pts[i] - pts[i - 1];
      if (g < gmin) gmin = g;
      if (g > gmax) gmax = g;
    }
    est.r_exact = gmin / Scalar(2);
    est.R_exact = gmax / Scalar(2);
    est.r = est.r_exact->to_double();
    est.R = est.R_exact->to_double();
    return est;
  }
  auto pts = S.enumerate(window);
  est.points = pts.size();
  require(pts.size() >= 2, ErrorKind::insufficient_data, "window holds fewer than 2 points");
  const std::size_t d = S.dim();
  std::vector<std::vector<double>> xs;
  for (const auto& p : pts) {
    std::vector<double> v;
    for (const auto& c : p) v.push_back(c.to_double());
    xs.push_back(std::move(v));
  }
  Scalar best_sq;
  bool have = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double dd = 0;
      for (std::size_t k = 0; k < d; ++k) dd += (xs[i][k] - xs[j][k]) * (xs[i][k] - xs[j][k]);
      if (have && dd > best_sq.to_double() * (1 + 1e-9)) continue;
      Scalar sq(0);
      for (std::size_t k = 0; k < d; ++k) sq += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      if (!have || sq < best_sq) best_sq = sq;
      have = true;
    }
  }
  est.r = 0.5 * std::sqrt(best_sq.to_double());
  // covering radius probed on a grid inside the window
  Box bb = window.bounding_box();
  const std::size_t per_axis = d == 2 ? 64 : 16;
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= per_axis;
  std::vector<double> x(d);
  double worst = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    Point probe(d);
    for (std::size_t k = 0; k < d; ++k) {
      double lo = bb.lo()[k].to_double(), hi = bb.hi()[k].to_double();
      x[k] = lo + (static_cast<double>(rem % per_axis) + 0.5) * (hi - lo) / per_axis;
      rem /= per_axis;
    }
    double nearest = INFINITY;
    for (const auto& p : xs) {
      double dd = 0;
      for (std::size_t k = 0; k < d; ++k) dd += (p[k] - x[k]) * (p[k] - x[k]);
      nearest = std::min(nearest, dd);
    }
    // only probes whose nearest-point ball stays inside the window count
    double margin = INFINITY;
    for (std::size_t k = 0; k < d; ++k)
      margin = std::min({margin, x[k] - bb.lo()[k].to_double(), bb.hi()[k].to_double() - x[k]});
    if (std::sqrt(nearest) <= margin) worst = std::max(worst, std::sqrt(nearest));
  }
  est.R = worst;
  return est;
}

DensityResult density(const PointSource& S, std::span<const Region> sequence, const DensityOptions& opts) {
  require(!sequence.empty(), ErrorKind::invalid_parameter, "density needs a nonempty region sequence");
  DensityDescriptor dd = S.density();
  bool analytic = dd.exact && !dd.empirical_closed_form;
  if (!analytic) {
    auto vh = van_hove_check(sequence, {Scalar(1)}, opts.van_hove_threshold);
    require(vh.pass, ErrorKind::invalid_parameter, "density sequence is not van Hove: " + vh.reason);
  }
  DensityResult res;
  for (const auto& A : sequence) {
    Scalar mu = measure(A);
    require(mu.sign() > 0, ErrorKind::invalid_parameter, "density sequence has a null region");
    Scalar ratio = Scalar(static_cast<long long>(S.count_in(A))) / mu;
    res.ratios.push_back(ratio.to_double());
    res.ratios_exact.push_back(ratio);
  }
  double last = res.ratios.back();
  for (std::size_t i = res.ratios.size() / 2; i < res.ratios.size(); ++i)
    res.tail_spread = std::max(res.tail_spread, std::fabs(res.ratios[i] - last));
  res.analytic = analytic;
  if (analytic) {
    res.exact = dd.exact;
    res.value = dd.exact->to_double();
  } else {
    res.exact = dd.exact;
    res.value = last;
  }
  return res;
}

}  // namespace aperiodica
