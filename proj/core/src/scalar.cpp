#include "aperiodica/scalar.hpp"

#include "aperiodica/error.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace aperiodica {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;

int sgn(const Rational& r) { return r.sign(); }

Integer floor_rational(const Rational& r) {
  Integer n = boost::multiprecision::numerator(r);
  Integer d = boost::multiprecision::denominator(r);
  Integer q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

std::string rational_str(const Rational& r) {
  Integer d = boost::multiprecision::denominator(r);
  if (d == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + d.str();
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Scalar run() {
    Rational p(0), q(0);
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        error("expected '+' or '-'");
      }
      auto [value, irrational] = term();
      if (irrational) {
        q += sign * value.sqrt5_part();
        p += sign * value.rational_part();
      } else {
        p += sign * value.rational_part();
      }
      first = false;
      skip();
    }
    if (first) error("empty number");
    return Scalar(p, q);
  }

 private:
  std::pair<Scalar, bool> term() {
    if (match("sqrt5")) return {Scalar::sqrt5(), true};
    if (match("phi")) return {Scalar::phi(), true};
    Rational r = number();
    skip();
    if (pos_ < s_.size() && peek() == '*') {
      ++pos_;
      skip();
      if (match("sqrt5")) return {Scalar(Rational(0), r), true};
      if (match("phi")) return {Scalar(r / 2, r / 2), true};
      error("expected sqrt5 or phi after '*'");
    }
    return {Scalar(r), false};
  }

  Rational number() {
    Integer whole = digits();
    Rational value(whole);
    if (pos_ < s_.size() && peek() == '.') {
      ++pos_;
      std::size_t start = pos_;
      Integer frac = digits(true);
      Integer scale = 1;
      for (std::size_t i = start; i < pos_; ++i) scale *= 10;
      value += Rational(frac, scale);
    }
    if (pos_ < s_.size() && peek() == '/') {
      ++pos_;
      Integer den = digits();
      if (den == 0) error("zero denominator");
      value /= Rational(den);
    }
    return value;
  }

  Integer digits(bool allow_empty = false) {
    std::size_t start = pos_;
    Integer v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start && !allow_empty) error("expected digits");
    return v;
  }

  bool match(std::string_view word) {
    if (s_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  char peek() const { return s_[pos_]; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::parse_error,
         "bad number '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::fraction(long long num, long long den) {
  require(den != 0, ErrorKind::invalid_parameter, "zero denominator");
  return Scalar(Rational(num, den));
}

Scalar Scalar::parse(std::string_view text) { return Parser(text).run(); }

int Scalar::sign() const {
  int sp = sgn(p_), sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  Rational lhs = p_ * p_;
  Rational rhs = 5 * q_ * q_;
  return lhs > rhs ? sp : sq;
}

Integer Scalar::floor() const {
  if (is_rational()) return floor_rational(p_);
  double approx = to_double();
  Integer k;
  if (std::isfinite(approx) && std::fabs(approx) < 1e15) {
    k = Integer(static_cast<long long>(std::floor(approx)));
  } else {
    // floor(p) + floor(q*sqrt5) is within 1 of the answer.
    Integer qs = boost::multiprecision::sqrt(
        floor_rational(5 * q_ * q_ * 4));  // floor(2|q|sqrt5) up to rounding
    k = floor_rational(p_) + (q_ > 0 ? Integer(qs / 2) : Integer(-(qs / 2) - 1));
  }
  while (Scalar(k) > *this) --k;
  while (Scalar(k + 1) <= *this) ++k;
  return k;
}

Integer Scalar::ceil() const {
  Integer f = floor();
  return Scalar(f) == *this ? f : f + 1;
}

double Scalar::to_double() const {
  double a = p_.convert_to<double>();
  if (q_ == 0) return a;
  return a + q_.convert_to<double>() * kSqrt5;
}

std::string Scalar::str() const {
  if (q_ == 0) return rational_str(p_);
  std::string out = rational_str(p_);
  out += q_ < 0 ? "-" : "+";
  Rational aq = q_ < 0 ? Rational(-q_) : q_;
  out += rational_str(aq);
  out += "*sqrt5";
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  p_ += o.p_;
  q_ += o.q_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  p_ -= o.p_;
  q_ -= o.q_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (q_ == 0 && o.q_ == 0) {
    p_ *= o.p_;
    return *this;
  }
  Rational np = p_ * o.p_ + 5 * q_ * o.q_;
  Rational nq = p_ * o.q_ + q_ * o.p_;
  p_ = std::move(np);
  q_ = std::move(nq);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require(!o.is_zero(), ErrorKind::invalid_parameter, "division by zero");
  if (o.q_ == 0) {
    p_ /= o.p_;
    q_ /= o.p_;
    return *this;
  }
  Rational n = o.norm();
  *this *= o.conjugate();
  p_ /= n;
  q_ /= n;
  return *this;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  int s;
  if (a.q_ == b.q_) {
    s = a.p_ == b.p_ ? 0 : (a.p_ < b.p_ ? -1 : 1);
  } else {
    s = (a - b).sign();
  }
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar pow(const Scalar& x, unsigned k) {
  Scalar out(1);
  for (unsigned i = 0; i < k; ++i) out *= x;
  return out;
}

Scalar midpoint(const Scalar& a, const Scalar& b) { return (a + b) / Scalar(2); }

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

Rational rational_from_double(double v) {
  require(std::isfinite(v), ErrorKind::invalid_parameter, "non-finite value");
  int exp = 0;
  double m = std::frexp(v, &exp);
  auto mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rational r(mant);
  Integer two = 1;
  if (exp > 0) {
    two <<= exp;
    r *= Rational(two);
  } else if (exp < 0) {
    two <<= -exp;
    r /= Rational(two);
  }
  return r;
}

}  // namespace aperiodica
