#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace aperiodica {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                              boost::multiprecision::et_off>;

// Exact element p + q*sqrt5 of Q(sqrt5). Every coordinate, length and
// threshold that the library compares exactly is a Scalar.
class Scalar {
 public:
  Scalar() = default;
  template <std::integral T>
  Scalar(T v) : p_(static_cast<long long>(v)) {}  // NOLINT: implicit on purpose
  Scalar(const Integer& v) : p_(v) {}             // NOLINT
  Scalar(Rational p, Rational q = Rational(0)) : p_(std::move(p)), q_(std::move(q)) {}  // NOLINT

  static Scalar fraction(long long num, long long den);
  static Scalar sqrt5() { return Scalar(Rational(0), Rational(1)); }
  static Scalar phi() { return Scalar(Rational(1, 2), Rational(1, 2)); }
  static Scalar phi_conjugate() { return Scalar(Rational(1, 2), Rational(-1, 2)); }

  // Accepts p/q, p/q+r/s*sqrt5, decimals, bare sqrt5 and phi.
  static Scalar parse(std::string_view text);

  const Rational& rational_part() const { return p_; }
  const Rational& sqrt5_part() const { return q_; }

  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }
  int sign() const;
  Scalar conjugate() const { return Scalar(p_, -q_); }
  Rational norm() const { return p_ * p_ - 5 * q_ * q_; }

  Integer floor() const;
  Integer ceil() const;
  double to_double() const;
  std::string str() const;

  Scalar operator-() const { return Scalar(-p_, -q_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  Rational p_{0};
  Rational q_{0};
};

Scalar abs(const Scalar& x);
Scalar pow(const Scalar& x, unsigned k);
Scalar midpoint(const Scalar& a, const Scalar& b);
std::ostream& operator<<(std::ostream& os, const Scalar& x);

// Rational approximation of a double, exact for dyadic inputs.
Rational rational_from_double(double v);

}  // namespace aperiodica
