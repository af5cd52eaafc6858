#pragma once

// Elements of Q or a real quadratic field Q(sqrt d), exact.

#include "triplel/arith.hpp"

#include <cmath>
#include <string>

namespace triplel {

/// a + b*sqrt(d). `d == 1` means the element lies in Q (then b == 0).
/// Mixing two different d > 1 is an error; a rational operand adopts the
/// other operand's field.
class QuadNum {
 public:
  QuadNum() : a_(0), b_(0), d_(1) {}
  QuadNum(long v) : a_(v), b_(0), d_(1) {}  // NOLINT(google-explicit-constructor)
  QuadNum(const Rational& v) : a_(v), b_(0), d_(1) {}  // NOLINT(google-explicit-constructor)
  QuadNum(Rational a, Rational b, long d);

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt_part() const { return b_; }
  long field() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadNum conj() const { return QuadNum(a_, -b_, d_); }
  /// Field norm a^2 - d b^2.
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
  double to_double() const;
  int sign() const;

  QuadNum operator-() const { return QuadNum(-a_, -b_, d_); }
  QuadNum& operator+=(const QuadNum& o);
  QuadNum& operator-=(const QuadNum& o);
  QuadNum& operator*=(const QuadNum& o);
  QuadNum& operator/=(const QuadNum& o);

  friend QuadNum operator+(QuadNum x, const QuadNum& y) { return x += y; }
  friend QuadNum operator-(QuadNum x, const QuadNum& y) { return x -= y; }
  friend QuadNum operator*(QuadNum x, const QuadNum& y) { return x *= y; }
  friend QuadNum operator/(QuadNum x, const QuadNum& y) { return x /= y; }
  friend bool operator==(const QuadNum& x, const QuadNum& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }
  friend bool operator!=(const QuadNum& x, const QuadNum& y) { return !(x == y); }
  friend bool operator<(const QuadNum& x, const QuadNum& y) { return (x - y).sign() < 0; }

  /// `a`, `a+b*sqrt(d)` with exact rationals.
  std::string str() const;

 private:
  long unify(const QuadNum& o) const;
  void normalize();

  Rational a_;
  Rational b_;
  long d_;
};

inline bool is_zero(const QuadNum& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return x == 0; }
inline double to_double(const QuadNum& x) { return x.to_double(); }
inline double to_double(const Rational& x) { return x.get_d(); }

/// Rational -> Rational, QuadNum or double.
template <class T>
inline T from_rational(const Rational& r) {
  return T(r);
}
template <>
inline double from_rational<double>(const Rational& r) {
  return r.get_d();
}

}  // namespace triplel
