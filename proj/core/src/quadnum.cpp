#include "triplel/quadnum.hpp"

namespace triplel {

QuadNum::QuadNum(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ < 1) throw PreconditionError("QuadNum: only real quadratic fields are supported");
  normalize();
}

void QuadNum::normalize() {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
}

long QuadNum::unify(const QuadNum& o) const {
  if (b_ == 0) return o.b_ == 0 ? std::max(d_, o.d_) : o.d_;
  if (o.b_ == 0) return d_;
  if (d_ != o.d_) throw ConsistencyError("QuadNum: incompatible quadratic fields");
  return d_;
}

QuadNum& QuadNum::operator+=(const QuadNum& o) {
  d_ = unify(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& o) {
  d_ = unify(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadNum& QuadNum::operator*=(const QuadNum& o) {
  long d = unify(o);
  Rational na = a_ * o.a_ + Rational(d) * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = na;
  b_ = nb;
  d_ = d;
  return *this;
}

QuadNum& QuadNum::operator/=(const QuadNum& o) {
  if (o.is_zero()) throw std::domain_error("QuadNum: division by zero");
  long d = unify(o);
  QuadNum oc(o.a_, -o.b_, d);
  Rational n = o.a_ * o.a_ - Rational(d) * o.b_ * o.b_;
  d_ = d;
  *this *= oc;
  a_ /= n;
  b_ /= n;
  return *this;
}

double QuadNum::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

int QuadNum::sign() const {
  // sign(a + b sqrt d) decided exactly by comparing squares.
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Rational lhs = a_ * a_;
  Rational rhs = Rational(d_) * b_ * b_;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

std::string QuadNum::str() const {
  if (b_ == 0) return a_.get_str();
  std::string s = a_.get_str();
  s += (b_ > 0 ? "+" : "-");
  Rational ab = abs(b_);
  s += ab.get_str() + "*sqrt(" + std::to_string(d_) + ")";
  return s;
}

}  // namespace triplel
