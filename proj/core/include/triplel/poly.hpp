#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include "triplel/arith.hpp"
#include "triplel/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace triplel {

class MPoly {
 public:
  using Exponent = std::vector<int>;

  explicit MPoly(int nvars = 0) : nvars_(nvars) {}
  static MPoly constant(int nvars, const Rational& c);
  static MPoly variable(int nvars, int k);
  static MPoly monomial(const Exponent& e, const Rational& c = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous(int d) const;
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  Rational coeff(const Exponent& e) const;
  void add_term(const Exponent& e, const Rational& c);

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly x, const MPoly& y) { return x += y; }
  friend MPoly operator-(MPoly x, const MPoly& y) { return x -= y; }
  friend MPoly operator*(const MPoly& x, const MPoly& y);
  friend MPoly operator*(const Rational& s, const MPoly& x);
  friend bool operator==(const MPoly& x, const MPoly& y) { return x.nvars_ == y.nvars_ && x.terms_ == y.terms_; }
  friend bool operator!=(const MPoly& x, const MPoly& y) { return !(x == y); }

  MPoly pow(int e) const;
  MPoly derivative(int k) const;
  Rational evaluate(const std::vector<Rational>& x) const;
  /// P(M x): variable k is replaced by sum_l M(k, l) x_l.
  MPoly linear_substitute(const QMatrix& m) const;
  /// Exact quotient by d; throws ConsistencyError if d does not divide.
  /// d must have a nonzero coefficient at its pure power of variable 0.
  MPoly divide_exact(const MPoly& d) const;

  std::string str() const;

 private:
  int nvars_;
  std::map<Exponent, Rational> terms_;
};

}  // namespace triplel
