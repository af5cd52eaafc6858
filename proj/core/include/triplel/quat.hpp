#pragma once

// Definite rational quaternion algebras, their elements and rank-4 lattices.

#include "triplel/arith.hpp"
#include "triplel/matrix.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace triplel {

/// Coordinates on the basis 1, i, j, k.
struct QuatElement {
  std::array<Rational, 4> c{Rational(0), Rational(0), Rational(0), Rational(0)};

  QuatElement() = default;
  QuatElement(Rational x0, Rational x1, Rational x2, Rational x3) : c{std::move(x0), std::move(x1), std::move(x2), std::move(x3)} {}
  static QuatElement scalar(const Rational& r) { return {r, 0, 0, 0}; }

  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
  QuatElement conj() const { return {c[0], -c[1], -c[2], -c[3]}; }
  Rational trd() const { return 2 * c[0]; }

  friend QuatElement operator+(const QuatElement& x, const QuatElement& y) {
    return {x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2], x.c[3] + y.c[3]};
  }
  friend QuatElement operator-(const QuatElement& x, const QuatElement& y) {
    return {x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2], x.c[3] - y.c[3]};
  }
  friend QuatElement operator*(const Rational& s, const QuatElement& x) {
    return {s * x.c[0], s * x.c[1], s * x.c[2], s * x.c[3]};
  }
  friend bool operator==(const QuatElement& x, const QuatElement& y) { return x.c == y.c; }
  friend bool operator!=(const QuatElement& x, const QuatElement& y) { return !(x == y); }
  friend bool operator<(const QuatElement& x, const QuatElement& y) { return x.c < y.c; }

  std::string str() const;
};

/// The algebra (a, b): i^2 = a, j^2 = b, ij = -ji = k.
class QuaternionAlgebra {
 public:
  QuaternionAlgebra(Rational a, Rational b);

  const Rational& a_coef() const { return a_; }
  const Rational& b_coef() const { return b_; }
  const std::vector<std::int64_t>& ramified_finite() const { return ramified_; }
  /// Product of the finite ramified primes.
  std::int64_t discriminant() const;

  QuatElement mul(const QuatElement& x, const QuatElement& y) const;
  Rational nrd(const QuatElement& x) const;
  QuatElement inverse(const QuatElement& x) const;

  /// Matrix of x -> conj(g) x g on the trace-zero coordinates (i, j, k);
  /// column c is the image of the c-th basis vector.
  QMatrix conjugation_matrix(const QuatElement& g) const;
  /// Diagonal of the norm form on trace-zero elements: (-a, -b, ab).
  QMatrix trace_zero_metric() const;

  friend bool operator==(const QuaternionAlgebra& x, const QuaternionAlgebra& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  Rational a_;
  Rational b_;
  std::vector<std::int64_t> ramified_;
};

using AlgebraPtr = std::shared_ptr<const QuaternionAlgebra>;

/// +1 / -1. `p == 0` denotes the infinite place.
int hilbert_symbol(const Rational& a, const Rational& b, std::int64_t p);

/// Definite algebra ramified exactly at the primes of `m1` (and infinity).
AlgebraPtr make_algebra(std::int64_t m1);

/// A full-rank lattice in the algebra, stored in canonical Hermite form so
/// equal lattices compare equal. `scale` multiplies the norm form.
class QuatLattice {
 public:
  QuatLattice() = default;
  /// Any spanning set; throws PreconditionError if the rank is below 4.
  QuatLattice(AlgebraPtr alg, const std::vector<QuatElement>& generators, Rational scale = 1);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::array<QuatElement, 4>& basis() const { return basis_; }
  const Rational& scale() const { return scale_; }
  QuatLattice with_scale(const Rational& s) const;

  /// Coordinates of x in the basis, or nullopt if x is not in the lattice.
  std::optional<std::array<Integer, 4>> coordinates(const QuatElement& x) const;
  bool contains(const QuatElement& x) const { return coordinates(x).has_value(); }
  bool contains(const QuatLattice& other) const;

  /// Covolume relative to Z<1,i,j,k> (determinant of the basis matrix).
  Rational covolume() const;
  /// gcd of nrd over the lattice (scale not applied).
  Rational norm() const;

  friend bool operator==(const QuatLattice& x, const QuatLattice& y) { return x.basis_ == y.basis_; }
  friend bool operator!=(const QuatLattice& x, const QuatLattice& y) { return !(x == y); }

  std::string str() const;

 private:
  AlgebraPtr alg_;
  std::array<QuatElement, 4> basis_;
  Rational scale_ = 1;
};

QuatLattice operator+(const QuatLattice& x, const QuatLattice& y);
/// Lattice spanned by all products x*y.
QuatLattice operator*(const QuatLattice& x, const QuatLattice& y);
QuatLattice left_multiply(const QuatElement& g, const QuatLattice& l);
QuatLattice right_multiply(const QuatLattice& l, const QuatElement& g);
QuatLattice scaled(const Rational& s, const QuatLattice& l);
QuatLattice conjugate(const QuatLattice& l);
/// Dual lattice with respect to trd(x * conj(y)).
QuatLattice dual(const QuatLattice& l);
QuatLattice intersect(const QuatLattice& x, const QuatLattice& y);
QuatLattice left_order(const QuatLattice& l);
QuatLattice right_order(const QuatLattice& l);
/// Z<1,i,j,k>.
QuatLattice standard_order(const AlgebraPtr& alg);
/// Smallest multiplicatively closed lattice containing l and 1.
QuatLattice multiplicative_closure(const QuatLattice& l);
/// Every element has integral reduced trace and norm, and the lattice is a ring.
bool is_order(const QuatLattice& l);
/// Reduced discriminant of an order: sqrt(det of the trd(b_i conj(b_j)) Gram).
Integer order_discriminant(const QuatLattice& order);

/// Entry (i,j) = scale * trd(b_i conj(b_j)) / 2.
QMatrix gram_matrix(const QuatLattice& l);
/// Gram matrix of an explicit basis (scale 1).
QMatrix gram_matrix(const QuaternionAlgebra& alg, const std::array<QuatElement, 4>& basis);

/// LLL-reduced basis of the lattice (delta = 3/4) for the norm form.
std::array<QuatElement, 4> reduced_basis(const QuatLattice& l);

/// gamma with gamma * l2 == l1, if the lattices are left-equivalent. Requires
/// l2 to be an invertible ideal of its left order (true for Eichler orders).
std::optional<QuatElement> lattice_isometry(const QuatLattice& l1, const QuatLattice& l2);

}  // namespace triplel
