#pragma once

// Factoring characteristic polynomials into linear and quadratic factors
// over Q, guided by numerically computed roots and confirmed exactly.

#include "triplel/arith.hpp"
#include "triplel/quadnum.hpp"

#include <array>
#include <complex>
#include <vector>

namespace triplel {

/// Coefficients low to high.
using RationalPoly = std::vector<Rational>;

Rational poly_eval(const RationalPoly& f, const Rational& x);
/// Quotient of f by g; throws ConsistencyError if the remainder is nonzero.
RationalPoly poly_divide_exact(const RationalPoly& f, const RationalPoly& g);
std::vector<std::complex<double>> numeric_roots(const RationalPoly& f);

struct PolyFactorization {
  std::vector<Rational> linear_roots;                // factors x - r
  std::vector<std::array<Rational, 2>> quadratics;   // irreducible x^2 + u x + v
  RationalPoly remainder{Rational(1)};               // monic, no factor found
};

/// Extracts all linear and quadratic factors of a monic polynomial whose
/// roots are algebraic integers of moderate size.
PolyFactorization factor_low_degree(const RationalPoly& monic);

/// The two roots of x^2 + u x + v as elements of Q(sqrt d), larger first.
std::array<QuadNum, 2> quadratic_roots(const Rational& u, const Rational& v);

/// Squarefree part of a nonzero integer (sign kept).
Integer squarefree_part(const Integer& n);

}  // namespace triplel
