#include <doctest.h>

#include "triplel/arith.hpp"
#include "triplel/matrix.hpp"
#include "triplel/quadnum.hpp"

using namespace triplel;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("5/12") == Rational(5, 12));
  CHECK(parse_rational(" -3 ") == Rational(-3));
  CHECK(parse_rational("10/4") == Rational(5, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), PreconditionError);
  CHECK_THROWS_AS(parse_rational("x"), PreconditionError);
}

TEST_CASE("prime helpers") {
  CHECK(prime_factors(60) == std::vector<std::int64_t>{2, 3, 5});
  CHECK(is_squarefree(33));
  CHECK_FALSE(is_squarefree(12));
  CHECK(omega(30) == 3);
  CHECK(valuation(Rational(12, 5), 2) == 2);
  CHECK(valuation(Rational(12, 5), 5) == -1);
  CHECK(rational_gcd(Rational(3, 2), Rational(9, 4)) == Rational(3, 4));
}

TEST_CASE("quadratic field arithmetic") {
  QuadNum s(0, 1, 3);
  CHECK(s * s == QuadNum(3));
  QuadNum x(1, 2, 3);
  CHECK(x * x.conj() == QuadNum(x.norm()));
  CHECK(x / x == QuadNum(1));
  CHECK(QuadNum(1, -1, 2).sign() == -1);
  CHECK(QuadNum(2, -1, 3).sign() == 1);
  CHECK_THROWS_AS(QuadNum(0, 1, 2) + QuadNum(0, 1, 3), ConsistencyError);
  CHECK(doctest::Approx(QuadNum(1, 1, 2).to_double()) == 1 + std::sqrt(2.0));
}

TEST_CASE("exact matrices") {
  QMatrix m(3, 3);
  int v[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v[i][j];
  CHECK(determinant(m) == 18);
  CHECK(m * inverse(m) == QMatrix::identity(3));
  auto cp = charpoly(m);
  // det(xI - m) = x^3 - 9x^2 + 24x - 18
  CHECK(cp == std::vector<Rational>{-18, 24, -9, 1});
  QMatrix r(2, 3);
  r(0, 0) = 1; r(0, 1) = 2; r(0, 2) = 3;
  r(1, 0) = 2; r(1, 1) = 4; r(1, 2) = 6;
  auto ns = nullspace(r);
  CHECK(ns.size() == 2);
  for (const auto& n : ns) CHECK((r * n) == std::vector<Rational>{0, 0});
}
