#include <doctest.h>

#include "triplel/enumerate.hpp"
#include "triplel/quat.hpp"

#include <random>

using namespace triplel;

namespace {

// Primitive solution of z^2 = a x^2 + b y^2 modulo a high enough power of p.
int hilbert_bruteforce(long a, long b, long p) {
  long mod = p == 2 ? 32 : p * p * p;
  for (long x = 0; x < mod; ++x)
    for (long y = 0; y < mod; ++y)
      for (long z = 0; z < mod; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        long lhs = (z * z) % mod;
        long rhs = ((a * x * x + b * y * y) % mod + mod) % mod;
        if (lhs == rhs) return 1;
      }
  return -1;
}

QuatElement random_element(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 6);
  QuatElement x;
  for (auto& c : x.c) c = make_rational(num(rng), den(rng));
  return x;
}

}  // namespace

TEST_CASE("hilbert symbol agrees with local solvability") {
  CHECK(hilbert_symbol(-1, -1, 2) == -1);
  CHECK(hilbert_symbol(-1, -1, 3) == 1);
  CHECK(hilbert_symbol(-1, -1, 0) == -1);
  for (long a : {-1, -2, -3, -5, -6, 2, 3, 5, 7, -7, -11})
    for (long b : {-1, -2, -3, -5, -11, 3, 6, 7})
      for (long p : {2, 3, 5, 7})
        CHECK_MESSAGE(hilbert_symbol(a, b, p) == hilbert_bruteforce(a, b, p), a, " ", b, " ", p);
}

TEST_CASE("hilbert product formula") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-60, 60);
  for (int t = 0; t < 100; ++t) {
    long a = d(rng), b = d(rng);
    if (a == 0 || b == 0) continue;
    int prod = hilbert_symbol(a, b, 0);
    for (auto p : primes_up_to(61))
      if ((2 * a * b) % p == 0) prod *= hilbert_symbol(a, b, p);
    CHECK(prod == 1);
    CHECK(hilbert_symbol(1, b, 3) == 1);
  }
}

TEST_CASE("algebra presentations") {
  auto d2 = make_algebra(2);
  CHECK(d2->a_coef() == -1);
  CHECK(d2->b_coef() == -1);
  CHECK(d2->ramified_finite() == std::vector<std::int64_t>{2});
  auto d11 = make_algebra(11);
  CHECK(d11->a_coef() == -1);
  CHECK(d11->b_coef() == -11);
  CHECK(make_algebra(30)->ramified_finite() == std::vector<std::int64_t>{2, 3, 5});
  CHECK_THROWS_AS(make_algebra(6), PreconditionError);
  CHECK_THROWS_AS(make_algebra(12), PreconditionError);
}

TEST_CASE("reduced norm is multiplicative") {
  auto alg = make_algebra(11);
  std::mt19937 rng(1);
  for (int t = 0; t < 10000; ++t) {
    auto x = random_element(rng), y = random_element(rng);
    CHECK(alg->nrd(alg->mul(x, y)) == alg->nrd(x) * alg->nrd(y));
    CHECK(x.conj().conj() == x);
    CHECK(alg->mul(x, x.conj()) == QuatElement::scalar(alg->nrd(x)));
  }
}

TEST_CASE("gram matrices") {
  auto alg = make_algebra(2);
  QuatLattice std_order = standard_order(alg);
  CHECK(gram_matrix(std_order) == QMatrix::identity(4));
  CHECK(gram_matrix(std_order.with_scale(3)) == Rational(3) * QMatrix::identity(4));
  QuatLattice hurwitz(alg, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}});
  CHECK(determinant(gram_matrix(hurwitz)) == Rational(1, 4));
  CHECK(is_order(hurwitz));
  CHECK(order_discriminant(hurwitz) == 2);
  CHECK(order_discriminant(std_order) == 4);
}

TEST_CASE("short vectors") {
  auto id = QMatrix::identity(4);
  auto sv = short_vectors(id, 1);
  CHECK(sv.size() == 9);
  CHECK(short_vectors(id, 0).size() == 1);
  auto alg = make_algebra(2);
  QuatLattice hurwitz(alg, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}});
  auto g = gram_matrix(hurwitz);
  auto hv = short_vectors(g, 3);
  int n1 = 0, n3 = 0;
  for (const auto& v : hv) {
    n1 += v.value == 1;
    n3 += v.value == 3;
  }
  CHECK(n1 == 24);
  CHECK(n3 == 96);

  // Counts are invariant under unimodular basis changes.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(-2, 2);
  for (int t = 0; t < 20; ++t) {
    QMatrix u = QMatrix::identity(4);
    for (int s = 0; s < 6; ++s) {
      int i = rng() % 4, j = rng() % 4;
      if (i == j) continue;
      int f = e(rng);
      for (int c = 0; c < 4; ++c) u(i, c) += f * u(j, c);
    }
    auto g2 = u * g * u.transpose();
    int m1 = 0, m3 = 0;
    for (const auto& v : short_vectors(g2, 3)) {
      m1 += v.value == 1;
      m3 += v.value == 3;
    }
    CHECK(m1 == 24);
    CHECK(m3 == 96);
  }
  QMatrix bad = QMatrix::identity(2);
  bad(1, 1) = -1;
  CHECK_THROWS_AS(short_vectors(bad, 1), PreconditionError);
}

TEST_CASE("lattice operations and isometry") {
  auto alg = make_algebra(2);
  QuatLattice o(alg, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}});
  CHECK(left_order(o) == o);
  CHECK(right_order(o) == o);
  CHECK(o.norm() == 1);
  QuatElement g{1, 1, 0, 0};
  QuatLattice l1 = left_multiply(g, o);
  CHECK(l1.norm() == 2);
  auto gamma = lattice_isometry(l1, o);
  REQUIRE(gamma);
  CHECK(alg->nrd(*gamma) == 2);
  CHECK(left_multiply(*gamma, o) == l1);
  auto self = lattice_isometry(o, o);
  REQUIRE(self);
  CHECK(alg->nrd(*self) == 1);
  CHECK(intersect(o, standard_order(alg)) == standard_order(alg));
  CHECK(dual(dual(o)) == o);
  CHECK(multiplicative_closure(standard_order(alg)) == standard_order(alg));
}
