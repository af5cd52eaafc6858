#include <doctest.h>

#include "triplel/harmonics.hpp"

#include <random>

using namespace triplel;

namespace {

MPoly x(int k) { return MPoly::variable(3, k); }

Rational rnd(std::mt19937& rng) {
  std::uniform_int_distribution<long> n(-7, 7), d(1, 4);
  return make_rational(n(rng), d(rng));
}

MPoly random_harmonic(const HarmonicSpace& u, std::mt19937& rng) {
  std::vector<Rational> c(u.dim());
  for (auto& v : c) v = rnd(rng);
  return u.element(c);
}

QuatElement random_gamma(std::mt19937& rng) {
  while (true) {
    QuatElement g{rnd(rng), rnd(rng), rnd(rng), rnd(rng)};
    if (!g.is_zero()) return g;
  }
}

}  // namespace

TEST_CASE("gegenbauer") {
  CHECK(gegenbauer_1d(0, Rational(3, 7)) == 1);
  CHECK(gegenbauer_1d(1, Rational(3, 7)) == Rational(6, 7));
  CHECK(gegenbauer_1d(2, Rational(1, 3)) == Rational(4, 9) - 1);
  CHECK(gegenbauer_1d(3, Rational(1, 2)) == -1);  // U_3(cos 60 deg) = sin(240) / sin(60)
}

TEST_CASE("inner product and projection basics") {
  CHECK(inner_product(x(0), x(0)) == 1);
  CHECK(inner_product(x(0), x(1)) == 0);
  MPoly x1sq = x(0) * x(0);
  CHECK(harmonic_project(x1sq, 2) == x1sq - Rational(1, 3) * radius_squared());
  CHECK(harmonic_project(radius_squared(), 2).is_zero());
  CHECK(harmonic_project(radius_squared(), 0) == MPoly::constant(3, 1));
  MPoly h = x(0) * x(1);
  CHECK(harmonic_project(h, 2) == h);
  CHECK_THROWS_AS(harmonic_project(x1sq, 1), PreconditionError);
  CHECK(reproducing_kernel(0, {1, 2, 3}) == MPoly::constant(3, 1));
  CHECK(reproducing_kernel(1, {1, 2, 3}) == x(0) + Rational(2) * x(1) + Rational(3) * x(2));
}

TEST_CASE("reproducing kernel property, nu <= 4") {
  std::mt19937 rng(11);
  for (const QMatrix& metric : {QMatrix::identity(3), make_algebra(11)->trace_zero_metric()}) {
    for (int nu = 0; nu <= 4; ++nu) {
      HarmonicSpace u(nu, metric);
      CHECK(u.dim() == static_cast<std::size_t>(2 * nu + 1));
      for (const auto& b : u.basis()) CHECK(laplacian(b, metric).is_zero());
      for (int t = 0; t < 10; ++t) {
        std::vector<Rational> xp{rnd(rng), rnd(rng), rnd(rng)};
        MPoly k = reproducing_kernel(nu, xp, metric);
        CHECK(laplacian(k, metric).is_zero());
        for (const auto& q : u.basis()) CHECK(inner_product(k, q, metric) == q.evaluate(xp));
        std::vector<Rational> xq{rnd(rng), rnd(rng), rnd(rng)};
        MPoly k2 = reproducing_kernel(nu, xq, metric);
        CHECK(inner_product(k, k2, metric) == k.evaluate(xq));
      }
    }
  }
}

TEST_CASE("T0 values and selection rule") {
  auto one = MPoly::constant(3, 1);
  CHECK(trilinear_T0(one, one, one) == 1);
  CHECK(trilinear_T0(x(0), one, one) == 0);
  CHECK(trilinear_T0(x(0), x(0), one) == Rational(1, 3));
  std::mt19937 rng(5);
  for (int n1 = 0; n1 <= 4; ++n1)
    for (int n2 = 0; n2 <= 4; ++n2)
      for (int n3 = 0; n3 <= 4; ++n3) {
        HarmonicSpace u1(n1), u2(n2), u3(n3);
        auto p1 = random_harmonic(u1, rng), p2 = random_harmonic(u2, rng), p3 = random_harmonic(u3, rng);
        Rational t = trilinear_T0(p1, p2, p3);
        CHECK(t == trilinear_T0(p2, p1, p3));
        if (n3 > n1 + n2 || n3 < std::abs(n1 - n2)) CHECK(t == 0);
      }
}

TEST_CASE("tau action is orthogonal and T0 invariant") {
  auto alg = make_algebra(2);
  CHECK(tau_action(*alg, {1, 0, 0, 0}, x(0) * x(1)) == x(0) * x(1));
  CHECK(tau_action(*alg, {0, 1, 0, 0}, x(1)) == Rational(-1) * x(1));
  std::mt19937 rng(9);
  for (auto m1 : {2, 11}) {
    auto a = make_algebra(m1);
    QMatrix metric = a->trace_zero_metric();
    HarmonicSpace u1(1, metric), u2(2, metric);
    for (int t = 0; t < 20; ++t) {
      auto g = random_gamma(rng);
      auto p = random_harmonic(u2, rng), q = random_harmonic(u2, rng);
      auto tp = tau_action(*a, g, p), tq = tau_action(*a, g, q);
      CHECK(laplacian(tp, metric).is_zero());
      CHECK(inner_product(tp, tq, metric) == inner_product(p, q, metric));
      auto r1 = random_harmonic(u1, rng), r2 = random_harmonic(u1, rng);
      CHECK(trilinear_T0(tau_action(*a, g, r1), tau_action(*a, g, r2), tp, metric) ==
            trilinear_T0(r1, r2, p, metric));
      CHECK(trilinear_T0(tau_action(*a, g, p), tau_action(*a, g, q), tau_action(*a, g, p), metric) ==
            trilinear_T0(p, q, p, metric));
    }
  }
}

TEST_CASE("weight profiles and c factor") {
  auto w = WeightProfile::from_weights(4, 4, 2);
  CHECK(w.k1 == 4);
  CHECK(w.a == 0);
  CHECK(w.b == 2);
  CHECK(w.nu2 == 2);
  CHECK(w.nu3 == 0);
  CHECK(w.center() == 4);
  CHECK_THROWS_AS(WeightProfile::from_weights(4, 2, 2), PreconditionError);
  CHECK_THROWS_AS(WeightProfile::from_weights(3, 2, 2), PreconditionError);
  CHECK(c_factor(w, Rational(2)) == Rational(3, 10));
  CHECK(c_factor(WeightProfile::from_weights(2, 2, 2), Rational(5)) == 1);
  std::mt19937 rng(2);
  for (int t = 0; t < 10; ++t) {
    int k3 = 2 * (1 + rng() % 4), k2 = k3 + 2 * (rng() % 3), k1 = k2 + 2 * (rng() % (k3 / 2));
    auto p = WeightProfile::from_weights(k1, k2, k3);
    CHECK(c_factor(p, Rational(0)) == 1);
    CHECK(p.r + p.a + p.b == p.k1);
  }
}
