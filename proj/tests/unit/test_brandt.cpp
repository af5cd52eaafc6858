#include <doctest.h>

#include "triplel/brandt.hpp"

using namespace triplel;

namespace {

FormSpacePtr space_for(std::int64_t m1, std::int64_t m2, int nu) {
  auto cs = std::make_shared<const IdealClassSet>(right_ideal_classes(eichler_order(make_algebra(m1), m1, m2)));
  return std::make_shared<const FormSpace>(cs, nu);
}

// q prod (1 - q^n)^2 (1 - q^{11n})^2 up to q^nmax.
std::vector<long> eta_11(long nmax) {
  std::vector<long> s(static_cast<std::size_t>(nmax + 1), 0);
  s[1] = 1;
  auto mul_factor = [&](long step) {
    for (long k = nmax; k >= step; --k) s[static_cast<std::size_t>(k)] -= s[static_cast<std::size_t>(k - step)];
  };
  for (long n = 1; n <= nmax; ++n) {
    mul_factor(n);
    mul_factor(n);
    if (11 * n <= nmax) {
      mul_factor(11 * n);
      mul_factor(11 * n);
    }
  }
  return s;
}

Rational ipow_r(std::int64_t p, int e) {
  Rational r = 1;
  for (int k = 0; k < e; ++k) r *= p;
  return r;
}

}  // namespace

TEST_CASE("Brandt matrices: enumeration oracles") {
  auto s2 = space_for(2, 1, 0);
  auto b3 = brandt_matrix(s2, 3);
  REQUIRE(b3.h == 1);
  CHECK(b3.block(0, 0)(0, 0) == 4);

  auto s11 = space_for(11, 1, 0);
  BrandtEngine e11(s11, 2);
  CHECK(e11.matrix(1) == QMatrix::identity(2));
  QMatrix b2 = e11.matrix(2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(b2(i, 0) + b2(i, 1) == 3);
}

TEST_CASE("Brandt algebra at weight 2 and 4") {
  const std::vector<std::pair<std::int64_t, std::int64_t>> levels{{2, 1}, {11, 1}, {3, 11}, {2, 7}, {3, 5}};
  for (auto [m1, m2] : levels)
    for (int nu : {0, 1}) {
      CAPTURE(m1);
      CAPTURE(m2);
      CAPTURE(nu);
      auto s = space_for(m1, m2, nu);
      const std::int64_t level = m1 * m2;
      BrandtEngine eng(s, 60);
      std::vector<QMatrix> b(61);
      for (std::int64_t n = 1; n <= 60; ++n) b[static_cast<std::size_t>(n)] = eng.matrix(n);
      CHECK(b[1] == QMatrix::identity(s->dim()));
      const QMatrix& g = s->gram();
      for (std::int64_t n = 1; n <= 12; ++n) {
        const QMatrix& bn = b[static_cast<std::size_t>(n)];
        CHECK(bn.transpose() * g == g * bn);
      }
      for (std::int64_t m = 2; m <= 7; ++m)
        for (std::int64_t n = m + 1; n <= 8; ++n) {
          const QMatrix& bm = b[static_cast<std::size_t>(m)];
          const QMatrix& bn = b[static_cast<std::size_t>(n)];
          CHECK(bm * bn == bn * bm);
          if (gcd64(m, n) == 1 && gcd64(m * n, level) == 1 && m * n <= 60)
            CHECK(bm * bn == b[static_cast<std::size_t>(m * n)]);
        }
      for (std::int64_t p : {2, 3, 5}) {
        if (level % p == 0) continue;
        Rational c = ipow_r(p, 2 * nu + 1);
        CHECK(b[static_cast<std::size_t>(p)] * b[static_cast<std::size_t>(p)] ==
              b[static_cast<std::size_t>(p * p)] + c * QMatrix::identity(s->dim()));
        if (p * p * p <= 60)
          CHECK(b[static_cast<std::size_t>(p)] * b[static_cast<std::size_t>(p * p)] ==
                b[static_cast<std::size_t>(p * p * p)] + c * b[static_cast<std::size_t>(p)]);
        if (nu == 0) {
          const QMatrix& bp = b[static_cast<std::size_t>(p)];
          for (std::size_t i = 0; i < bp.rows(); ++i) {
            Rational sum = 0;
            for (std::size_t j = 0; j < bp.cols(); ++j) sum += bp(i, j);
            CHECK(sum == p + 1);
          }
        }
      }
      // Raw blocks: e_j B_ij is the adjoint of e_i B_ji for the harmonic inner product.
      auto raw = eng.brandt_matrix(5);
      const QMatrix& hg = s->harmonics().gram();
      QMatrix hinv = inverse(hg);
      const auto& e = s->classes().unit_orders;
      for (std::size_t i = 0; i < raw.h; ++i)
        for (std::size_t j = 0; j < raw.h; ++j)
          CHECK(Rational(e[j]) * raw.block(i, j) == hinv * (Rational(e[i]) * raw.block(j, i)).transpose() * hg);
    }
}

TEST_CASE("Atkin-Lehner involutions") {
  auto s = space_for(11, 1, 0);
  auto w = atkin_lehner_involution(s->classes(), 11);
  for (std::size_t i = 0; i < w.target.size(); ++i) CHECK(w.target[w.target[i]] == i);
  QMatrix wm = atkin_lehner_matrix(*s, w);
  BrandtEngine eng(s, 2);
  CHECK(wm * wm == QMatrix::identity(s->dim()));
  CHECK(wm * eng.matrix(2) == eng.matrix(2) * wm);

  for (auto [m1, m2] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 11}, {2, 7}, {11, 3}})
    for (int nu : {0, 1}) {
      auto sp = space_for(m1, m2, nu);
      BrandtEngine e(sp, 5);
      for (auto p : prime_factors(m1 * m2)) {
        QMatrix a = atkin_lehner_matrix(*sp, atkin_lehner_involution(sp->classes(), p));
        CHECK(a * a == QMatrix::identity(sp->dim()));
        CHECK(a.transpose() * sp->gram() == sp->gram() * a);
        for (std::int64_t n : {2, 5})
          if ((m1 * m2) % n != 0) CHECK(a * e.matrix(n) == e.matrix(n) * a);
      }
    }
}

TEST_CASE("level 11 eigenforms against the eta product") {
  auto s = space_for(11, 1, 0);
  auto forms = eigenforms(s);
  REQUIRE(forms.size() == 2);
  CHECK(forms[0].constant);
  CHECK(forms[0].norm_sq == QuadNum(s->classes().mass()));
  CHECK(forms[0].hecke_exact.at(2) == QuadNum(3));
  const auto& f = forms[1];
  CHECK(f.essential());
  CHECK(f.hecke_exact.at(2) == QuadNum(-2));

  auto eta = eta_11(100);
  auto nf = newform_coeffs(f, 100);
  REQUIRE(nf.exact);
  for (auto p : primes_up_to(100)) {
    CAPTURE(p);
    CHECK((*nf.exact)[static_cast<std::size_t>(p)] == QuadNum(eta[static_cast<std::size_t>(p)]));
  }
  for (long n = 1; n <= 100; ++n) CHECK((*nf.exact)[static_cast<std::size_t>(n)] == QuadNum(eta[static_cast<std::size_t>(n)]));
  CHECK(nf.al_eigen.at(11) == -1);
  CHECK(nf.a(4) == 2);
  CHECK(nf.a(6) == 2);

  auto lift = yoshida_lift0(f, 50);
  CHECK(lift[0].is_zero());
  for (long n = 1; n <= 50; ++n) CHECK(lift[static_cast<std::size_t>(n)] == QuadNum(eta[static_cast<std::size_t>(n)]));
  auto elift = yoshida_lift0(forms[0], 20);
  CHECK(elift[0].sign() > 0);
}

TEST_CASE("weight 4, level 11: traces and normalization") {
  auto s = space_for(11, 1, 1);
  auto forms = eigenforms(s, {{2, 3, 5, 7}});
  CHECK(forms.size() == s->dim());
  BrandtEngine eng(s, 7);
  for (std::int64_t p : {2, 3, 5, 7}) {
    QMatrix b = eng.matrix(p);
    QuadNum tr = 0;
    for (std::size_t i = 0; i < b.rows(); ++i) tr += b(i, i);
    double sum = 0;
    for (const auto& f : forms) sum += f.hecke.at(p);
    CHECK(sum == doctest::Approx(tr.to_double()));
  }
  for (const auto& f : forms) {
    double n = 0;
    for (std::size_t i = 0; i < s->classes_count(); ++i) {
      auto v = f.value(i);
      auto hv = s->harmonics().gram();
      for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = 0; b < v.size(); ++b) n += v[a] * hv(a, b).get_d() * v[b] / s->classes().unit_orders[i];
    }
    CHECK(n == doctest::Approx(1.0));
  }
}

TEST_CASE("pullback from level 11 to level 33 keeps Hecke eigenvalues") {
  auto coarse = space_for(11, 1, 0);
  auto fine = space_for(11, 3, 0);
  auto forms = eigenforms(coarse, {{2, 5, 7}});
  const auto& f = forms[1];
  QMatrix pb = pullback_matrix(*fine, *coarse);
  std::vector<QuadNum> up;
  for (std::size_t r = 0; r < pb.rows(); ++r) {
    QuadNum x = 0;
    for (std::size_t c = 0; c < pb.cols(); ++c) x += QuadNum(pb(r, c)) * f.coords[c];
    up.push_back(x);
  }
  BrandtEngine eng(fine, 7);
  for (std::int64_t q : {2, 5, 7}) {
    QMatrix b = eng.matrix(q);
    for (std::size_t r = 0; r < b.rows(); ++r) {
      QuadNum y = 0;
      for (std::size_t c = 0; c < b.cols(); ++c) y += QuadNum(b(r, c)) * up[c];
      CHECK(y == f.hecke_exact.at(q) * up[r]);
    }
  }
  auto fine_forms = eigenforms(fine);
  int essential = 0, old = 0;
  for (const auto& g : fine_forms) {
    if (g.constant) continue;
    if (g.essential())
      ++essential;
    else
      ++old;
  }
  CHECK(old == 2);        // two copies of 11a
  CHECK(essential == 1);  // 33a
}
