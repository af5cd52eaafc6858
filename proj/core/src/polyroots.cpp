#include "triplel/polyroots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace triplel {

Rational poly_eval(const RationalPoly& f, const Rational& x) {
  Rational s = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) s = s * x + *it;
  return s;
}

RationalPoly poly_divide_exact(const RationalPoly& f, const RationalPoly& g) {
  if (g.empty() || g.back() == 0) throw PreconditionError("division by zero polynomial");
  if (f.size() < g.size()) {
    for (const auto& c : f)
      if (c != 0) throw ConsistencyError("polynomial division is not exact");
    return {};
  }
  RationalPoly rem = f;
  RationalPoly q(f.size() - g.size() + 1, Rational(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational c = rem[k + g.size() - 1] / g.back();
    q[k] = c;
    for (std::size_t j = 0; j < g.size(); ++j) rem[k + j] -= c * g[j];
  }
  for (const auto& c : rem)
    if (c != 0) throw ConsistencyError("polynomial division is not exact");
  return q;
}

std::vector<std::complex<double>> numeric_roots(const RationalPoly& f) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<long>(n), static_cast<long>(n));
  const double lead = f.back().get_d();
  for (std::size_t i = 0; i < n; ++i) comp(0, static_cast<long>(i)) = -f[n - 1 - i].get_d() / lead;
  for (std::size_t i = 1; i < n; ++i) comp(static_cast<long>(i), static_cast<long>(i - 1)) = 1;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> out;
  for (long i = 0; i < static_cast<long>(n); ++i) out.push_back(es.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  return out;
}

Integer squarefree_part(const Integer& n) {
  if (n == 0) throw PreconditionError("squarefree_part of zero");
  Integer m = abs(n);
  Integer out = 1;
  for (unsigned long p = 2; p < 1000000 && Integer(p) * Integer(p) <= m; ++p) {
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  if (!mpz_perfect_square_p(m.get_mpz_t())) out *= m;
  return n < 0 ? Integer(-out) : out;
}

std::array<QuadNum, 2> quadratic_roots(const Rational& u, const Rational& v) {
  Rational disc = u * u - 4 * v;
  Integer num = disc.get_num() * disc.get_den();  // same square class
  if (num <= 0) throw PreconditionError("quadratic_roots: roots are not real");
  Integer d = squarefree_part(num);
  // sqrt(disc) = s * sqrt(d) with s = sqrt(disc / d).
  Rational ratio = disc / Rational(d);
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), ratio.get_num_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), ratio.get_den_mpz_t());
  Rational s(sn, sd);
  s.canonicalize();
  if (s * s != ratio) throw ConsistencyError("quadratic_roots: square root extraction failed");
  if (!d.fits_slong_p()) throw PreconditionError("quadratic_roots: field discriminant too large");
  long dl = d.get_si();
  if (dl == 1) return {QuadNum((-u + s) / 2), QuadNum((-u - s) / 2)};
  return {QuadNum(-u / 2, s / 2, dl), QuadNum(-u / 2, -s / 2, dl)};
}

PolyFactorization factor_low_degree(const RationalPoly& monic) {
  PolyFactorization out;
  RationalPoly f = monic;
  auto roots = numeric_roots(f);
  auto near_integer = [](double x, Integer& z) {
    double r = std::round(x);
    if (std::abs(x - r) > 1e-4 * std::max(1.0, std::abs(x))) return false;
    z = Integer(static_cast<long>(r));
    return true;
  };
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Integer z;
    if (std::abs(roots[i].imag()) > 1e-6 || !near_integer(roots[i].real(), z)) continue;
    if (poly_eval(f, Rational(z)) != 0) continue;
    f = poly_divide_exact(f, {Rational(-z), Rational(1)});
    out.linear_roots.push_back(Rational(z));
    used[i] = true;
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      std::complex<double> s = roots[i] + roots[j], p = roots[i] * roots[j];
      Integer u, v;
      if (std::abs(s.imag()) > 1e-6 || std::abs(p.imag()) > 1e-6) continue;
      if (!near_integer(-s.real(), u) || !near_integer(p.real(), v)) continue;
      RationalPoly g{Rational(v), Rational(u), Rational(1)};
      try {
        f = poly_divide_exact(f, g);
      } catch (const ConsistencyError&) {
        continue;
      }
      out.quadratics.push_back({Rational(u), Rational(v)});
      used[i] = used[j] = true;
      break;
    }
  }
  out.remainder = f;
  return out;
}

}  // namespace triplel
