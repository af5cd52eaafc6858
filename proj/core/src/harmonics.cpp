#include "triplel/harmonics.hpp"

#include "triplel/theta.hpp"

#include <algorithm>

namespace triplel {

namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

MPoly harmonic_top(const MPoly& p, const QMatrix& metric) {
  const int m = p.degree();
  if (m < 2) return p;
  MPoly out = p;
  MPoly lap = p;
  MPoly r2k = MPoly::constant(3, 1);
  const MPoly r2 = radius_squared(metric);
  Rational denom = 1;
  for (int k = 1; 2 * k <= m; ++k) {
    lap = laplacian(lap, metric);
    if (lap.is_zero()) break;
    r2k = r2k * r2;
    denom *= Rational(2 * k) * Rational(2 * m + 1 - 2 * k);
    Rational ck = (k % 2 ? Rational(-1) : Rational(1)) / denom;
    out += ck * (r2k * lap);
  }
  return out;
}

}  // namespace

MPoly laplacian(const MPoly& p, const QMatrix& metric) {
  QMatrix inv = inverse(metric);
  MPoly out(3);
  for (int k = 0; k < 3; ++k) {
    MPoly dk = p.derivative(k);
    for (int l = 0; l < 3; ++l) {
      const Rational& c = inv(static_cast<std::size_t>(k), static_cast<std::size_t>(l));
      if (c != 0) out += c * dk.derivative(l);
    }
  }
  return out;
}

MPoly radius_squared(const QMatrix& metric) {
  MPoly r(3);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      MPoly::Exponent e(3, 0);
      ++e[static_cast<std::size_t>(k)];
      ++e[static_cast<std::size_t>(l)];
      r.add_term(e, metric(static_cast<std::size_t>(k), static_cast<std::size_t>(l)));
    }
  return r;
}

Rational inner_product(const MPoly& p, const MPoly& q, const QMatrix& metric) {
  if (p.is_zero() || q.is_zero()) return 0;
  const int d = p.degree();
  if (!p.is_homogeneous(d) || !q.is_homogeneous(d)) throw PreconditionError("inner_product: degree mismatch");
  MPoly ps = p.linear_substitute(inverse(metric));
  Rational s = 0;
  for (const auto& [e, c] : ps.terms()) {
    Rational qc = q.coeff(e);
    if (qc == 0) continue;
    Rational w = 1;
    for (int x : e) w *= factorial(x);
    s += c * qc * w;
  }
  return s / factorial(d);
}

MPoly harmonic_project(const MPoly& p, int d, const QMatrix& metric) {
  if (p.is_zero()) return MPoly(3);
  const int m = p.degree();
  if (!p.is_homogeneous(m)) throw PreconditionError("harmonic_project: input not homogeneous");
  if (d > m || (m - d) % 2 != 0) throw PreconditionError("harmonic_project: parity or degree mismatch");
  const MPoly r2 = radius_squared(metric);
  MPoly cur = p;
  for (int deg = m; deg > d; deg -= 2) {
    cur = (cur - harmonic_top(cur, metric)).divide_exact(r2);
    if (cur.is_zero()) return cur;
  }
  return harmonic_top(cur, metric);
}

MPoly reproducing_kernel(int nu, const std::vector<Rational>& xprime, const QMatrix& metric) {
  if (nu < 0) throw PreconditionError("reproducing_kernel: negative degree");
  std::vector<Rational> ax(3, Rational(0));
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) ax[k] += metric(k, l) * xprime[l];
  MPoly lin(3);
  for (int k = 0; k < 3; ++k) lin += ax[static_cast<std::size_t>(k)] * MPoly::variable(3, k);
  return harmonic_project(lin.pow(nu), nu, metric);
}

Rational trilinear_T0(const MPoly& p1, const MPoly& p2, const MPoly& p3, const QMatrix& metric) {
  if (p1.is_zero() || p2.is_zero() || p3.is_zero()) return 0;
  const int n1 = p1.degree(), n2 = p2.degree(), n3 = p3.degree();
  if (n3 > n1 + n2 || n3 < std::abs(n1 - n2) || (n1 + n2 - n3) % 2 != 0) return 0;
  return inner_product(harmonic_project(p1 * p2, n3, metric), p3, metric);
}

MPoly tau_action(const QuaternionAlgebra& alg, const QuatElement& gamma, const MPoly& p) {
  Rational n = alg.nrd(gamma);
  if (n == 0) throw PreconditionError("tau_action: gamma must be invertible");
  const int d = p.degree();
  MPoly out = p.linear_substitute(alg.conjugation_matrix(gamma));
  Rational s = 1;
  for (int k = 0; k < d; ++k) s *= n;
  return (Rational(1) / s) * out;
}

Rational gegenbauer_1d(int mu, const Rational& t) {
  if (mu < 0) throw PreconditionError("gegenbauer_1d: negative order");
  Rational s = 0;
  for (int j = 0; 2 * j <= mu; ++j) {
    Rational term = factorial(mu - j) / (factorial(j) * factorial(mu - 2 * j));
    for (int k = 0; k < 2 * j; ++k) term /= 2;
    for (int k = 0; k < mu - 2 * j; ++k) term *= t;
    s += (j % 2 ? -term : term);
  }
  for (int k = 0; k < mu; ++k) s *= 2;
  return s;
}

HarmonicSpace::HarmonicSpace(int nu, QMatrix metric) : nu_(nu), metric_(std::move(metric)) {
  if (nu < 0) throw PreconditionError("HarmonicSpace: negative degree");
  monomials_ = monomial_exponents(3, nu);
  const std::size_t nm = monomials_.size();
  if (nu < 2) {
    for (std::size_t k = 0; k < nm; ++k) {
      basis_.push_back(MPoly::monomial(monomials_[k]));
      coordinate_index_.push_back(k);
    }
  } else {
    auto lower = monomial_exponents(3, nu - 2);
    QMatrix lap(lower.size(), nm);
    for (std::size_t j = 0; j < nm; ++j) {
      MPoly img = laplacian(MPoly::monomial(monomials_[j]), metric_);
      for (std::size_t i = 0; i < lower.size(); ++i) lap(i, j) = img.coeff(lower[i]);
    }
    QMatrix work = lap;
    auto pivots = rref(work);
    std::vector<bool> is_pivot(nm, false);
    for (auto p : pivots) is_pivot[p] = true;
    auto kernel = nullspace(lap);
    std::size_t idx = 0;
    for (std::size_t k = 0; k < nm; ++k) {
      if (is_pivot[k]) continue;
      coordinate_index_.push_back(k);
      MPoly h(3);
      for (std::size_t m = 0; m < nm; ++m) h.add_term(monomials_[m], kernel[idx][m]);
      basis_.push_back(std::move(h));
      ++idx;
    }
  }
  gram_ = QMatrix(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) gram_(i, j) = inner_product(basis_[i], basis_[j], metric_);
}

std::vector<Rational> HarmonicSpace::coordinates(const MPoly& h) const {
  std::vector<Rational> c;
  c.reserve(dim());
  for (auto k : coordinate_index_) c.push_back(h.coeff(monomials_[k]));
  return c;
}

MPoly HarmonicSpace::element(const std::vector<Rational>& coords) const {
  MPoly h(3);
  for (std::size_t i = 0; i < dim(); ++i) h += coords[i] * basis_[i];
  return h;
}

WeightProfile WeightProfile::from_weights(int w1, int w2, int w3) {
  std::array<int, 3> k{w1, w2, w3};
  std::sort(k.begin(), k.end(), std::greater<>());
  for (int x : k)
    if (x < 2 || x % 2 != 0) throw PreconditionError("weights must be even integers >= 2");
  if (k[0] >= k[1] + k[2])
    throw PreconditionError("unbalanced weights: k1 = " + std::to_string(k[0]) + " >= k2 + k3 = " +
                            std::to_string(k[1] + k[2]));
  WeightProfile w;
  w.k1 = k[0];
  w.k2 = k[1];
  w.k3 = k[2];
  w.a = w.k2 + w.k3 - w.k1 - w.r;
  w.a_prime = w.a / 2;
  w.b = w.k1 - w.r - w.a;
  w.nu2 = w.k2 - w.r - w.a;
  w.nu3 = w.k3 - w.r - w.a;
  return w;
}

Rational rising_factorial(const Rational& x, int n) {
  Rational r = 1;
  for (int k = 0; k < n; ++k) r *= x + k;
  return r;
}

Rational c_factor(const WeightProfile& w, const Rational& s) {
  Rational den = rising_factorial(Rational(w.r + w.a_prime) + s, w.b);
  if (den == 0) throw PreconditionError("c_factor: pole of the rising factorial");
  return rising_factorial(Rational(w.r + w.a_prime), w.b) / den;
}

double c_factor(const WeightProfile& w, double s) {
  double num = 1, den = 1;
  for (int k = 0; k < w.b; ++k) {
    num *= w.r + w.a_prime + k;
    den *= w.r + w.a_prime + s + k;
  }
  if (den == 0) throw PreconditionError("c_factor: pole of the rising factorial");
  return num / den;
}

}  // namespace triplel
