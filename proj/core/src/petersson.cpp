#include "triplel/lfun.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <set>

namespace triplel {

namespace {

struct Mat2 {
  std::int64_t a, b, c, d;
};

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  std::int64_t x1, y1;
  std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Representatives of Gamma_0(m) \ SL2(Z), one per point of P^1(Z/m).
std::vector<Mat2> coset_representatives(std::int64_t m) {
  std::set<std::pair<std::int64_t, std::int64_t>> points;
  std::vector<std::int64_t> units;
  for (std::int64_t u = 1; u < m || (m == 1 && u == 1); ++u)
    if (gcd64(u, m) == 1) units.push_back(u);
  if (m == 1) return {{1, 0, 0, 1}};
  for (std::int64_t c = 0; c < m; ++c)
    for (std::int64_t d = 0; d < m; ++d) {
      if (gcd64(gcd64(c, d), m) != 1) continue;
      std::pair<std::int64_t, std::int64_t> best{m, m};
      for (auto u : units) best = std::min(best, std::make_pair(u * c % m, u * d % m));
      points.insert(best);
    }
  std::vector<Mat2> reps;
  for (auto [c, d] : points) {
    if (c == 0) {
      reps.push_back({1, 0, 0, 1});
      continue;
    }
    std::int64_t dd = d;
    while (gcd64(c, dd) != 1) dd += m;
    std::int64_t x, y;
    ext_gcd(dd, c, x, y);  // x dd + y c = 1
    reps.push_back({x, -y, c, dd});
  }
  return reps;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Moves w to a point of maximal height under Gamma_0(n) and its Atkin-Lehner
// elements [[Q a, b], [n c, Q d]] of determinant Q (Q | n), which leave
// |f|^2 y^k invariant for a newform of squarefree level n.
cplx reduce(cplx w, std::int64_t n, const std::vector<std::int64_t>& qs) {
  for (int iter = 0; iter < 1000; ++iter) {
    w -= std::round(w.real());
    const double x = w.real(), y = w.imag();
    double best = y;
    std::int64_t bq = 0, bc = 0, bd = 0;
    for (auto q : qs) {
      const double qd = static_cast<double>(q), nd = static_cast<double>(n);
      const auto cmax = static_cast<std::int64_t>(std::sqrt(qd / (nd * nd * y * best)));
      for (std::int64_t c = 0; c <= cmax; ++c) {
        if (c == 0 && q == 1) continue;
        const double d0 = -nd * static_cast<double>(c) * x / qd;
        const double r = std::sqrt(qd * y / best) / qd;
        for (auto d = static_cast<std::int64_t>(std::floor(d0 - r)); d <= static_cast<std::int64_t>(std::ceil(d0 + r)); ++d) {
          if (gcd64(q * d, (n / q) * c) != 1) continue;
          const double re = nd * static_cast<double>(c) * x + qd * static_cast<double>(d);
          const double im = nd * static_cast<double>(c) * y;
          const double h = qd * y / (re * re + im * im);
          if (h > best * (1 + 1e-12)) {
            best = h;
            bq = q;
            bc = c;
            bd = d;
          }
        }
      }
    }
    if (bq == 0) return w;
    std::int64_t u, v;
    ext_gcd(bq * bd, (n / bq) * bc, u, v);  // u Q d + v (n/Q) c = 1
    const double a = static_cast<double>(bq * u), b = static_cast<double>(-v);
    w = (a * w + b) / (static_cast<double>(n * bc) * w + static_cast<double>(bq * bd));
  }
  throw ConsistencyError("reduction to the Atkin-Lehner fundamental domain did not terminate");
}

class InvariantDensity {
 public:
  explicit InvariantDensity(const NewformData& f) : f_(f), qs_(divisors(f.level)) {}

  // |f(w)|^2 Im(w)^k
  double operator()(cplx w) const {
    w = reduce(w, f_.level, qs_);
    const double y = w.imag();
    const auto terms = static_cast<std::int64_t>(std::ceil(40.0 / (2 * M_PI * y))) + 1;
    if (terms > f_.nmax())
      throw PrecisionError(f_.label + ": quadrature needs " + std::to_string(terms) + " coefficients");
    const cplx q = std::exp(cplx(0, 2 * M_PI) * w);
    cplx acc = 0;
    for (std::int64_t n = terms; n >= 1; --n) acc = (acc + f_.a(n)) * q;
    return std::norm(acc) * std::pow(y, f_.weight);
  }

 private:
  const NewformData& f_;
  std::vector<std::int64_t> qs_;
};

struct GlTable {
  explicit GlTable(std::size_t n) : table(gsl_integration_glfixed_table_alloc(n), gsl_integration_glfixed_table_free), n(n) {}
  void node(double a, double b, std::size_t i, double& x, double& w) const {
    gsl_integration_glfixed_point(a, b, i, &x, &w, table.get());
  }
  std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)> table;
  std::size_t n;
};

// Integral of density(gamma z) dx dy / y^2 over the SL2(Z) fundamental domain.
double integrate_coset(const InvariantDensity& density, const Mat2& g, const GlTable& gx, const GlTable& gy) {
  auto mobius = [&](cplx z) {
    return (static_cast<double>(g.a) * z + static_cast<double>(g.b)) /
           (static_cast<double>(g.c) * z + static_cast<double>(g.d));
  };
  double total = 0;
  for (int half = 0; half < 2; ++half) {
    const double x0 = half == 0 ? -0.5 : 0.0, x1 = half == 0 ? 0.0 : 0.5;
    for (std::size_t i = 0; i < gx.n; ++i) {
      double x, wx;
      gx.node(x0, x1, i, x, wx);
      double lo = std::sqrt(1 - x * x);
      double len = 0.5;
      double column = 0;
      for (int panel = 0; panel < 60; ++panel) {
        const double hi = lo + len;
        double part = 0;
        for (std::size_t j = 0; j < gy.n; ++j) {
          double y, wy;
          gy.node(lo, hi, j, y, wy);
          part += wy * density(mobius(cplx(x, y))) / (y * y);
        }
        column += part;
        if (panel >= 3 && std::abs(part) < 1e-17 * std::abs(column)) break;
        lo = hi;
        len *= 2;
      }
      total += wx * column;
    }
  }
  return total;
}

}  // namespace

double petersson_quadrature(const NewformData& f, std::int64_t domain_level) {
  if (domain_level % f.level != 0) throw PreconditionError("domain level must be a multiple of the form level");
  InvariantDensity density(f);
  GlTable gx(24), gy(24);
  double total = 0;
  for (const auto& g : coset_representatives(domain_level)) total += integrate_coset(density, g, gx, gy);
  return total;
}

double petersson_rankin_selberg(const NewformData& f) {
  const std::int64_t n = symmetric_square_terms(f, 1e-13);
  LSeriesData l = symmetric_square_lseries(f, n);
  const int k = f.weight;
  AfeResult r = completed_value(l, cplx(k, 0), 1.0, 1e-13);
  const double gamma = std::exp(log_gamma_factor(l.gamma, cplx(k, 0))).real();
  const double lsym2 = r.value.real() / (std::pow(l.conductor, k / 2.0) * gamma);
  return 2.0 * static_cast<double>(f.level) * std::tgamma(k) * lsym2 / (M_PI * std::pow(4 * M_PI, k));
}

std::int64_t petersson_terms(const NewformData& f) {
  const auto quad = static_cast<std::int64_t>(std::ceil(2.0 * static_cast<double>(f.level) * 40.0 / (2 * M_PI) * 2 / std::sqrt(3.0)));
  return std::max(symmetric_square_terms(f, 1e-13), quad);
}

PeterssonNorm petersson_norm(const NewformData& f, double rel_prec) {
  PeterssonNorm out;
  out.rankin_selberg = petersson_rankin_selberg(f);
  out.quadrature = petersson_quadrature(f, f.level);
  out.rel_diff = std::abs(out.rankin_selberg - out.quadrature) / std::abs(out.rankin_selberg);
  if (!(out.rankin_selberg > 0) || out.rel_diff > rel_prec)
    throw ConsistencyError(f.label + ": Petersson norm methods disagree, Rankin-Selberg " +
                           std::to_string(out.rankin_selberg) + " vs quadrature " + std::to_string(out.quadrature));
  return out;
}

}  // namespace triplel
