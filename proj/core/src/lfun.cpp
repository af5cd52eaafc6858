#include "triplel/lfun.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

namespace triplel {

std::pair<cplx, cplx> satake(double ap, int k, std::int64_t p) {
  const double pk = std::pow(static_cast<double>(p), k - 1);
  const double disc = ap * ap - 4 * pk;
  if (disc < 0) {
    const double im = std::sqrt(-disc) / 2;
    return {cplx(ap / 2, im), cplx(ap / 2, -im)};
  }
  const double r = std::sqrt(disc);
  return {cplx((ap + r) / 2, 0), cplx((ap - r) / 2, 0)};
}

const char* to_string(LocalCase c) {
  switch (c) {
    case LocalCase::IA: return "IA";
    case LocalCase::IB: return "IB";
    case LocalCase::IC: return "IC";
    case LocalCase::ID: return "ID";
  }
  return "?";
}

std::int64_t TripleL::nmax() const {
  std::int64_t n = forms[0].nmax();
  for (const auto& f : forms) n = std::min(n, f.nmax());
  return n;
}

bool TripleL::exact() const {
  long d = 1;
  for (const auto& f : forms) {
    if (!f.exact) return false;
    if (f.field == 0) return false;
    if (f.field != 1) {
      if (d != 1 && d != f.field) return false;
      d = f.field;
    }
  }
  return true;
}

std::string TripleL::label() const {
  return forms[0].label + "," + forms[1].label + "," + forms[2].label;
}

LocalCase TripleL::local_case(std::int64_t p) const {
  int count = 0;
  for (const auto& f : forms)
    if (f.level % p == 0) ++count;
  switch (count) {
    case 3: return LocalCase::IA;
    case 2: return LocalCase::IB;
    case 1: return LocalCase::IC;
    default: return LocalCase::ID;
  }
}

TripleL make_triple(NewformData f, NewformData phi, NewformData psi) {
  TripleL t;
  t.forms = {std::move(f), std::move(phi), std::move(psi)};
  for (const auto& g : t.forms)
    if (g.level < 1 || !is_squarefree(g.level))
      throw PreconditionError(g.label + ": level must be squarefree");
  t.profile = WeightProfile::from_weights(t.forms[0].weight, t.forms[1].weight, t.forms[2].weight);
  std::stable_sort(t.forms.begin(), t.forms.end(),
                   [](const NewformData& a, const NewformData& b) { return a.weight > b.weight; });
  t.level = lcm64(lcm64(t.forms[0].level, t.forms[1].level), t.forms[2].level);
  t.gcd = gcd64(gcd64(t.forms[0].level, t.forms[1].level), t.forms[2].level);
  return t;
}

namespace {

template <class T>
T tpow(T x, int e) {
  T r(1);
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

// s_m = alpha^m + alpha'^m for m = 0..deg.
template <class T>
std::vector<T> satake_power_sums(const T& a, int k, std::int64_t p, int deg) {
  const T pk = tpow(T(static_cast<long>(p)), k - 1);
  std::vector<T> s(static_cast<std::size_t>(deg + 1));
  s[0] = T(2);
  if (deg >= 1) s[1] = a;
  for (int m = 2; m <= deg; ++m) s[static_cast<std::size_t>(m)] = a * s[static_cast<std::size_t>(m - 1)] - pk * s[static_cast<std::size_t>(m - 2)];
  return s;
}

template <class T>
std::vector<T> inverse_polynomial(const TripleL& t, std::int64_t p, const std::array<T, 3>& ap) {
  const LocalCase kind = t.local_case(p);
  std::vector<std::size_t> ram, unram;
  for (std::size_t i = 0; i < 3; ++i) (t.forms[i].level % p == 0 ? ram : unram).push_back(i);
  const int deg = kind == LocalCase::IA ? 3 : kind == LocalCase::ID ? 8 : 4;
  const T tp(static_cast<long>(p));
  std::vector<T> power(static_cast<std::size_t>(deg + 1), T(0));
  auto sums = [&](std::size_t i) { return satake_power_sums(ap[i], t.forms[i].weight, p, deg); };
  switch (kind) {
    case LocalCase::IA: {
      const T c = ap[0] * ap[1] * ap[2];
      for (int m = 1; m <= deg; ++m) power[static_cast<std::size_t>(m)] = tpow(c, m) * (T(1) + T(2) * tpow(tp, m));
      break;
    }
    case LocalCase::IB: {
      const T d = ap[ram[0]] * ap[ram[1]];
      auto s = sums(unram[0]);
      for (int m = 1; m <= deg; ++m)
        power[static_cast<std::size_t>(m)] = tpow(d, m) * (T(1) + tpow(tp, m)) * s[static_cast<std::size_t>(m)];
      break;
    }
    case LocalCase::IC: {
      auto s1 = sums(unram[0]);
      auto s2 = sums(unram[1]);
      for (int m = 1; m <= deg; ++m)
        power[static_cast<std::size_t>(m)] =
            tpow(ap[ram[0]], m) * s1[static_cast<std::size_t>(m)] * s2[static_cast<std::size_t>(m)];
      break;
    }
    case LocalCase::ID: {
      auto s0 = sums(0), s1 = sums(1), s2 = sums(2);
      for (int m = 1; m <= deg; ++m) {
        auto mm = static_cast<std::size_t>(m);
        power[mm] = s0[mm] * s1[mm] * s2[mm];
      }
      break;
    }
  }
  // Newton's identities: m e_m = sum_{i=1}^m (-1)^{i-1} e_{m-i} P_i.
  std::vector<T> e(static_cast<std::size_t>(deg + 1), T(0));
  e[0] = T(1);
  for (int m = 1; m <= deg; ++m) {
    T acc(0);
    for (int i = 1; i <= m; ++i) {
      T term = e[static_cast<std::size_t>(m - i)] * power[static_cast<std::size_t>(i)];
      acc = (i % 2 == 1) ? acc + term : acc - term;
    }
    e[static_cast<std::size_t>(m)] = acc / T(static_cast<long>(m));
  }
  for (int m = 1; m <= deg; m += 2) e[static_cast<std::size_t>(m)] = -e[static_cast<std::size_t>(m)];
  return e;
}

void require_coefficients(const TripleL& t, std::int64_t n) {
  for (const auto& f : t.forms)
    if (f.nmax() < n)
      throw PrecisionError(f.label + ": coefficients known to " + std::to_string(f.nmax()) + ", need " + std::to_string(n));
}

template <class T>
std::vector<T> series_coeffs(const TripleL& t, std::int64_t nmax, const std::function<T(const NewformData&, std::int64_t)>& a) {
  require_coefficients(t, nmax);
  std::vector<T> b(static_cast<std::size_t>(nmax + 1), T(1));
  b[0] = T(0);
  for (std::int64_t p : primes_up_to(nmax)) {
    std::array<T, 3> ap{a(t.forms[0], p), a(t.forms[1], p), a(t.forms[2], p)};
    auto poly = inverse_polynomial(t, p, ap);
    // 1 / poly as a power series in X up to p^l <= nmax.
    std::vector<T> inv{T(1)};
    for (std::int64_t pl = p; pl <= nmax; pl *= p) {
      const std::size_t l = inv.size();
      T c(0);
      for (std::size_t m = 1; m <= l && m < poly.size(); ++m) c = c - poly[m] * inv[l - m];
      inv.push_back(c);
      if (pl > nmax / p) break;
    }
    for (std::int64_t n = p; n <= nmax; n += p) {
      std::int64_t m = n;
      std::size_t v = 0;
      while (m % p == 0) {
        m /= p;
        ++v;
      }
      b[static_cast<std::size_t>(n)] = b[static_cast<std::size_t>(n)] * inv[v];
    }
  }
  return b;
}

}  // namespace

LocalFactor local_factor(std::int64_t p, const TripleL& t) {
  if (!is_prime(p)) throw PreconditionError("local_factor: p must be prime");
  require_coefficients(t, p);
  LocalFactor lf;
  lf.p = p;
  lf.kind = t.local_case(p);
  lf.coeffs = inverse_polynomial<double>(t, p, {t.forms[0].a(p), t.forms[1].a(p), t.forms[2].a(p)});
  if (t.exact()) {
    auto ex = [&](std::size_t i) { return (*t.forms[i].exact)[static_cast<std::size_t>(p)]; };
    lf.exact = inverse_polynomial<QuadNum>(t, p, {ex(0), ex(1), ex(2)});
    for (std::size_t m = 0; m < lf.coeffs.size(); ++m) lf.coeffs[m] = (*lf.exact)[m].to_double();
  }
  return lf;
}

std::vector<double> dirichlet_coeffs(const TripleL& t, std::int64_t nmax) {
  if (nmax < 1) throw PreconditionError("dirichlet_coeffs: nmax must be positive");
  require_coefficients(t, nmax);
  if (t.exact()) {
    auto ex = *dirichlet_coeffs_exact(t, nmax);
    std::vector<double> out(ex.size());
    for (std::size_t n = 0; n < ex.size(); ++n) out[n] = ex[n].to_double();
    return out;
  }
  return series_coeffs<double>(t, nmax, [](const NewformData& f, std::int64_t p) { return f.a(p); });
}

std::optional<std::vector<QuadNum>> dirichlet_coeffs_exact(const TripleL& t, std::int64_t nmax) {
  if (!t.exact()) return std::nullopt;
  require_coefficients(t, nmax);
  return series_coeffs<QuadNum>(t, nmax, [](const NewformData& f, std::int64_t p) {
    return (*f.exact)[static_cast<std::size_t>(p)];
  });
}

std::vector<GammaShift> triple_gamma_shifts(const WeightProfile& w) {
  return {{true, 0.0}, {true, 1.0 - w.k1}, {true, 1.0 - w.k2}, {true, 1.0 - w.k3}};
}

cplx gamma_factor(const TripleL& t, cplx s) {
  auto shifts = triple_gamma_shifts(t.profile);
  for (const auto& g : shifts) {
    cplx z = s + g.mu;
    if (std::abs(z.imag()) < 1e-12 && z.real() < 0.5 && std::abs(z.real() - std::round(z.real())) < 1e-12)
      throw PreconditionError("gamma_factor: pole of Gamma_C(s + " + std::to_string(static_cast<int>(g.mu)) +
                              ") at s = " + std::to_string(s.real()));
  }
  return std::exp(log_gamma_factor(shifts, s));
}

SignConductor sign_and_conductor(const TripleL& t) {
  SignConductor sc;
  int prod = 1;
  for (std::int64_t p : prime_factors(t.level)) {
    int e = 1;
    for (const auto& f : t.forms) {
      if (f.level % p != 0) continue;
      auto it = f.al_eigen.find(p);
      if (it == f.al_eigen.end()) throw PreconditionError(f.label + ": missing Atkin-Lehner sign at " + std::to_string(p));
      e *= it->second;
    }
    sc.eps[p] = e;
    prod *= e;
  }
  sc.w = -prod;
  std::int64_t n4 = t.level * t.level * t.level * t.level;
  sc.conductor = n4 * t.gcd;
  return sc;
}

namespace {

LSeriesData triple_shape(const TripleL& t, const SignConductor& sc) {
  LSeriesData l;
  l.gamma = triple_gamma_shifts(t.profile);
  l.conductor = static_cast<double>(sc.conductor);
  l.sign = sc.w;
  l.center = t.center();
  l.coeff_growth = (t.profile.k1 + t.profile.k2 + t.profile.k3 - 3) / 2.0;
  l.degree = 8;
  return l;
}

}  // namespace

LSeriesData triple_lseries(const TripleL& t, std::int64_t nmax, const SignConductor& sc) {
  LSeriesData l = triple_shape(t, sc);
  l.coeffs = dirichlet_coeffs(t, nmax);
  return l;
}

LSeriesData triple_lseries(const TripleL& t, std::int64_t nmax) {
  return triple_lseries(t, nmax, sign_and_conductor(t));
}

std::int64_t lambda_terms(const TripleL& t, cplx s, double rel_prec, double x) {
  return afe_length(triple_shape(t, sign_and_conductor(t)), s, x, rel_prec);
}

LambdaValue lambda_value(const LSeriesData& l, cplx s, double rel_prec, double x) {
  AfeResult r = completed_value(l, s, x, rel_prec);
  LambdaValue v;
  v.completed = r.value;
  v.value = r.value * std::exp(-s * 0.5 * std::log(l.conductor));
  v.scale = r.abs_sum;
  v.tail_bound = r.tail_bound;
  v.terms = r.terms;
  if (r.tail_bound > rel_prec * std::max(std::abs(r.value), r.abs_sum)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "lambda_value: tail bound %.3e exceeds target %.3e", r.tail_bound,
                  rel_prec * std::max(std::abs(r.value), r.abs_sum));
    throw PrecisionError(buf);
  }
  return v;
}

LambdaValue lambda_value(const TripleL& t, cplx s, double rel_prec, double x) {
  auto sc = sign_and_conductor(t);
  LSeriesData shape = triple_shape(t, sc);
  std::int64_t n = afe_length(shape, s, x, rel_prec);
  require_coefficients(t, n);
  return lambda_value(triple_lseries(t, n, sc), s, rel_prec, x);
}

FeReport check_fe(const LSeriesData& l, const std::vector<cplx>& offsets, double x, double rel_prec) {
  FeReport rep;
  for (cplx t : offsets) {
    FeResidual r;
    r.t = t;
    r.left = completed_value(l, l.center + t, x, rel_prec).value;
    r.right = static_cast<double>(l.sign) * completed_value(l, l.center - t, x, rel_prec).value;
    rep.scale = std::max(rep.scale, std::abs(r.left));
    rep.points.push_back(r);
  }
  const double floor = 1e-3 * rep.scale;
  for (auto& r : rep.points) {
    r.residual = std::abs(r.left - r.right) / std::max({std::abs(r.left), floor, std::numeric_limits<double>::min()});
    rep.max_residual = std::max(rep.max_residual, r.residual);
  }
  return rep;
}

FeReport check_fe(const TripleL& t, const std::vector<cplx>& offsets, bool diagnostic, double x) {
  const double prec = 1e-10;
  auto sc = sign_and_conductor(t);
  LSeriesData shape = triple_shape(t, sc);
  auto needed = [&](const LSeriesData& l, double eps) {
    std::int64_t n = 1;
    for (cplx o : offsets) {
      n = std::max(n, afe_length(l, l.center + o, x, eps));
      n = std::max(n, afe_length(l, l.center - o, x, eps));
    }
    return n;
  };
  std::int64_t n = needed(shape, prec);
  require_coefficients(t, n);
  shape.coeffs = dirichlet_coeffs(t, t.nmax());
  FeReport rep = check_fe(shape, offsets, x, prec);
  if (!diagnostic) return rep;

  FeAlternative nominal{4, 1, sc.w, rep.max_residual, prec};
  for (int a = 3; a <= 5; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int sign : {1, -1}) {
        const double q = std::pow(static_cast<double>(t.level), a) * std::pow(static_cast<double>(t.gcd), b);
        if (sign == sc.w && q == shape.conductor) continue;
        bool seen = false;
        for (const auto& prev : rep.alternatives)
          if (prev.sign == sign && std::pow(static_cast<double>(t.level), prev.n_exp) *
                                           std::pow(static_cast<double>(t.gcd), prev.g_exp) == q)
            seen = true;
        if (seen) continue;
        LSeriesData alt = shape;
        alt.conductor = q;
        alt.sign = sign;
        FeAlternative fa{a, b, sign, std::numeric_limits<double>::infinity(), 0};
        for (double p : {prec, 1e-6, 1e-4}) {
          if (needed(alt, p) > t.nmax()) continue;
          fa.residual = check_fe(alt, offsets, x, p).max_residual;
          fa.precision = p;
          break;
        }
        rep.alternatives.push_back(fa);
      }
  rep.alternatives.push_back(nominal);
  std::stable_sort(rep.alternatives.begin(), rep.alternatives.end(),
                   [](const FeAlternative& p, const FeAlternative& q) { return p.residual < q.residual; });
  for (const auto& fa : rep.alternatives)
    if (fa.residual < nominal.residual) rep.nominal_is_best = false;
  return rep;
}

LSeriesData newform_lseries(const NewformData& f) {
  LSeriesData l;
  l.gamma = {{true, 0.0}};
  l.conductor = static_cast<double>(f.level);
  int sign = (f.weight / 2) % 2 == 0 ? 1 : -1;
  for (std::int64_t p : prime_factors(f.level)) {
    auto it = f.al_eigen.find(p);
    if (it == f.al_eigen.end()) throw PreconditionError(f.label + ": missing Atkin-Lehner sign at " + std::to_string(p));
    sign *= it->second;
  }
  l.sign = sign;
  l.center = f.weight / 2.0;
  l.coeff_growth = (f.weight - 1) / 2.0;
  l.degree = 2;
  l.coeffs = f.coeffs;
  return l;
}

namespace {

LSeriesData sym2_shape(const NewformData& f) {
  LSeriesData l;
  l.gamma = {{false, 2.0 - f.weight}, {true, 0.0}};
  l.conductor = static_cast<double>(f.level) * static_cast<double>(f.level);
  l.sign = 1;
  l.center = f.weight - 0.5;
  l.coeff_growth = f.weight - 1.0;
  l.degree = 3;
  return l;
}

}  // namespace

std::int64_t symmetric_square_terms(const NewformData& f, double rel_prec) {
  return afe_length(sym2_shape(f), cplx(f.weight, 0), 1.0, rel_prec);
}

LSeriesData symmetric_square_lseries(const NewformData& f, std::int64_t nmax) {
  if (f.nmax() < nmax) throw PrecisionError(f.label + ": too few coefficients for the symmetric square");
  LSeriesData l = sym2_shape(f);
  const int k = f.weight;
  std::vector<double> c(static_cast<std::size_t>(nmax + 1), 1.0);
  c[0] = 0;
  for (std::int64_t p : primes_up_to(nmax)) {
    const double pp = static_cast<double>(p);
    const double a = f.a(p);
    std::vector<double> poly;
    if (f.level % p == 0) {
      poly = {1.0, -std::pow(pp, k - 2)};
    } else {
      const double pk = std::pow(pp, k - 1);
      const double t = a * a - pk;
      poly = {1.0, -t, pk * t, -pk * pk * pk};
    }
    std::vector<double> inv{1.0};
    for (std::int64_t pl = p; pl <= nmax; pl *= p) {
      const std::size_t l2 = inv.size();
      double v = 0;
      for (std::size_t m = 1; m <= l2 && m < poly.size(); ++m) v -= poly[m] * inv[l2 - m];
      inv.push_back(v);
      if (pl > nmax / p) break;
    }
    for (std::int64_t n = p; n <= nmax; n += p) {
      std::int64_t m = n;
      std::size_t v = 0;
      while (m % p == 0) {
        m /= p;
        ++v;
      }
      c[static_cast<std::size_t>(n)] *= inv[v];
    }
  }
  l.coeffs = std::move(c);
  return l;
}

}  // namespace triplel
