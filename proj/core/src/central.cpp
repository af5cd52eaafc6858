#include "triplel/central.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace triplel {

std::vector<NewformData> enumerate_newforms(std::int64_t level, int weight, std::int64_t nmax) {
  if (level < 2 || !is_squarefree(level)) throw PreconditionError("newforms: level must be squarefree and > 1");
  if (weight < 2 || weight % 2 != 0) throw PreconditionError("newforms: weight must be even and >= 2");
  const std::int64_t p = prime_factors(level).front();
  auto alg = make_algebra(p);
  auto cs = std::make_shared<const IdealClassSet>(right_ideal_classes(eichler_order(alg, p, level / p)));
  auto space = std::make_shared<const FormSpace>(cs, (weight - 2) / 2);
  std::vector<NewformData> out;
  for (const auto& f : eigenforms(space))
    if (f.essential()) out.push_back(newform_coeffs(f, nmax));
  std::sort(out.begin(), out.end(), [](const NewformData& x, const NewformData& y) {
    for (std::size_t n = 1; n < std::min(x.coeffs.size(), y.coeffs.size()); ++n) {
      const double d = x.coeffs[n] - y.coeffs[n];
      if (std::abs(d) > 1e-9 * std::max(1.0, std::abs(x.coeffs[n]))) return d < 0;
    }
    return false;
  });
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].label = std::to_string(level) + "." + std::to_string(weight) + "." + std::to_string(i + 1);
  return out;
}

Decomposition select_decomposition(const TripleL& t) {
  Decomposition d;
  if (t.gcd == 1) {
    d.zero = true;
    d.reason = "no admissible definite algebra";
    return d;
  }
  for (auto p : prime_factors(t.gcd)) {
    int e = 1;
    for (const auto& f : t.forms) e *= f.al_eigen.at(p);
    if (e == -1) d.m1 *= p;
  }
  d.m2 = t.level / d.m1;
  if (omega(d.m1) % 2 == 0) {
    d.zero = true;
    d.reason = d.m1 == 1 ? "no prime of the gcd has epsilon product -1"
                         : "M1 = " + std::to_string(d.m1) + " has an even number of prime factors";
  }
  return d;
}

LambdaSets lambda_assignment(const TripleL& t) {
  LambdaSets sets;
  for (auto p : prime_factors(t.level)) {
    int count = 0;
    std::size_t owner = 0;
    for (std::size_t k = 0; k < 3; ++k)
      if (t.forms[k].level % p == 0) {
        ++count;
        owner = k;
      }
    if (count != 1) continue;
    sets[owner == 0 ? 1 : 0].push_back(p);
  }
  return sets;
}

namespace {

struct Slot {
  FormSpacePtr fine;
  QuatEigenform form;  // at its own level
  std::vector<QuadNum> exact;  // forms-space coordinates on the fine space
  std::vector<double> normalized;
};

QuatEigenform find_essential(const AlgebraPtr& alg, std::int64_t m1, const NewformData& f) {
  auto cs = std::make_shared<const IdealClassSet>(right_ideal_classes(eichler_order(alg, m1, f.level / m1)));
  auto space = std::make_shared<const FormSpace>(cs, (f.weight - 2) / 2);
  std::vector<QuatEigenform> hits;
  for (auto& g : eigenforms(space)) {
    if (!g.essential()) continue;
    bool ok = true;
    for (const auto& [p, ev] : g.hecke)
      if (p <= f.nmax() && std::abs(ev - f.a(p)) > 1e-6 * std::max(1.0, std::abs(f.a(p)))) ok = false;
    for (auto p : prime_factors(f.level))
      if (epsilon_from_quaternionic(g.atkin_lehner.at(p), m1 % p == 0) != f.al_eigen.at(p)) ok = false;
    if (ok) hits.push_back(std::move(g));
  }
  if (hits.size() != 1)
    throw ConsistencyError("no unique essential quaternionic form for " + f.label + " on R(" + std::to_string(m1) +
                           ", " + std::to_string(f.level / m1) + ")");
  return std::move(hits.front());
}

template <class T>
std::vector<T> mat_apply(const QMatrix& m, const std::vector<T>& v) {
  std::vector<T> out(m.rows(), T(0));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) out[r] += from_rational<T>(m(r, c)) * v[c];
  return out;
}

template <class T>
T height_sum(const std::array<Slot, 3>& slots, const std::vector<std::vector<std::vector<Rational>>>& t0,
             const std::vector<int>& e, const std::array<const std::vector<T>*, 3>& vecs) {
  T total(0);
  const std::size_t h = e.size();
  for (std::size_t i = 0; i < h; ++i) {
    auto v1 = slots[0].fine->value(*vecs[0], i);
    auto v2 = slots[1].fine->value(*vecs[1], i);
    auto v3 = slots[2].fine->value(*vecs[2], i);
    T s(0);
    for (std::size_t a = 0; a < v1.size(); ++a)
      for (std::size_t b = 0; b < v2.size(); ++b)
        for (std::size_t c = 0; c < v3.size(); ++c)
          if (t0[a][b][c] != 0) s += from_rational<T>(t0[a][b][c]) * v1[a] * v2[b] * v3[c];
    total += s / T(static_cast<long>(e[i]));
  }
  return total;
}

}  // namespace

Height height_pairing(const TripleL& t, const Decomposition& d, const LambdaSets& lambda, const HeightOptions& opts) {
  if (d.zero) throw PreconditionError("height_pairing: decomposition is a zero certificate");
  auto alg = make_algebra(d.m1);
  auto fine_cs = std::make_shared<const IdealClassSet>(right_ideal_classes(eichler_order(alg, d.m1, d.m2)));
  std::array<Slot, 3> slots;
  std::map<std::pair<std::int64_t, int>, FormSpacePtr> fine_spaces;
  bool exact = true;
  long field = 1;
  for (std::size_t k = 0; k < 3; ++k) {
    const NewformData& f = t.forms[k];
    if (f.level % d.m1 != 0) throw ConsistencyError(f.label + ": level not divisible by M1");
    const int nu = (f.weight - 2) / 2;
    auto& fine = fine_spaces[{0, nu}];
    if (!fine) fine = std::make_shared<const FormSpace>(fine_cs, nu);
    Slot& s = slots[k];
    s.fine = fine;
    s.form = find_essential(alg, d.m1, f);
    QMatrix pb = f.level == t.level ? QMatrix::identity(fine->dim()) : pullback_matrix(*fine, *s.form.space);
    if (s.form.exact) s.exact = mat_apply(pb, s.form.coords);
    s.normalized = mat_apply(pb, s.form.normalized);
    for (auto p : lambda[k]) {
      QMatrix w = atkin_lehner_matrix(*fine, atkin_lehner_involution(*fine_cs, p));
      if (s.form.exact) s.exact = mat_apply(w, s.exact);
      s.normalized = mat_apply(w, s.normalized);
    }
    if (!s.form.exact) {
      exact = false;
    } else if (s.form.field != 1) {
      if (field != 1 && field != s.form.field) exact = false;
      field = s.form.field;
    }
  }
  const auto& h0 = slots[0].fine->harmonics();
  const auto& h1 = slots[1].fine->harmonics();
  const auto& h2 = slots[2].fine->harmonics();
  std::vector<std::vector<std::vector<Rational>>> t0(
      h0.dim(), std::vector<std::vector<Rational>>(h1.dim(), std::vector<Rational>(h2.dim())));
  for (std::size_t a = 0; a < h0.dim(); ++a)
    for (std::size_t b = 0; b < h1.dim(); ++b)
      for (std::size_t c = 0; c < h2.dim(); ++c)
        t0[a][b][c] = trilinear_T0(h0.basis()[a], h1.basis()[b], h2.basis()[c], h0.metric());

  std::vector<int> e = fine_cs->unit_orders;
  if (!opts.unit_orders_override.empty()) {
    if (opts.unit_orders_override.size() != e.size()) throw PreconditionError("unit order override has the wrong length");
    e = opts.unit_orders_override;
  }
  Height out;
  out.classes = e.size();
  out.value = height_sum<double>(slots, t0, e, {&slots[0].normalized, &slots[1].normalized, &slots[2].normalized});
  out.square = out.value * out.value;
  if (exact) {
    QuadNum hx = height_sum<QuadNum>(slots, t0, e, {&slots[0].exact, &slots[1].exact, &slots[2].exact});
    QuadNum sq = hx * hx / (slots[0].form.norm_sq * slots[1].form.norm_sq * slots[2].form.norm_sq);
    if (std::abs(sq.to_double() - out.square) > 1e-8 * std::max(1.0, out.square))
      throw ConsistencyError("height: exact and floating values disagree");
    out.square_exact = sq;
    out.square = sq.to_double();
  }
  return out;
}

Rational central_constant(const WeightProfile& w, std::int64_t gcd) {
  Rational c = 1;
  const int two = 5 + 4 * w.a + 3 * w.b - omega(gcd);
  for (int i = 0; i < std::abs(two); ++i) c = two > 0 ? Rational(c * 2) : Rational(c / 2);
  c *= rising_factorial(Rational(w.a_prime + 1), w.b);
  c /= rising_factorial(Rational(2), w.a + w.b);
  c /= rising_factorial(Rational(2), w.a_prime);
  c /= rising_factorial(Rational(w.nu2 + 1), w.a_prime);
  c /= rising_factorial(Rational(w.nu3 + 1), w.a_prime);
  if (w.a_prime % 2 != 0) c = -c;
  return c;
}

int central_pi_power(const WeightProfile& w) { return 5 + 9 * w.a_prime + 4 * w.b; }

std::int64_t central_terms(const TripleL& t) {
  std::int64_t n = lambda_terms(t, cplx(t.center(), 0), 1e-10);
  for (const auto& f : t.forms) n = std::max(n, petersson_terms(f));
  return n;
}

namespace {
std::string fmt(double x);
}

CentralValueReport central_value(const TripleL& t, const CentralOptions& opts) {
  CentralValueReport r;
  r.label = t.label();
  r.sign = sign_and_conductor(t).w;
  r.decomposition = select_decomposition(t);
  r.lambda = lambda_assignment(t);
  r.constant = central_constant(t.profile, t.gcd);
  r.pi_power = central_pi_power(t.profile);

  const cplx kappa(t.center(), 0);
  LambdaValue lv = lambda_value(t, kappa, 1e-10);
  const cplx g = gamma_factor(t, kappa);
  r.afe_value = (lv.value / g).real();
  r.afe_scale = lv.scale * std::pow(static_cast<double>(sign_and_conductor(t).conductor), -t.center() / 2.0) / std::abs(g);

  const bool weight2 = t.profile.a == 0 && t.profile.b == 0;
  if (r.decomposition.zero) {
    r.central_value = 0;
    r.rel_diff = std::abs(r.afe_value) / r.afe_scale;
    r.pass = r.rel_diff < 1e-6;
    if (!r.pass)
      r.findings.push_back("zero certificate (" + r.decomposition.reason + ") but the AFE central value is not small");
    return r;
  }
  r.height = height_pairing(t, r.decomposition, r.lambda, opts.height);
  std::map<std::string, PeterssonNorm> norms;
  double prod = 1;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& f = t.forms[k];
    auto it = norms.find(f.label);
    if (it == norms.end()) it = norms.emplace(f.label, petersson_norm(f, 1e-6)).first;
    r.petersson[k] = it->second;
    prod *= it->second.value();
  }
  const double base = r.constant.get_d() * std::pow(M_PI, r.pi_power) * prod * r.height.square;
  if (weight2) {
    r.calibration = 1;
  } else if (opts.calibration) {
    r.calibration = *opts.calibration;
  } else {
    r.calibrated = true;
    r.calibration = base != 0 && r.afe_value / base > 0 ? std::sqrt(r.afe_value / base) : 0;
  }
  r.central_value = base * r.calibration * r.calibration;
  r.rel_diff = std::abs(r.central_value - r.afe_value) / std::max(std::abs(r.afe_value), 1e-300);
  r.pass = r.rel_diff <= opts.tol;
  if (r.sign == -1) {
    r.findings.push_back("root number -1 with admissible M1 = " + std::to_string(r.decomposition.m1) +
                         ": the functional equation forces L(kappa) = 0");
    r.rel_diff = std::abs(r.central_value - r.afe_value) / r.afe_scale;
    r.pass = r.rel_diff <= opts.tol;
  }
  if (!r.pass && r.sign == 1 && r.afe_value != 0)
    r.findings.push_back("formula / AFE ratio = " + fmt(r.central_value / r.afe_value) + ", level " +
                         std::to_string(t.level));
  if (r.central_value < 0) r.findings.push_back("negative central value from the formula");
  return r;
}

CentralValueReport verify_central(const TripleL& t, double rel_tol) {
  CentralOptions o;
  o.tol = rel_tol;
  return central_value(t, o);
}

namespace {

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s.empty() ? "-" : s;
}

}  // namespace

std::string CentralValueReport::kv() const {
  std::ostringstream o;
  o << "triple=" << label << "\n";
  if (decomposition.zero) {
    o << "zero_certificate=" << decomposition.reason << "\n";
  } else {
    o << "M1=" << decomposition.m1 << "\nM2=" << decomposition.m2 << "\n";
  }
  for (std::size_t k = 0; k < 3; ++k) o << "lambda" << k + 1 << "=" << join(lambda[k]) << "\n";
  o << "root_number=" << sign << "\n";
  if (!decomposition.zero) {
    o << "height=" << fmt(height.value) << "\n";
    o << "height_squared=" << (height.square_exact ? height.square_exact->str() : fmt(height.square)) << "\n";
    o << "constant=" << to_string(constant) << "*pi^" << pi_power << "\n";
    for (std::size_t k = 0; k < 3; ++k) {
      o << "petersson" << k + 1 << "=" << fmt(petersson[k].value()) << "\n";
      o << "petersson" << k + 1 << "_quadrature=" << fmt(petersson[k].quadrature) << "\n";
    }
    o << "calibration=" << fmt(calibration) << (calibrated ? " (fitted)" : "") << "\n";
  }
  o << "central_value=" << fmt(central_value) << "\n";
  o << "afe_value=" << fmt(afe_value) << "\n";
  o << "afe_scale=" << fmt(afe_scale) << "\n";
  o << "rel_diff=" << fmt(rel_diff) << "\n";
  o << "status=" << (pass ? "PASS" : "FAIL") << "\n";
  for (const auto& f : findings) o << "finding=" << f << "\n";
  return o.str();
}

std::string CentralValueReport::text() const {
  std::ostringstream o;
  o << "Central value for " << label << "\n";
  if (decomposition.zero) {
    o << "  zero certificate: " << decomposition.reason << "\n";
  } else {
    o << "  algebra ramified at " << decomposition.m1 << ", Eichler level " << decomposition.m2 << "\n";
    o << "  Lambda sets: {" << join(lambda[0]) << "} {" << join(lambda[1]) << "} {" << join(lambda[2]) << "}\n";
    o << "  height^2 = " << (height.square_exact ? height.square_exact->str() : fmt(height.square)) << " ("
      << fmt(height.square) << ")\n";
    o << "  constant = " << to_string(constant) << " * pi^" << pi_power << "\n";
    for (std::size_t k = 0; k < 3; ++k)
      o << "  <f" << k + 1 << ",f" << k + 1 << "> = " << fmt(petersson[k].value()) << " (methods differ by "
        << fmt(petersson[k].rel_diff) << ")\n";
    o << "  calibration = " << fmt(calibration) << (calibrated ? " (fitted to this triple)" : "") << "\n";
  }
  o << "  root number " << (sign > 0 ? "+1" : "-1") << "\n";
  o << "  formula L(kappa) = " << fmt(central_value) << "\n";
  o << "  AFE     L(kappa) = " << fmt(afe_value) << "\n";
  o << "  relative difference " << fmt(rel_diff) << ": " << (pass ? "PASS" : "FAIL") << "\n";
  for (const auto& f : findings) o << "  finding: " << f << "\n";
  return o.str();
}

}  // namespace triplel
