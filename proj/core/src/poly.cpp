#include "triplel/poly.hpp"

#include <sstream>

namespace triplel {

MPoly MPoly::constant(int nvars, const Rational& c) {
  MPoly p(nvars);
  p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

MPoly MPoly::variable(int nvars, int k) {
  Exponent e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(k)] = 1;
  return monomial(e);
}

MPoly MPoly::monomial(const Exponent& e, const Rational& c) {
  MPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

int MPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

bool MPoly::is_homogeneous(int d) const {
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (s != d) return false;
  }
  return true;
}

Rational MPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly operator*(const MPoly& x, const MPoly& y) {
  MPoly out(x.nvars_);
  MPoly::Exponent e(static_cast<std::size_t>(x.nvars_));
  for (const auto& [ex, cx] : x.terms_)
    for (const auto& [ey, cy] : y.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ex[k] + ey[k];
      out.add_term(e, cx * cy);
    }
  return out;
}

MPoly operator*(const Rational& s, const MPoly& x) {
  MPoly out(x.nvars_);
  if (s == 0) return out;
  for (const auto& [e, c] : x.terms_) out.terms_.emplace(e, s * c);
  return out;
}

MPoly MPoly::pow(int e) const {
  MPoly r = constant(nvars_, 1);
  for (int k = 0; k < e; ++k) r = r * *this;
  return r;
}

MPoly MPoly::derivative(int k) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    int ek = e[static_cast<std::size_t>(k)];
    if (ek == 0) continue;
    Exponent f = e;
    --f[static_cast<std::size_t>(k)];
    out.add_term(f, c * ek);
  }
  return out;
}

Rational MPoly::evaluate(const std::vector<Rational>& x) const {
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int j = 0; j < e[k]; ++j) t *= x[k];
    s += t;
  }
  return s;
}

MPoly MPoly::linear_substitute(const QMatrix& m) const {
  std::vector<MPoly> images;
  for (int k = 0; k < nvars_; ++k) {
    MPoly img(static_cast<int>(m.cols()));
    for (std::size_t l = 0; l < m.cols(); ++l) {
      Exponent e(m.cols(), 0);
      e[l] = 1;
      img.add_term(e, m(static_cast<std::size_t>(k), l));
    }
    images.push_back(std::move(img));
  }
  MPoly out(static_cast<int>(m.cols()));
  for (const auto& [e, c] : terms_) {
    MPoly t = constant(static_cast<int>(m.cols()), c);
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) t = t * images[k].pow(e[k]);
    out += t;
  }
  return out;
}

MPoly MPoly::divide_exact(const MPoly& d) const {
  Exponent lead(static_cast<std::size_t>(nvars_), 0);
  lead[0] = d.degree();
  const Rational lc = d.coeff(lead);
  if (lc == 0) throw PreconditionError("divide_exact: divisor lacks a pure x0 power");
  MPoly rem = *this;
  MPoly quot(nvars_);
  while (true) {
    const Exponent* best = nullptr;
    for (const auto& [e, c] : rem.terms_)
      if (e[0] >= lead[0] && (!best || e[0] > (*best)[0])) best = &e;
    if (!best) break;
    Exponent q = *best;
    q[0] -= lead[0];
    MPoly qt = monomial(q, rem.coeff(*best) / lc);
    quot += qt;
    rem -= qt * d;
  }
  if (!rem.is_zero()) throw ConsistencyError("polynomial division is not exact");
  return quot;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    os << (first ? "" : " + ") << c.get_str();
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) os << "*x" << (k + 1) << (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
    first = false;
  }
  return os.str();
}

}  // namespace triplel
