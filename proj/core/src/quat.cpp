#include "triplel/quat.hpp"

#include "triplel/enumerate.hpp"

#include <algorithm>
#include <sstream>

namespace triplel {

// --- elements and algebra --------------------------------------------------

std::string QuatElement::str() const {
  return c[0].get_str() + " " + c[1].get_str() + " " + c[2].get_str() + " " + c[3].get_str();
}

QuaternionAlgebra::QuaternionAlgebra(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
  if (a_ == 0 || b_ == 0) throw PreconditionError("quaternion algebra coefficients must be nonzero");
  std::vector<std::int64_t> candidates{2};
  for (const Rational* r : {&a_, &b_}) {
    for (const Integer* z : {&r->get_num(), &r->get_den()}) {
      Integer az = abs(*z);
      if (!az.fits_slong_p()) throw PreconditionError("quaternion algebra coefficients too large");
      for (auto p : prime_factors(az.get_si())) candidates.push_back(p);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (auto p : candidates)
    if (hilbert_symbol(a_, b_, p) == -1) ramified_.push_back(p);
}

std::int64_t QuaternionAlgebra::discriminant() const {
  std::int64_t d = 1;
  for (auto p : ramified_) d *= p;
  return d;
}

QuatElement QuaternionAlgebra::mul(const QuatElement& x, const QuatElement& y) const {
  const auto& [x0, x1, x2, x3] = x.c;
  const auto& [y0, y1, y2, y3] = y.c;
  const Rational& a = a_;
  const Rational& b = b_;
  return {x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
          x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
          x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
          x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1};
}

Rational QuaternionAlgebra::nrd(const QuatElement& x) const {
  const auto& [x0, x1, x2, x3] = x.c;
  return x0 * x0 - a_ * x1 * x1 - b_ * x2 * x2 + a_ * b_ * x3 * x3;
}

QuatElement QuaternionAlgebra::inverse(const QuatElement& x) const {
  Rational n = nrd(x);
  if (n == 0) throw PreconditionError("inverse of zero quaternion");
  return Rational(1) / n * x.conj();
}

QMatrix QuaternionAlgebra::conjugation_matrix(const QuatElement& g) const {
  QMatrix m(3, 3);
  QuatElement gbar = g.conj();
  for (std::size_t col = 0; col < 3; ++col) {
    QuatElement e;
    e.c[col + 1] = 1;
    QuatElement img = mul(mul(gbar, e), g);
    for (std::size_t row = 0; row < 3; ++row) m(row, col) = img.c[row + 1];
  }
  return m;
}

QMatrix QuaternionAlgebra::trace_zero_metric() const {
  QMatrix m(3, 3);
  m(0, 0) = -a_;
  m(1, 1) = -b_;
  m(2, 2) = a_ * b_;
  return m;
}

// --- Hilbert symbol ----------------------------------------------------------

namespace {

int hilbert_integer(Integer a, Integer b, std::int64_t p) {
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  int alpha = valuation(a, p);
  int beta = valuation(b, p);
  Integer pp = static_cast<long>(p);
  Integer u = a, v = b;
  for (int t = 0; t < alpha; ++t) u /= pp;
  for (int t = 0; t < beta; ++t) v /= pp;
  if (p == 2) {
    auto eps = [](const Integer& z) -> int {
      Integer m = z % 4;
      if (m < 0) m += 4;
      return m == 3 ? 1 : 0;
    };
    auto omg = [](const Integer& z) -> int {
      Integer m = z % 8;
      if (m < 0) m += 8;
      return (m == 3 || m == 5) ? 1 : 0;
    };
    int e = eps(u) * eps(v) + alpha * omg(v) + beta * omg(u);
    return (e % 2 == 0) ? 1 : -1;
  }
  int sign = ((static_cast<long>(alpha) * beta * ((p - 1) / 2)) % 2 == 0) ? 1 : -1;
  int lu = (beta % 2 == 0) ? 1 : legendre(u, p);
  int lv = (alpha % 2 == 0) ? 1 : legendre(v, p);
  return sign * lu * lv;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, std::int64_t p) {
  if (a == 0 || b == 0) throw PreconditionError("hilbert_symbol: arguments must be nonzero");
  if (p != 0 && !is_prime(p)) throw PreconditionError("hilbert_symbol: place must be a prime or infinity");
  Integer an = a.get_num() * a.get_den();
  Integer bn = b.get_num() * b.get_den();
  return hilbert_integer(an, bn, p);
}

AlgebraPtr make_algebra(std::int64_t m1) {
  if (m1 < 2 || !is_squarefree(m1) || omega(m1) % 2 == 0)
    throw PreconditionError("invalid ramification: M1 = " + std::to_string(m1) +
                            " must be squarefree with an odd number of prime factors");
  const auto want = prime_factors(m1);
  for (std::int64_t s = 1;; ++s) {
    for (std::int64_t a = 1; a * a <= s; ++a) {
      if (s % a != 0) continue;
      std::int64_t b = s / a;
      if (!is_squarefree(a) || !is_squarefree(b)) continue;
      auto alg = std::make_shared<QuaternionAlgebra>(Rational(-a), Rational(-b));
      if (alg->ramified_finite() == want) return alg;
    }
  }
}

// --- lattices ----------------------------------------------------------------

namespace {

using IntRow = std::array<Integer, 4>;

/// Row Hermite normal form; returns exactly 4 rows or throws on rank < 4.
std::array<IntRow, 4> hnf(std::vector<IntRow> rows) {
  std::size_t k = 0;
  for (std::size_t col = 0; col < 4; ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = k; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
      if (best == rows.size()) break;
      std::swap(rows[k], rows[best]);
      bool done = true;
      for (std::size_t r = k + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[k][col].get_mpz_t());
        for (std::size_t c = col; c < 4; ++c) rows[r][c] -= q * rows[k][c];
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (k >= rows.size() || rows[k][col] == 0) throw PreconditionError("lattice generators have rank < 4");
    if (rows[k][col] < 0)
      for (std::size_t c = col; c < 4; ++c) rows[k][c] = -rows[k][c];
    for (std::size_t r = 0; r < k; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[k][col].get_mpz_t());
      for (std::size_t c = col; c < 4; ++c) rows[r][c] -= q * rows[k][c];
    }
    ++k;
  }
  return {rows[0], rows[1], rows[2], rows[3]};
}

}  // namespace

QuatLattice::QuatLattice(AlgebraPtr alg, const std::vector<QuatElement>& generators, Rational scale)
    : alg_(std::move(alg)), scale_(std::move(scale)) {
  if (scale_ <= 0) throw PreconditionError("lattice scale must be positive");
  Integer den = 1;
  for (const auto& g : generators)
    for (const auto& x : g.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<IntRow> rows;
  rows.reserve(generators.size());
  for (const auto& g : generators) {
    IntRow r;
    for (std::size_t i = 0; i < 4; ++i) {
      Rational t = g.c[i] * Rational(den);
      t.canonicalize();
      r[i] = t.get_num();
    }
    rows.push_back(std::move(r));
  }
  auto h = hnf(std::move(rows));
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < 4; ++i) {
      basis_[k].c[i] = Rational(h[k][i], den);
      basis_[k].c[i].canonicalize();
    }
}

QuatLattice QuatLattice::with_scale(const Rational& s) const {
  QuatLattice out = *this;
  if (s <= 0) throw PreconditionError("lattice scale must be positive");
  out.scale_ = s;
  return out;
}

std::optional<std::array<Integer, 4>> QuatLattice::coordinates(const QuatElement& x) const {
  std::array<Rational, 4> rest = x.c;
  std::array<Integer, 4> out;
  for (std::size_t k = 0; k < 4; ++k) {
    Rational q = rest[k] / basis_[k].c[k];
    if (q.get_den() != 1) return std::nullopt;
    out[k] = q.get_num();
    for (std::size_t i = k; i < 4; ++i) rest[i] -= q * basis_[k].c[i];
  }
  return out;
}

bool QuatLattice::contains(const QuatLattice& other) const {
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

Rational QuatLattice::covolume() const {
  Rational d = 1;
  for (std::size_t k = 0; k < 4; ++k) d *= basis_[k].c[k];
  return d;
}

Rational QuatLattice::norm() const {
  Rational g = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    g = rational_gcd(g, alg_->nrd(basis_[i]));
    for (std::size_t j = i + 1; j < 4; ++j)
      g = rational_gcd(g, alg_->mul(basis_[i], basis_[j].conj()).trd());
  }
  return g;
}

std::string QuatLattice::str() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < 4; ++k) os << (k ? "; " : "") << basis_[k].str();
  return os.str();
}

QuatLattice operator+(const QuatLattice& x, const QuatLattice& y) {
  std::vector<QuatElement> g(x.basis().begin(), x.basis().end());
  g.insert(g.end(), y.basis().begin(), y.basis().end());
  return QuatLattice(x.algebra(), g);
}

QuatLattice operator*(const QuatLattice& x, const QuatLattice& y) {
  std::vector<QuatElement> g;
  g.reserve(16);
  for (const auto& u : x.basis())
    for (const auto& v : y.basis()) g.push_back(x.algebra()->mul(u, v));
  return QuatLattice(x.algebra(), g);
}

QuatLattice left_multiply(const QuatElement& gamma, const QuatLattice& l) {
  std::vector<QuatElement> g;
  for (const auto& b : l.basis()) g.push_back(l.algebra()->mul(gamma, b));
  return QuatLattice(l.algebra(), g);
}

QuatLattice right_multiply(const QuatLattice& l, const QuatElement& gamma) {
  std::vector<QuatElement> g;
  for (const auto& b : l.basis()) g.push_back(l.algebra()->mul(b, gamma));
  return QuatLattice(l.algebra(), g);
}

QuatLattice scaled(const Rational& s, const QuatLattice& l) {
  std::vector<QuatElement> g;
  for (const auto& b : l.basis()) g.push_back(s * b);
  return QuatLattice(l.algebra(), g);
}

QuatLattice conjugate(const QuatLattice& l) {
  std::vector<QuatElement> g;
  for (const auto& b : l.basis()) g.push_back(b.conj());
  return QuatLattice(l.algebra(), g);
}

QuatLattice dual(const QuatLattice& l) {
  QMatrix b = 2 * gram_matrix(*l.algebra(), l.basis());
  QMatrix inv = inverse(b);
  std::vector<QuatElement> g(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) g[i] = g[i] + inv(i, k) * l.basis()[k];
  return QuatLattice(l.algebra(), g);
}

QuatLattice intersect(const QuatLattice& x, const QuatLattice& y) { return dual(dual(x) + dual(y)); }

QuatLattice left_order(const QuatLattice& l) {
  std::optional<QuatLattice> acc;
  for (const auto& b : l.basis()) {
    QuatLattice t = right_multiply(l, l.algebra()->inverse(b));
    acc = acc ? intersect(*acc, t) : t;
  }
  return *acc;
}

QuatLattice right_order(const QuatLattice& l) {
  std::optional<QuatLattice> acc;
  for (const auto& b : l.basis()) {
    QuatLattice t = left_multiply(l.algebra()->inverse(b), l);
    acc = acc ? intersect(*acc, t) : t;
  }
  return *acc;
}

QuatLattice standard_order(const AlgebraPtr& alg) {
  return QuatLattice(alg, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
}

namespace {

bool integral_basis(const QuatLattice& l) {
  const auto& alg = *l.algebra();
  for (std::size_t i = 0; i < 4; ++i) {
    if (l.basis()[i].trd().get_den() != 1 || alg.nrd(l.basis()[i]).get_den() != 1) return false;
    for (std::size_t j = i + 1; j < 4; ++j)
      if (alg.mul(l.basis()[i], l.basis()[j].conj()).trd().get_den() != 1) return false;
  }
  return true;
}

}  // namespace

QuatLattice multiplicative_closure(const QuatLattice& l) {
  std::vector<QuatElement> gens(l.basis().begin(), l.basis().end());
  gens.push_back(QuatElement::scalar(1));
  QuatLattice cur(l.algebra(), gens);
  while (true) {
    if (!integral_basis(cur)) throw PreconditionError("multiplicative closure is not integral");
    QuatLattice next = cur + cur * cur;
    if (next == cur) return cur;
    cur = next;
  }
}

bool is_order(const QuatLattice& l) {
  if (!l.contains(QuatElement::scalar(1))) return false;
  return l.contains(l * l);
}

Integer order_discriminant(const QuatLattice& order) {
  Rational det = determinant(2 * gram_matrix(*order.algebra(), order.basis()));
  if (det.get_den() != 1) throw ConsistencyError("order discriminant is not integral");
  Integer r;
  if (!mpz_perfect_square_p(det.get_num_mpz_t())) throw ConsistencyError("order discriminant is not a square");
  mpz_sqrt(r.get_mpz_t(), det.get_num_mpz_t());
  return r;
}

QMatrix gram_matrix(const QuaternionAlgebra& alg, const std::array<QuatElement, 4>& basis) {
  QMatrix g(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) {
      Rational t = alg.mul(basis[i], basis[j].conj()).trd() / 2;
      g(i, j) = t;
      g(j, i) = t;
    }
  return g;
}

QMatrix gram_matrix(const QuatLattice& l) { return l.scale() * gram_matrix(*l.algebra(), l.basis()); }

// --- LLL ---------------------------------------------------------------------

std::array<QuatElement, 4> reduced_basis(const QuatLattice& l) {
  const auto& alg = *l.algebra();
  std::array<QuatElement, 4> b = l.basis();
  const Rational delta(3, 4);
  std::array<std::array<Rational, 4>, 4> mu{};
  std::array<Rational, 4> bstar_norm{};

  auto gram_schmidt = [&]() {
    QMatrix g = gram_matrix(alg, b);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rational s = g(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * bstar_norm[k];
        mu[i][j] = s / bstar_norm[j];
      }
      Rational s = g(i, i);
      for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * bstar_norm[k];
      bstar_norm[i] = s;
    }
  };

  gram_schmidt();
  std::size_t k = 1;
  while (k < 4) {
    for (std::size_t j = k; j-- > 0;) {
      Rational m = mu[k][j];
      Integer q;
      Rational shifted = m + Rational(1, 2);
      mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
      if (q != 0) {
        b[k] = b[k] - Rational(q) * b[j];
        gram_schmidt();
      }
    }
    if (bstar_norm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar_norm[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return b;
}

// --- isometry ----------------------------------------------------------------

std::optional<QuatElement> lattice_isometry(const QuatLattice& l1, const QuatLattice& l2) {
  if (!(*l1.algebra() == *l2.algebra())) throw PreconditionError("lattices live in different algebras");
  const auto& alg = *l1.algebra();
  QuatLattice t = l1 * conjugate(l2);
  Rational n2 = l2.norm();
  Rational target = l1.norm() * n2;
  auto basis = reduced_basis(t);
  Rational vscale;
  IntegralForm form = IntegralForm::from_gram(gram_matrix(alg, basis), &vscale);
  Rational scaled_target = target * vscale;
  if (scaled_target.get_den() != 1 || !scaled_target.get_num().fits_slong_p()) return std::nullopt;
  const std::int64_t want = scaled_target.get_num().get_si();
  std::optional<QuatElement> found;
  form.for_each_half(want, [&](const std::vector<std::int64_t>& x, std::int64_t v) {
    if (v != want) return true;
    QuatElement e;
    for (std::size_t k = 0; k < 4; ++k) e = e + Rational(x[k]) * basis[k];
    QuatElement gamma = Rational(1) / n2 * e;
    if (left_multiply(gamma, l2) == l1) found = gamma;
    return !found;
  });
  return found;
}

}  // namespace triplel
