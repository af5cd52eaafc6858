#include "triplel/enumerate.hpp"

#include <algorithm>

namespace triplel {

namespace {

bool positive_definite(const QMatrix& g) {
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    QMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = g(i, j);
    if (determinant(minor) <= 0) return false;
  }
  return true;
}

}  // namespace

IntegralForm::IntegralForm(std::vector<std::vector<std::int64_t>> q) : q_(std::move(q)) {
  for (std::size_t i = 0; i < q_.size(); ++i) {
    if (q_[i].size() != q_.size()) throw PreconditionError("IntegralForm: matrix not square");
    for (std::size_t j = 0; j < i; ++j)
      if (q_[i][j] != q_[j][i]) throw PreconditionError("IntegralForm: matrix not symmetric");
  }
  factor();
}

void IntegralForm::factor() {
  const std::size_t n = q_.size();
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long double>(q_[i][j]);
  diag_.assign(n, 0);
  mu_.assign(n, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a[i][i] > 0)) throw PreconditionError("quadratic form is not positive definite");
    diag_[i] = a[i][i];
    for (std::size_t j = i + 1; j < n; ++j) mu_[i][j] = a[i][j] / a[i][i];
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = i + 1; l < n; ++l) a[j][l] -= mu_[i][j] * a[i][l];
  }
}

IntegralForm IntegralForm::from_gram(const QMatrix& g, Rational* value_scale) {
  if (g.rows() != g.cols()) throw PreconditionError("Gram matrix not square");
  if (!positive_definite(g)) throw PreconditionError("Gram matrix is not positive definite");
  Integer d = 1;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      Rational t = 2 * g(i, j);
      t.canonicalize();
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), t.get_den_mpz_t());
    }
  std::vector<std::vector<std::int64_t>> q(g.rows(), std::vector<std::int64_t>(g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      Rational t = 2 * Rational(d) * g(i, j);
      t.canonicalize();
      if (!t.get_num().fits_slong_p()) throw PreconditionError("Gram entries too large for enumeration");
      q[i][j] = t.get_num().get_si();
    }
  if (value_scale) *value_scale = 2 * Rational(d);
  return IntegralForm(std::move(q));
}

std::int64_t IntegralForm::value(const std::int64_t* x) const {
  std::int64_t v = 0;
  for (std::size_t i = 0; i < q_.size(); ++i)
    for (std::size_t j = 0; j < q_.size(); ++j) v += x[i] * q_[i][j] * x[j];
  return v;
}

std::vector<ShortVector> short_vectors(const QMatrix& gram, const Rational& bound) {
  Rational scale;
  IntegralForm form = IntegralForm::from_gram(gram, &scale);
  std::vector<ShortVector> out;
  out.push_back({std::vector<std::int64_t>(gram.rows(), 0), Rational(0)});
  if (bound < 0) return {};
  Rational scaled_bound = bound * scale;
  Integer ib = scaled_bound.get_num() / scaled_bound.get_den();
  if (!ib.fits_slong_p()) throw PreconditionError("short_vectors: bound too large");
  form.for_each_half(ib.get_si(), [&](const std::vector<std::int64_t>& x, std::int64_t v) {
    Rational val = Rational(v) / scale;
    val.canonicalize();
    out.push_back({x, val});
    std::vector<std::int64_t> neg(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
    out.push_back({std::move(neg), val});
  });
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) { return a.x < b.x; });
  return out;
}

}  // namespace triplel
