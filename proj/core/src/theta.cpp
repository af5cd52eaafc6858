#include "triplel/theta.hpp"

#include <limits>

namespace triplel {

namespace {

QMatrix normalized_gram(const QuaternionAlgebra& alg, const std::array<QuatElement, 4>& basis, const Rational& norm) {
  return (Rational(1) / norm) * gram_matrix(alg, basis);
}

IntegralForm doubled_form(const QMatrix& g) {
  std::vector<std::vector<std::int64_t>> q(4, std::vector<std::int64_t>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Rational t = 2 * g(i, j);
      if (t.get_den() != 1 || !t.get_num().fits_slong_p())
        throw ConsistencyError("normalized norm form is not integral");
      q[i][j] = t.get_num().get_si();
    }
  return IntegralForm(std::move(q));
}

}  // namespace

NormalizedLattice::NormalizedLattice(const QuatLattice& l)
    : lattice_(l),
      basis_(reduced_basis(l)),
      norm_(l.norm()),
      form_(doubled_form(normalized_gram(*l.algebra(), basis_, norm_))) {}

QuatElement NormalizedLattice::element(const std::vector<std::int64_t>& x) const {
  QuatElement e;
  for (std::size_t k = 0; k < 4; ++k)
    if (x[k] != 0) e = e + Rational(x[k]) * basis_[k];
  return e;
}

std::vector<std::int64_t> theta_series(const QuatLattice& l, std::int64_t nmax) {
  NormalizedLattice nl(l);
  std::vector<std::int64_t> r(static_cast<std::size_t>(nmax + 1), 0);
  r[0] = 1;
  nl.form().for_each_half(2 * nmax, [&](const std::vector<std::int64_t>&, std::int64_t v) { r[v / 2] += 2; });
  return r;
}

std::vector<std::vector<int>> monomial_exponents(int nvars, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == nvars - 1) {
      e[static_cast<std::size_t>(var)] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(var)] = k;
      self(self, var + 1, left - k);
    }
  };
  if (nvars == 0) return degree == 0 ? std::vector<std::vector<int>>{{}} : out;
  rec(rec, 0, degree);
  return out;
}

ThetaMoments theta_moments(const NormalizedLattice& l, int degree, std::int64_t nmax) {
  if (degree % 2 != 0) throw PreconditionError("theta_moments: degree must be even");
  ThetaMoments tm;
  tm.degree = degree;
  tm.nmax = nmax;
  tm.exponents = monomial_exponents(4, degree);
  const std::size_t nm = tm.monomials();
  tm.sums.assign(static_cast<std::size_t>(nmax + 1) * nm, 0);
  if (degree == 0) tm.sums[0] = 1;

  // powers[var][e] for the current vector, degree <= 8 in practice.
  std::vector<std::array<std::int64_t, 4>> flat;  // exponent table per monomial
  for (const auto& e : tm.exponents) flat.push_back({e[0], e[1], e[2], e[3]});
  std::array<std::array<std::int64_t, 16>, 4> pw{};
  const std::int64_t limit = std::numeric_limits<std::int64_t>::max() / 4;

  l.form().for_each_half(2 * nmax, [&](const std::vector<std::int64_t>& x, std::int64_t v) {
    std::int64_t* dst = tm.sums.data() + (v / 2) * static_cast<std::int64_t>(nm);
    if (degree == 0) {
      dst[0] += 2;
      return;
    }
    for (std::size_t k = 0; k < 4; ++k) {
      pw[k][0] = 1;
      for (int d = 1; d <= degree; ++d) pw[k][static_cast<std::size_t>(d)] = pw[k][static_cast<std::size_t>(d - 1)] * x[k];
    }
    for (std::size_t m = 0; m < nm; ++m) {
      const auto& e = flat[m];
      std::int64_t t = pw[0][static_cast<std::size_t>(e[0])] * pw[1][static_cast<std::size_t>(e[1])] *
                       pw[2][static_cast<std::size_t>(e[2])] * pw[3][static_cast<std::size_t>(e[3])];
      dst[m] += 2 * t;
      if (dst[m] > limit || dst[m] < -limit) throw PrecisionError("theta moment overflow");
    }
  });
  return tm;
}

}  // namespace triplel
