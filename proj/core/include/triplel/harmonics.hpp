#pragma once

// Harmonic polynomials on R^3 for a positive definite rational metric A
// (r^2 = x^T A x, Laplacian sum (A^-1)_kl d_k d_l). The default metric is
// the identity; quaternion code uses the norm form on trace-zero elements.
//
// Inner product: <<P, Q>> = [P(A^-1 d) Q] / nu!, which gives <<x1, x1>> = 1
// for A = I and makes K(x, x') = proj_nu((x^T A x')^nu) reproducing.

#include "triplel/arith.hpp"
#include "triplel/matrix.hpp"
#include "triplel/poly.hpp"
#include "triplel/quat.hpp"

#include <vector>

namespace triplel {

/// Laplacian for the metric.
MPoly laplacian(const MPoly& p, const QMatrix& metric = QMatrix::identity(3));
/// r^2 = x^T A x.
MPoly radius_squared(const QMatrix& metric = QMatrix::identity(3));

Rational inner_product(const MPoly& p, const MPoly& q, const QMatrix& metric = QMatrix::identity(3));

/// Degree-d harmonic component h_d of P = sum_j r^{2j} h_{deg-2j}.
MPoly harmonic_project(const MPoly& p, int d, const QMatrix& metric = QMatrix::identity(3));

MPoly reproducing_kernel(int nu, const std::vector<Rational>& xprime, const QMatrix& metric = QMatrix::identity(3));

/// <<proj_{nu3}(P1 P2), P3>>; zero outside the triangle/parity range.
Rational trilinear_T0(const MPoly& p1, const MPoly& p2, const MPoly& p3, const QMatrix& metric = QMatrix::identity(3));

/// P(conj(gamma) x gamma) / nrd(gamma)^nu on trace-zero x = x1 i + x2 j + x3 k.
MPoly tau_action(const QuaternionAlgebra& alg, const QuatElement& gamma, const MPoly& p);

/// Chebyshev-type Gegenbauer polynomial C_mu^{(1)}(t) from its explicit sum.
Rational gegenbauer_1d(int mu, const Rational& t);

/// U_nu for a metric, with a basis that is the identity on a fixed set of
/// `coordinate` monomials (so coordinates are read off directly).
class HarmonicSpace {
 public:
  explicit HarmonicSpace(int nu, QMatrix metric = QMatrix::identity(3));

  int degree() const { return nu_; }
  std::size_t dim() const { return basis_.size(); }
  const QMatrix& metric() const { return metric_; }
  const std::vector<MPoly::Exponent>& monomials() const { return monomials_; }
  const std::vector<MPoly>& basis() const { return basis_; }

  std::vector<Rational> coordinates(const MPoly& h) const;
  MPoly element(const std::vector<Rational>& coords) const;
  /// Matrix of a linear map on polynomials given by its action on basis elements.
  template <class F>
  QMatrix matrix_of(F&& f) const {
    QMatrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      auto c = coordinates(f(basis_[j]));
      for (std::size_t i = 0; i < dim(); ++i) m(i, j) = c[i];
    }
    return m;
  }
  /// Gram matrix of <<,>> on the basis.
  const QMatrix& gram() const { return gram_; }

 private:
  int nu_;
  QMatrix metric_;
  std::vector<MPoly::Exponent> monomials_;
  std::vector<std::size_t> coordinate_index_;
  std::vector<MPoly> basis_;
  QMatrix gram_;
};

struct WeightProfile {
  int k1 = 2, k2 = 2, k3 = 2;  // k1 >= k2 >= k3
  int r = 2;
  int a = 0, a_prime = 0, b = 0, nu2 = 0, nu3 = 0;

  /// Sorts the weights; throws PreconditionError unless all are even >= 2
  /// and k1 < k2 + k3.
  static WeightProfile from_weights(int w1, int w2, int w3);
  int center() const { return (k1 + k2 + k3) / 2 - 1; }
};

/// (r + a')^[b] / (r + s + a')^[b] with rising factorials.
Rational c_factor(const WeightProfile& w, const Rational& s);
double c_factor(const WeightProfile& w, double s);

/// x^[n] = x (x+1) ... (x+n-1).
Rational rising_factorial(const Rational& x, int n);

}  // namespace triplel
