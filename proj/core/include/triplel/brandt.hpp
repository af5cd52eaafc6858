#pragma once

// Quaternionic modular forms of weight 2 + 2nu on an Eichler order R.
//
// A form is a function F on right R-ideals with values in U_nu (harmonic
// polynomials on the trace-zero quaternions) such that
// F(gamma I) = tau(gamma) F(I), where
//   tau(gamma) P (x) = P(conj(gamma) x gamma) / nrd(gamma)^nu.
// It is determined by its values at the class representatives I_i, and the
// value at I_i is fixed by the unit group Gamma_i of the left order of I_i.
// The forms space is therefore the direct sum of the invariant subspaces
// U^{Gamma_i}; each one is stored with a basis that is the identity on a
// subset of the harmonic coordinates ("free rows").
//
// The Hecke operator B(n) has blocks
//   B(n)_{ij} = (1/e_j) sum_{gamma in I_i I_j^{-1}, nrd(gamma) = n nrd(I_i)/nrd(I_j)} n^nu tau(gamma),
// so B(1) is the identity on forms and B(p) has eigenvalue a(p) on the form
// attached to a newform.

#include "triplel/harmonics.hpp"
#include "triplel/newform.hpp"
#include "triplel/orders.hpp"
#include "triplel/theta.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace triplel {

using ClassSetPtr = std::shared_ptr<const IdealClassSet>;

class FormSpace {
 public:
  FormSpace(ClassSetPtr classes, int nu);

  const IdealClassSet& classes() const { return *classes_; }
  const ClassSetPtr& class_set() const { return classes_; }
  const AlgebraPtr& algebra() const { return classes_->order.algebra(); }
  std::int64_t level() const { return classes_->order.level(); }
  int nu() const { return nu_; }
  const HarmonicSpace& harmonics() const { return harmonics_; }

  std::size_t dim() const { return dim_; }
  std::size_t classes_count() const { return classes_->size(); }
  std::size_t block_dim(std::size_t i) const { return invariant_[i].cols(); }
  std::size_t block_offset(std::size_t i) const { return offset_[i]; }
  /// (2nu+1) x d_i, columns spanning U^{Gamma_i}.
  const QMatrix& invariant_basis(std::size_t i) const { return invariant_[i]; }
  const std::vector<std::size_t>& free_rows(std::size_t i) const { return free_rows_[i]; }
  /// <F, G> = sum_i <<F(I_i), G(I_i)>> / e_i on forms-space coordinates.
  const QMatrix& gram() const { return gram_; }

  /// tau(gamma) on harmonic coordinates.
  QMatrix tau(const QuatElement& gamma) const;

  /// F(I_i) in harmonic coordinates.
  template <class T>
  std::vector<T> value(const std::vector<T>& f, std::size_t i) const;
  /// Block-i coordinates of a Gamma_i-invariant harmonic vector.
  template <class T>
  std::vector<T> block_coordinates(const std::vector<T>& u, std::size_t i) const;

  template <class T>
  T inner(const std::vector<T>& f, const std::vector<T>& g) const;

 private:
  ClassSetPtr classes_;
  int nu_;
  HarmonicSpace harmonics_;
  std::vector<QMatrix> invariant_;
  std::vector<std::vector<std::size_t>> free_rows_;
  std::vector<std::size_t> offset_;
  std::size_t dim_ = 0;
  QMatrix gram_;
};

using FormSpacePtr = std::shared_ptr<const FormSpace>;

/// B(n) as an h x h array of endomorphisms of U_nu in harmonic coordinates.
struct BrandtMatrix {
  std::int64_t n = 1;
  int nu = 0;
  std::size_t h = 0;
  std::vector<QMatrix> blocks;  // row-major

  const QMatrix& block(std::size_t i, std::size_t j) const { return blocks[i * h + j]; }
};

/// Theta moments of the lattices I_i I_j^{-1} up to nmax, for the rows i
/// requested (all rows by default), and the Brandt matrices built from them.
class BrandtEngine {
 public:
  BrandtEngine(FormSpacePtr space, std::int64_t nmax, std::vector<std::size_t> rows = {});

  const FormSpace& space() const { return *space_; }
  std::int64_t nmax() const { return nmax_; }

  QMatrix block(std::size_t i, std::size_t j, std::int64_t n) const;
  BrandtMatrix brandt_matrix(std::int64_t n) const;
  /// B(n) on forms-space coordinates.
  QMatrix matrix(std::int64_t n) const;
  /// (B(n) F)(I_i) in harmonic coordinates.
  template <class T>
  std::vector<T> apply_at(std::size_t i, std::int64_t n, const std::vector<T>& f) const;

 private:
  struct Pair {
    ThetaMoments moments;
    std::vector<QMatrix> tau_terms;  // one per degree-2nu monomial
  };
  const Pair& pair(std::size_t i, std::size_t j) const;

  FormSpacePtr space_;
  std::int64_t nmax_;
  std::vector<std::size_t> rows_;
  std::vector<int> row_slot_;  // class index -> position in rows_, or -1
  std::vector<Pair> pairs_;
};

BrandtMatrix brandt_matrix(const FormSpacePtr& space, std::int64_t n);

/// Matrices T_alpha with P(conj(v) x v) = sum_alpha c^alpha T_alpha P for
/// v = sum_k c_k basis[k], on harmonic coordinates.
std::vector<QMatrix> tau_monomial_matrices(const QuaternionAlgebra& alg, const std::array<QuatElement, 4>& basis,
                                           const HarmonicSpace& u);

struct ALInvolution {
  std::int64_t p = 0;
  std::vector<std::size_t> target;  // I_i P ~ I_target[i]
  std::vector<QuatElement> twist;   // twist[i] * reps[target[i]] == reps[i] * P
};

/// Right multiplication by the two-sided ideal R cap p R^# of norm p.
ALInvolution atkin_lehner_involution(const IdealClassSet& classes, std::int64_t p);
/// (w F)(I_i) = tau(twist_i) F(I_target(i)) on forms-space coordinates.
QMatrix atkin_lehner_matrix(const FormSpace& space, const ALInvolution& w);

/// Pullback of forms on a coarser order R' (containing R) to R:
/// F(I) = F'(I R'). Both spaces must share algebra and nu.
QMatrix pullback_matrix(const FormSpace& fine, const FormSpace& coarse);

struct QuatEigenform {
  FormSpacePtr space;
  /// Exact forms-space coordinates (when `exact`), scaled so that the first
  /// nonzero coordinate is 1.
  bool exact = true;
  std::vector<QuadNum> coords;
  /// Coordinates normalized to <phi, phi> = 1.
  std::vector<double> normalized;
  long field = 1;  // Q(sqrt field); 0 when only approximate
  QuadNum norm_sq;
  double norm_sq_approx = 0;
  std::map<std::int64_t, QuadNum> hecke_exact;
  std::map<std::int64_t, double> hecke;
  std::map<std::int64_t, int> atkin_lehner;  // eigenvalues of the quaternionic w_p
  std::vector<std::int64_t> old_at;          // p | M2 where the form is not p-essential
  bool constant = false;

  bool cuspidal() const { return !constant; }
  bool essential() const { return !constant && old_at.empty(); }
  /// Normalized value at class i in harmonic coordinates.
  std::vector<double> value(std::size_t i) const;
  /// Exact (unnormalized) value at class i.
  std::vector<QuadNum> exact_value(std::size_t i) const;
};

struct EigenformOptions {
  /// Good primes whose Hecke operators separate the eigenspaces; more are
  /// added automatically (up to 100) if needed.
  std::vector<std::int64_t> primes_used;
  /// Classify p-essential forms by comparing with coarser orders.
  bool essential_test = true;
};

/// Simultaneous eigenbasis of the B(p) and the w_p. Throws
/// ConsistencyError("needs more primes") if eigenspaces cannot be split.
std::vector<QuatEigenform> eigenforms(const FormSpacePtr& space, const EigenformOptions& opts = {});

/// Atkin-Lehner eigenvalue of the newform attached to a quaternionic form
/// with w_p eigenvalue `w`: equal at split p, opposite at ramified p.
int epsilon_from_quaternionic(int w, bool ramified);

/// Coefficients a(n), n <= nmax, of the newform attached to an essential
/// eigenform, with epsilon_p from the w_p eigenvalue (sign flipped at
/// ramified primes).
NewformData newform_coeffs(const QuatEigenform& form, std::int64_t nmax);

/// sum_{ij} phi_i phi_j / (e_i e_j) theta(I_i I_j^{-1}) scaled to first
/// coefficient 1 (nu = 0 only); exact.
std::vector<QuadNum> yoshida_lift0(const QuatEigenform& form, std::int64_t q_prec);

// --- implementation -------------------------------------------------------

template <class T>
std::vector<T> FormSpace::value(const std::vector<T>& f, std::size_t i) const {
  const QMatrix& v = invariant_[i];
  std::vector<T> out(v.rows(), T(0));
  for (std::size_t r = 0; r < v.rows(); ++r)
    for (std::size_t c = 0; c < v.cols(); ++c)
      if (v(r, c) != 0) out[r] += from_rational<T>(v(r, c)) * f[offset_[i] + c];
  return out;
}

template <class T>
std::vector<T> FormSpace::block_coordinates(const std::vector<T>& u, std::size_t i) const {
  std::vector<T> out;
  out.reserve(free_rows_[i].size());
  for (auto r : free_rows_[i]) out.push_back(u[r]);
  return out;
}

template <class T>
T FormSpace::inner(const std::vector<T>& f, const std::vector<T>& g) const {
  T s(0);
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = 0; b < dim_; ++b)
      if (gram_(a, b) != 0) s += f[a] * from_rational<T>(gram_(a, b)) * g[b];
  return s;
}

template <class T>
std::vector<T> BrandtEngine::apply_at(std::size_t i, std::int64_t n, const std::vector<T>& f) const {
  const std::size_t u = space_->harmonics().dim();
  std::vector<T> out(u, T(0));
  for (std::size_t j = 0; j < space_->classes_count(); ++j) {
    QMatrix b = block(i, j, n);
    if (b.is_zero_matrix()) continue;
    auto fj = space_->value(f, j);
    for (std::size_t r = 0; r < u; ++r)
      for (std::size_t c = 0; c < u; ++c)
        if (b(r, c) != 0) out[r] += from_rational<T>(b(r, c)) * fj[c];
  }
  return out;
}

}  // namespace triplel
