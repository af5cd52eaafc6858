#pragma once

// Smoothed approximate functional equation for self-dual L-series
//   Lambda*(s) = Q^{s/2} gamma(s) L(s),  Lambda*(s) = w Lambda*(2c - s),
// with gamma a product of Gamma_R(s + mu) = pi^{-(s+mu)/2} Gamma((s+mu)/2)
// and Gamma_C(s + mu) = (2 pi)^{-(s+mu)} Gamma(s + mu).
//
// With the test function X^z:
//   Lambda*(s) = sum_n b(n) n^{-s} V_s(n / X) + w sum_n b(n) n^{s-2c} V_{2c-s}(n X),
//   V_s(y) = (1 / 2 pi i) int_{(sigma)} Q^{(s+z)/2} gamma(s+z) y^{-z} dz / z.
// The result does not depend on X exactly when the functional equation
// holds, which is what check_fe measures.

#include <complex>
#include <cstdint>
#include <vector>

namespace triplel {

using cplx = std::complex<double>;

struct GammaShift {
  bool complex_type = true;  // Gamma_C when true, Gamma_R otherwise
  double mu = 0;
};

struct LSeriesData {
  std::vector<GammaShift> gamma;
  double conductor = 1;
  int sign = 1;
  double center = 0.5;      // functional equation s <-> 2 center - s
  double coeff_growth = 0;  // |b(n)| <= degree * n^{coeff_growth} * n^eps
  int degree = 1;
  std::vector<double> coeffs;  // b(0..nmax), b(0) unused
};

/// log of gamma(s) (without the conductor).
cplx log_gamma_factor(const std::vector<GammaShift>& gamma, cplx s);

/// V_s(y) on a grid of y values for fixed s, by trapezoidal integration on a
/// vertical line (exponentially convergent for this analytic integrand).
class MellinKernel {
 public:
  MellinKernel(const LSeriesData& l, cplx s, double step = 0.05);
  cplx operator()(double y) const;
  /// Magnitude of the integrand at z = sigma, a scale for cancellation.
  double scale() const { return scale_; }

 private:
  double sigma_ = 1;
  double step_;
  std::vector<cplx> weights_;  // node j: t = j * step, j = 0..J (and the conjugate side)
  std::vector<cplx> weights_neg_;
  double scale_ = 0;
};

struct AfeResult {
  cplx value;               // Lambda*(s)
  double abs_sum = 0;       // sum of absolute values of all terms
  std::int64_t terms = 0;   // largest n used
  double tail_bound = 0;    // estimated contribution of omitted terms
};

/// Number of coefficients needed for relative accuracy eps at s with parameter x.
std::int64_t afe_length(const LSeriesData& l, cplx s, double x, double eps);

/// Lambda*(s); throws PrecisionError if more coefficients are needed than supplied.
AfeResult completed_value(const LSeriesData& l, cplx s, double x = 1.2, double eps = 1e-12);

/// Partial Dirichlet sum sum_{n<=nmax} b(n) n^{-s}.
cplx dirichlet_sum(const LSeriesData& l, cplx s);

}  // namespace triplel
