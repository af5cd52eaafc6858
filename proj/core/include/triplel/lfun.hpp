#pragma once

// Triple product L-function of three newforms f, phi, psi of squarefree
// levels and even weights k1 >= k2 >= k3 with k1 < k2 + k3, in the
// arithmetic normalization
//   L(s) = prod_p P_p(p^{-s})^{-1},  center kappa = (k1+k2+k3)/2 - 1,
//   Lambda(s) = L_inf(s) L(s),  L_inf(s) = G_C(s) G_C(s+1-k1) G_C(s+1-k2) G_C(s+1-k3),
//   Lambda*(s) = Q^{s/2} Lambda(s) = w Lambda*(2 kappa - s),  Q = N^4 gcd(N_f, N_phi, N_psi).
//
// Local inverse polynomials P_p by the divisibility pattern of p:
//   IA  p | all levels:    (1 - cX)(1 - cpX)^2,  c = a_f a_phi a_psi (p)
//   IB  p | two levels:    (1 - a d X)(1 - a' d X)(1 - a d p X)(1 - a' d p X),
//                          d = product of the two ramified a(p), a, a' Satake of the third form
//   IC  p | one level:     prod (1 - a_f(p) b c X) over b in {beta, beta'}, c in {gamma, gamma'}
//   ID  p good:            prod (1 - alpha beta gamma X) over all eight Satake products.
// Every case is computed from power sums of its roots and Newton's identities,
// which keeps the coefficients in the field of the inputs.

#include "triplel/afe.hpp"
#include "triplel/harmonics.hpp"
#include "triplel/newform.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace triplel {

/// Roots of X^2 - a X + p^{k-1}: nonnegative imaginary part first, then the
/// larger real part.
std::pair<cplx, cplx> satake(double ap, int k, std::int64_t p);

enum class LocalCase { IA, IB, IC, ID };
const char* to_string(LocalCase c);

struct TripleL {
  std::array<NewformData, 3> forms;  // sorted by weight, k1 >= k2 >= k3
  WeightProfile profile;
  std::int64_t level = 1;  // lcm of the levels
  std::int64_t gcd = 1;    // gcd of the levels

  int center() const { return profile.center(); }
  std::int64_t nmax() const;
  /// All three forms carry exact coefficients in one common field.
  bool exact() const;
  std::string label() const;
  LocalCase local_case(std::int64_t p) const;
};

/// Validates and sorts (stable, by weight descending). Throws
/// PreconditionError for non-squarefree levels or unbalanced weights.
TripleL make_triple(NewformData f, NewformData phi, NewformData psi);

struct LocalFactor {
  std::int64_t p = 0;
  LocalCase kind = LocalCase::ID;
  std::vector<double> coeffs;                       // inverse polynomial, coeffs[0] = 1
  std::optional<std::vector<QuadNum>> exact;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

LocalFactor local_factor(std::int64_t p, const TripleL& t);

/// b(0..nmax) with b(0) = 0; throws PrecisionError if the forms do not reach nmax.
std::vector<double> dirichlet_coeffs(const TripleL& t, std::int64_t nmax);
std::optional<std::vector<QuadNum>> dirichlet_coeffs_exact(const TripleL& t, std::int64_t nmax);

/// L_inf(s); throws PreconditionError at a pole.
cplx gamma_factor(const TripleL& t, cplx s);
std::vector<GammaShift> triple_gamma_shifts(const WeightProfile& w);

struct SignConductor {
  int w = 1;
  std::int64_t conductor = 1;
  std::map<std::int64_t, int> eps;
};

SignConductor sign_and_conductor(const TripleL& t);

/// Completed series Lambda* data with coefficients up to nmax.
LSeriesData triple_lseries(const TripleL& t, std::int64_t nmax);
LSeriesData triple_lseries(const TripleL& t, std::int64_t nmax, const SignConductor& sc);

/// Number of coefficients the AFE needs at s for relative accuracy rel_prec.
std::int64_t lambda_terms(const TripleL& t, cplx s, double rel_prec, double x = 1.2);

struct LambdaValue {
  cplx completed;  // Lambda*(s)
  cplx value;      // Lambda(s) = L_inf(s) L(s)
  double scale = 0;
  double tail_bound = 0;
  std::int64_t terms = 0;
};

LambdaValue lambda_value(const TripleL& t, cplx s, double rel_prec = 1e-10, double x = 1.2);
LambdaValue lambda_value(const LSeriesData& l, cplx s, double rel_prec = 1e-10, double x = 1.2);

struct FeResidual {
  cplx t;
  cplx left;   // Lambda*(kappa + t)
  cplx right;  // w Lambda*(kappa - t)
  double residual = 0;
};

struct FeAlternative {
  int n_exp = 4, g_exp = 1, sign = 1;
  double residual = 0;
  double precision = 0;  // AFE precision used; 0 if not evaluable with the coefficients at hand
};

struct FeReport {
  std::vector<FeResidual> points;
  double max_residual = 0;
  double scale = 0;  // largest |Lambda*(kappa + t)| over the offsets
  /// Filled in diagnostic mode: residuals for Q = N^a gcd^b and both signs,
  /// best first; nominal_is_best when no alternative fits strictly better.
  std::vector<FeAlternative> alternatives;
  bool nominal_is_best = true;
};

/// Residuals |Lambda*(kappa+t) - w Lambda*(kappa-t)| / max(|Lambda*(kappa+t)|, scale * 1e-3)
/// for a self-dual series; the two sides are evaluated with AFE parameter x,
/// which makes the comparison sensitive to wrong data.
FeReport check_fe(const LSeriesData& l, const std::vector<cplx>& offsets, double x = 1.2, double rel_prec = 1e-12);
FeReport check_fe(const TripleL& t, const std::vector<cplx>& offsets, bool diagnostic = false, double x = 1.2);

/// L(f, s) of a newform: Lambda* = N^{s/2} G_C(s) L(f, s), sign (-1)^{k/2} prod eps_p.
LSeriesData newform_lseries(const NewformData& f);
/// L(Sym^2 f, s): Lambda* = N^s G_R(s - k + 2) G_C(s) L, sign +1.
LSeriesData symmetric_square_lseries(const NewformData& f, std::int64_t nmax);
std::int64_t symmetric_square_terms(const NewformData& f, double rel_prec = 1e-12);

struct PeterssonNorm {
  double rankin_selberg = 0;
  double quadrature = 0;
  double rel_diff = 0;
  double value() const { return rankin_selberg; }
};

/// <f, f> over Gamma_0(N)\H with dx dy / y^2, by
///   (1) <f, f> = 2 N Gamma(k) L(Sym^2 f, k) / (pi (4 pi)^k), and
///   (2) quadrature over the Gamma_0(N) cosets of the SL2(Z) fundamental domain.
/// Throws ConsistencyError if the two disagree beyond rel_prec.
PeterssonNorm petersson_norm(const NewformData& f, double rel_prec = 1e-6);
/// Method (2) over Gamma_0(domain_level), a multiple of the level of f.
double petersson_quadrature(const NewformData& f, std::int64_t domain_level);
double petersson_rankin_selberg(const NewformData& f);
/// Coefficients needed by petersson_norm.
std::int64_t petersson_terms(const NewformData& f);

/// COEFFS v1 text format.
std::string write_coeffs(const NewformData& f);
/// Parses and validates; throws PreconditionError with the first failure.
NewformData read_coeffs(const std::string& text);

}  // namespace triplel
