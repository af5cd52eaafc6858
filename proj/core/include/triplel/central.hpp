#pragma once

// Central critical value of the triple product L-function as a height:
//
//   L(kappa) = C(k1, k2, k3, gcd) <f,f> <phi,phi> <psi,psi> H^2,
//   H = sum_i T0(w_{L1} phi_1(y_i), w_{L2} phi_2(y_i), w_{L3} phi_3(y_i)) / e_i,
//
// with the quaternionic forms phi_k essential at their own levels,
// normalized to <phi_k, phi_k> = 1 there and pulled back to the Eichler
// order of level N = M1 M2 in the algebra ramified at M1 and infinity.

#include "triplel/brandt.hpp"
#include "triplel/lfun.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace triplel {

/// Newforms of the given level and weight with labels level.weight.index,
/// ordered by their coefficient sequences; coefficients up to nmax.
std::vector<NewformData> enumerate_newforms(std::int64_t level, int weight, std::int64_t nmax);

struct Decomposition {
  std::int64_t m1 = 1, m2 = 1;
  bool zero = false;
  std::string reason;  // set when zero
};

Decomposition select_decomposition(const TripleL& t);

using LambdaSets = std::array<std::vector<std::int64_t>, 3>;

/// Primes dividing exactly one level go to the lowest-indexed other form.
LambdaSets lambda_assignment(const TripleL& t);

struct HeightOptions {
  /// Replaces e_i in the height sum (negative controls only).
  std::vector<int> unit_orders_override;
};

struct Height {
  double value = 0;  // H with normalized forms (sign depends on the forms' signs)
  double square = 0;
  std::optional<QuadNum> square_exact;  // H^2 exactly, when every form is exact
  std::size_t classes = 0;
};

Height height_pairing(const TripleL& t, const Decomposition& d, const LambdaSets& lambda, const HeightOptions& opts = {});

/// (-1)^{a'} 2^{5+4a+3b-omega(gcd)} (a'+1)^[b] / (2^[a+b] 2^[a'] (nu2+1)^[a'] (nu3+1)^[a']);
/// the full constant is this times pi^{central_pi_power}.
Rational central_constant(const WeightProfile& w, std::int64_t gcd);
int central_pi_power(const WeightProfile& w);

struct CentralOptions {
  double tol = 1e-4;
  /// Calibration scalar for weights other than (2, 2, 2); determined from
  /// the AFE value when absent.
  std::optional<double> calibration;
  HeightOptions height;
};

struct CentralValueReport {
  std::string label;
  Decomposition decomposition;
  LambdaSets lambda;
  Height height;
  Rational constant = 0;
  int pi_power = 5;
  std::array<PeterssonNorm, 3> petersson{};
  double calibration = 1;
  bool calibrated = false;  // calibration derived from this triple's AFE value
  double central_value = 0;
  double afe_value = 0;
  double afe_scale = 0;
  double rel_diff = 0;
  int sign = 1;
  bool pass = false;
  std::vector<std::string> findings;

  std::string text() const;
  std::string kv() const;
};

/// Coefficients the central-value computation needs from each form.
std::int64_t central_terms(const TripleL& t);

CentralValueReport central_value(const TripleL& t, const CentralOptions& opts = {});

/// central_value at tolerance rel_tol; the report's `pass` and `rel_diff` carry the verdict.
CentralValueReport verify_central(const TripleL& t, double rel_tol = 1e-4);

}  // namespace triplel
