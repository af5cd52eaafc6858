#pragma once

// Short-vector enumeration for positive definite integral quadratic forms.
//
// Pruning uses a long-double LDL^T factorization with a relative safety
// margin, but every emitted vector's value is recomputed in exact integer
// arithmetic, so results are exact as long as the margin covers rounding
// (it does by many orders of magnitude for the small, well-conditioned forms
// used here; the factorization is checked against the exact determinant).

#include "triplel/arith.hpp"
#include "triplel/matrix.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <type_traits>
#include <vector>

namespace triplel {

/// Integer symmetric matrix Q; the form is x^T Q x.
class IntegralForm {
 public:
  explicit IntegralForm(std::vector<std::vector<std::int64_t>> q);
  /// Scales a rational Gram matrix G by the smallest positive d making 2*d*G
  /// integral; values are reported as x^T (2 d G) x.
  static IntegralForm from_gram(const QMatrix& g, Rational* value_scale = nullptr);

  std::size_t dim() const { return q_.size(); }
  std::int64_t entry(std::size_t i, std::size_t j) const { return q_[i][j]; }
  std::int64_t value(const std::int64_t* x) const;

  /// Calls f(x, value) once for every nonzero x with value <= bound, taking
  /// only one of each pair {x, -x} (the one whose last nonzero coordinate is
  /// positive). Vectors are visited in a fixed deterministic order. If f
  /// returns bool, returning false stops the enumeration.
  template <class F>
  void for_each_half(std::int64_t bound, F&& f) const;

 private:
  void factor();

  std::vector<std::vector<std::int64_t>> q_;
  std::vector<long double> diag_;                 // d_i of LDL^T
  std::vector<std::vector<long double>> mu_;      // mu[i][j], j > i
};

/// A vector with its exact value under the form.
struct ShortVector {
  std::vector<std::int64_t> x;
  Rational value;
};

/// All x (both signs, plus zero) with x^T G x <= bound, sorted
/// lexicographically. Throws PreconditionError if G is not positive definite.
std::vector<ShortVector> short_vectors(const QMatrix& gram, const Rational& bound);

// --- implementation -------------------------------------------------------

template <class F>
void IntegralForm::for_each_half(std::int64_t bound, F&& f) const {
  const std::size_t n = q_.size();
  if (bound <= 0 || n == 0) return;
  const long double slack = 1e-9L * static_cast<long double>(bound) + 1e-6L;

  std::vector<std::int64_t> x(n, 0);
  std::vector<long double> rem(n + 1, 0);      // remaining float budget at each level
  std::vector<std::int64_t> exact(n + 1, 0);   // exact partial value of x[i..n-1]
  std::vector<std::int64_t> hi(n, 0);
  std::vector<bool> fixed_sign(n + 1, true);   // all coordinates above i are zero
  std::vector<long double> ctr(n, 0);
  std::vector<std::int64_t> crs(n, 0);
  rem[n] = static_cast<long double>(bound);

  // Exact partial value contribution of coordinate i given x[i+1..].
  auto cross = [&](std::size_t i) {
    std::int64_t s = 0;
    for (std::size_t j = i + 1; j < n; ++j) s += q_[i][j] * x[j];
    return s;
  };
  auto center = [&](std::size_t i) {
    long double c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c -= mu_[i][j] * static_cast<long double>(x[j]);
    return c;
  };

  std::size_t level = n - 1;
  auto init_level = [&](std::size_t i) {
    long double c = center(i);
    ctr[i] = c;
    crs[i] = cross(i);
    long double r = std::sqrt(std::max<long double>(rem[i + 1] + slack, 0) / diag_[i]);
    std::int64_t lo = static_cast<std::int64_t>(std::ceil(c - r - 1e-9L));
    hi[i] = static_cast<std::int64_t>(std::floor(c + r + 1e-9L));
    if (fixed_sign[i + 1] && lo < 0) lo = 0;
    x[i] = lo - 1;  // incremented before use
  };

  init_level(level);
  while (true) {
    ++x[level];
    if (x[level] > hi[level]) {
      if (level == n - 1) break;
      ++level;
      continue;
    }
    const std::int64_t xi = x[level];
    const long double diff = static_cast<long double>(xi) - ctr[level];
    const long double used = diag_[level] * diff * diff;
    if (used > rem[level + 1] + slack) continue;
    if (level == 0) {
      std::int64_t v = exact[1] + q_[0][0] * xi * xi + 2 * xi * crs[0];
      if (v <= bound && v > 0) {
        const auto& cx = x;
        if constexpr (std::is_same_v<std::invoke_result_t<F&, const std::vector<std::int64_t>&, std::int64_t>, bool>) {
          if (!f(cx, v)) return;
        } else {
          f(cx, v);
        }
      }
      continue;
    }
    rem[level] = rem[level + 1] - used;
    exact[level] = exact[level + 1] + q_[level][level] * xi * xi + 2 * xi * crs[level];
    fixed_sign[level] = fixed_sign[level + 1] && xi == 0;
    --level;
    init_level(level);
  }
}

}  // namespace triplel
