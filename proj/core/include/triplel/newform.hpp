#pragma once

// Fourier coefficients of a normalized newform of squarefree level.

#include "triplel/quadnum.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace triplel {

struct NewformData {
  std::int64_t level = 1;
  int weight = 2;
  std::string label;
  /// a(n) for n = 0..nmax (a(0) = 0), in the real embedding fixed by the
  /// positive square root of the field discriminant.
  std::vector<double> coeffs;
  /// The same coefficients exactly, when they lie in Q or Q(sqrt d).
  std::optional<std::vector<QuadNum>> exact;
  /// epsilon_p = -a(p) p^{1 - k/2} for p | level.
  std::map<std::int64_t, int> al_eigen;
  /// Squarefree d with coefficient field Q(sqrt d); 1 for Q, 0 if unknown.
  long field = 1;

  std::int64_t nmax() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
  double a(std::int64_t n) const { return coeffs.at(static_cast<std::size_t>(n)); }
};

/// Extends a(p) (p <= nmax prime) to all n <= nmax by multiplicativity and
/// the Hecke recursion; a(p^l) = a(p)^l for p | level.
template <class T>
std::vector<T> extend_multiplicative(const std::vector<T>& ap, std::int64_t level, int weight);

/// Throws ConsistencyError unless the coefficient table satisfies the
/// newform invariants up to `tolerance` (0 for exact checks via doubles that
/// are integral).
void validate_newform(const NewformData& f, double tolerance = 1e-6);

}  // namespace triplel

#include "triplel/arith.hpp"

namespace triplel {

template <class T>
std::vector<T> extend_multiplicative(const std::vector<T>& ap, std::int64_t level, int weight) {
  const std::int64_t nmax = static_cast<std::int64_t>(ap.size()) - 1;
  std::vector<T> a(ap.size(), T(0));
  if (nmax >= 1) a[1] = T(1);
  for (std::int64_t n = 2; n <= nmax; ++n) {
    std::int64_t p = 2;
    while (n % p != 0) ++p;
    std::int64_t pe = 1;
    int e = 0;
    std::int64_t m = n;
    while (m % p == 0) {
      m /= p;
      pe *= p;
      ++e;
    }
    if (m > 1) {
      a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(pe)] * a[static_cast<std::size_t>(m)];
      continue;
    }
    const T& app = ap[static_cast<std::size_t>(p)];
    if (e == 1) {
      a[static_cast<std::size_t>(n)] = app;
    } else if (level % p == 0) {
      a[static_cast<std::size_t>(n)] = app * a[static_cast<std::size_t>(n / p)];
    } else {
      T pk(1);
      for (int k = 0; k < weight - 1; ++k) pk = pk * T(p);
      a[static_cast<std::size_t>(n)] =
          app * a[static_cast<std::size_t>(n / p)] - pk * a[static_cast<std::size_t>(n / p / p)];
    }
  }
  return a;
}

}  // namespace triplel
