#pragma once

// Theta series and harmonic moments of quaternion lattices under their
// normalized norm form q(v) = nrd(v) / nrd(L).

#include "triplel/enumerate.hpp"
#include "triplel/quat.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace triplel {

/// A lattice on an LLL-reduced basis together with the integral form
/// v -> 2 * nrd(v) / nrd(L).
class NormalizedLattice {
 public:
  explicit NormalizedLattice(const QuatLattice& l);

  const std::array<QuatElement, 4>& basis() const { return basis_; }
  const Rational& norm() const { return norm_; }
  const IntegralForm& form() const { return form_; }
  const QuatLattice& lattice() const { return lattice_; }
  QuatElement element(const std::vector<std::int64_t>& x) const;

 private:
  QuatLattice lattice_;
  std::array<QuatElement, 4> basis_;
  Rational norm_;
  IntegralForm form_;
};

/// Representation counts r(n) = #{v : q(v) = n}, n = 0..nmax.
std::vector<std::int64_t> theta_series(const QuatLattice& l, std::int64_t nmax);

/// Exponent vectors of all monomials of total degree `degree` in `nvars`
/// variables, in lexicographically decreasing order.
std::vector<std::vector<int>> monomial_exponents(int nvars, int degree);

/// For each n <= nmax and each degree-`degree` monomial m in the four
/// reduced-basis coordinates c, the sum of m(c) over all v with q(v) = n.
/// Entry [n * monomials + k]. degree must be even (uses v <-> -v symmetry).
struct ThetaMoments {
  int degree = 0;
  std::int64_t nmax = 0;
  std::vector<std::vector<int>> exponents;
  std::vector<std::int64_t> sums;

  std::size_t monomials() const { return exponents.size(); }
  const std::int64_t* at(std::int64_t n) const { return sums.data() + n * static_cast<std::int64_t>(monomials()); }
};

ThetaMoments theta_moments(const NormalizedLattice& l, int degree, std::int64_t nmax);

}  // namespace triplel
