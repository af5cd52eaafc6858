#include "triplel/newform.hpp"

#include <cmath>

namespace triplel {

void validate_newform(const NewformData& f, double tolerance) {
  const std::int64_t nmax = f.nmax();
  if (nmax < 1) throw ConsistencyError(f.label + ": empty coefficient table");
  auto bad = [&](const std::string& what, std::int64_t n) {
    throw ConsistencyError(f.label + ": " + what + " fails at n = " + std::to_string(n));
  };
  auto close = [&](double x, double y) { return std::abs(x - y) <= tolerance * std::max(1.0, std::abs(y)); };
  if (!close(f.a(1), 1.0)) bad("a(1) = 1", 1);
  const int k = f.weight;
  for (std::int64_t p : primes_up_to(nmax)) {
    double ap = f.a(p);
    if (f.level % p == 0) {
      double pk = std::pow(static_cast<double>(p), k - 2);
      if (!close(ap * ap, pk)) bad("a(p)^2 = p^(k-2)", p);
      auto it = f.al_eigen.find(p);
      if (it == f.al_eigen.end() || !close(-ap * std::pow(static_cast<double>(p), 1.0 - k / 2.0), it->second))
        bad("epsilon_p = -a(p) p^(1-k/2)", p);
    } else {
      double bound = 2 * std::pow(static_cast<double>(p), (k - 1) / 2.0);
      if (std::abs(ap) > bound * (1 + 1e-9) + tolerance) bad("Ramanujan bound", p);
      if (p * p <= nmax) {
        double lhs = f.a(p * p);
        double rhs = ap * ap - std::pow(static_cast<double>(p), k - 1);
        if (!close(lhs, rhs)) bad("Hecke recursion", p * p);
      }
    }
  }
  for (std::int64_t m = 2; m <= nmax; ++m)
    for (std::int64_t n = m + 1; m * n <= nmax; ++n)
      if (gcd64(m, n) == 1 && !close(f.a(m * n), f.a(m) * f.a(n))) bad("multiplicativity", m * n);
}

}  // namespace triplel
