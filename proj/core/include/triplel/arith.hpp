#pragma once

// Exact integer/rational helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace triplel {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an input violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails (mass mismatch, failed
/// isometry search, broken involution, ...).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a numerical routine cannot reach the requested accuracy.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r);
std::string to_string(const Integer& z);
/// Parses `n`, `-n`, `p/q`. Throws PreconditionError on malformed input.
Rational parse_rational(std::string_view text);

bool is_prime(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t n);
/// Prime factors in increasing order, without multiplicity.
std::vector<std::int64_t> prime_factors(std::int64_t n);
bool is_squarefree(std::int64_t n);
/// Number of distinct prime factors.
int omega(std::int64_t n);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
/// p-adic valuation of a nonzero integer.
int valuation(const Integer& n, std::int64_t p);
int valuation(const Rational& q, std::int64_t p);
/// Legendre symbol (a/p) for odd prime p.
int legendre(const Integer& a, std::int64_t p);

/// Numerator gcd / denominator lcm; gcd(0, x) = |x|.
Rational rational_gcd(const Rational& a, const Rational& b);

/// Integer power p^e for small e.
Integer ipow(const Integer& base, unsigned e);

}  // namespace triplel
