#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

namespace critlab {

using Integer = mpz_class;
using Rational = mpq_class;

bool is_prime(std::uint64_t n);

/// A validated prime number.
class Prime {
 public:
  /// Throws std::invalid_argument when `value` is not prime.
  explicit Prime(std::uint64_t value);

  std::uint64_t value() const noexcept { return value_; }
  Integer as_integer() const;

  auto operator<=>(const Prime&) const = default;

 private:
  std::uint64_t value_;
};

/// p-adic valuation of a nonzero integer.
unsigned long valuation(const Integer& x, Prime p);

Integer power(const Integer& base, unsigned long exponent);
Integer power(Prime p, unsigned long exponent);

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/// Lossless conversion when the value fits; throws std::overflow_error otherwise.
std::int64_t to_int64(const Integer& x);
bool fits_int64(const Integer& x);

/// Prime factorization of a positive rational number; exponents may be
/// negative until the value is known to be integral.
class Factorization {
 public:
  Factorization() = default;

  void multiply(std::uint64_t prime, long exponent);
  void multiply(const Factorization& other, long times = 1);
  void divide(const Factorization& other) { multiply(other, -1); }

  long exponent(std::uint64_t prime) const;
  const std::map<std::uint64_t, long>& exponents() const noexcept { return exps_; }

  bool is_integral() const;
  /// Exact value; throws std::domain_error when not integral.
  Integer value() const;
  /// e.g. "2^1728 * 5^4975 * 13^1519"; "1" for the empty product.
  std::string to_string() const;

  bool operator==(const Factorization&) const = default;

 private:
  std::map<std::uint64_t, long> exps_;
};

/// Factorizes |n| >= 1 by trial division, accepting one large prime cofactor.
/// Throws std::domain_error when a composite cofactor remains or n == 0.
Factorization factorize(const Integer& n);

}  // namespace critlab
