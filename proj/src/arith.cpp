#include "critlab/arith.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace critlab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

Prime::Prime(std::uint64_t value) : value_(value) {
  if (!is_prime(value)) {
    throw std::invalid_argument(std::to_string(value) + " is not prime");
  }
}

Integer Prime::as_integer() const {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(value_), 0, 0, &value_);
  return z;
}

unsigned long valuation(const Integer& x, Prime p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  const Integer pz = p.as_integer();
  Integer q = x;
  unsigned long v = 0;
  while (mpz_divisible_p(q.get_mpz_t(), pz.get_mpz_t())) {
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
    ++v;
  }
  return v;
}

Integer power(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Integer power(Prime p, unsigned long exponent) { return power(p.as_integer(), exponent); }

bool fits_int64(const Integer& x) {
  static const Integer lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
  static const Integer hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
  return x >= lo && x <= hi;
}

std::int64_t to_int64(const Integer& x) {
  if (!fits_int64(x)) throw std::overflow_error("integer does not fit in 64 bits");
  return std::stoll(x.get_str());
}

void Factorization::multiply(std::uint64_t prime, long exponent) {
  if (exponent == 0) return;
  auto& e = exps_[prime];
  e += exponent;
  if (e == 0) exps_.erase(prime);
}

void Factorization::multiply(const Factorization& other, long times) {
  for (const auto& [p, e] : other.exps_) multiply(p, e * times);
}

long Factorization::exponent(std::uint64_t prime) const {
  auto it = exps_.find(prime);
  return it == exps_.end() ? 0 : it->second;
}

bool Factorization::is_integral() const {
  for (const auto& [p, e] : exps_) {
    if (e < 0) return false;
  }
  return true;
}

Integer Factorization::value() const {
  if (!is_integral()) throw std::domain_error("factorization is not integral: " + to_string());
  Integer r = 1;
  for (const auto& [p, e] : exps_) r *= power(Prime(p), static_cast<unsigned long>(e));
  return r;
}

std::string Factorization::to_string() const {
  if (exps_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : exps_) {
    if (!first) os << " * ";
    first = false;
    os << p;
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

Factorization factorize(const Integer& n) {
  if (n == 0) throw std::domain_error("cannot factorize zero");
  Integer m = abs(n);
  Factorization f;
  constexpr unsigned long kTrialLimit = 1ul << 20;
  for (unsigned long d = 2; d <= kTrialLimit && m > 1; d += (d == 2 ? 1 : 2)) {
    if (Integer(d) * d > m) break;
    long e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
      ++e;
    }
    f.multiply(d, e);
  }
  if (m > 1) {
    if (mpz_probab_prime_p(m.get_mpz_t(), 40) == 0 || !mpz_fits_ulong_p(m.get_mpz_t())) {
      throw std::domain_error("cannot fully factorize " + n.get_str());
    }
    f.multiply(m.get_ui(), 1);
  }
  return f;
}

}  // namespace critlab
