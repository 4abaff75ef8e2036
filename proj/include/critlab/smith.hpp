#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "critlab/arith.hpp"
#include "critlab/int_matrix.hpp"

namespace critlab {

/// Smith normal form of an integer matrix.
struct SnfResult {
  /// d_1 | d_2 | ... followed by zeros; length min(rows, cols).
  std::vector<Integer> invariant_factors;
  /// Unimodular witnesses with left * M * right == diag(invariant_factors).
  std::optional<IntMatrix> left;
  std::optional<IntMatrix> right;

  std::size_t rank() const;
  /// Product of the nonzero invariant factors.
  Integer torsion_product() const;
};

/// Integer Smith normal form. Without witnesses the factors are computed
/// modulo a nonzero maximal minor, which bounds every intermediate entry.
/// With witnesses the elimination runs over Z using extended-gcd steps.
SnfResult smith_normal_form(const IntMatrix& m, bool want_witnesses = false);

/// Fraction-free (Bareiss) determinant. Throws std::invalid_argument if not square.
Integer determinant(const IntMatrix& m);

/// Rank of m reduced modulo p over F_p.
std::size_t rank_mod_p(const IntMatrix& m, Prime p);

/// Multiplicities of p^i among the elementary divisors of a matrix.
struct ElemDivisorProfile {
  Prime p;
  /// multiplicities[i] = number of nonzero invariant factors with p-valuation i.
  std::vector<std::size_t> multiplicities;
  /// Number of zero invariant factors.
  std::size_t kernel_rank = 0;

  std::size_t multiplicity(std::size_t i) const {
    return i < multiplicities.size() ? multiplicities[i] : 0;
  }
  /// Sum of i * e_i: the valuation of the product of the nonzero invariant factors.
  unsigned long total_valuation() const;
  /// Number of nonzero invariant factors divisible by p.
  std::size_t divisible_count() const;

  bool operator==(const ElemDivisorProfile&) const = default;
};

/// p-part of an already computed Smith form.
ElemDivisorProfile profile_from_invariant_factors(std::span<const Integer> factors, Prime p);

/// Smallest B with p^B exceeding the Hadamard bound of m; every nonzero
/// elementary divisor of m has p-exponent below B.
unsigned hadamard_precision(const IntMatrix& m, Prime p);

/// Elementary-divisor profile at p by elimination over Z/p^B. No integer
/// Smith form is computed. With no explicit precision the Hadamard bound is
/// used; a caller that knows the product of the nonzero invariant factors
/// (e.g. a spanning-tree count) may pass its p-valuation plus one instead.
ElemDivisorProfile elem_divisor_profile(const IntMatrix& m, Prime p,
                                        std::optional<unsigned> precision = std::nullopt);

/// Profiles for several primes, computed on up to `threads` worker threads.
/// Output order follows `primes`.
std::vector<ElemDivisorProfile> elem_divisor_profiles(const IntMatrix& m, std::span<const Prime> primes,
                                                      unsigned threads = 1,
                                                      std::optional<unsigned> precision = std::nullopt);

}  // namespace critlab
