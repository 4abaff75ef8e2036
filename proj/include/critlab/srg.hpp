#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "critlab/arith.hpp"
#include "critlab/graph.hpp"

namespace critlab {

/// Parameters (v, k, lambda, mu) of a strongly regular graph.
struct SrgParams {
  std::int64_t v = 0;
  std::int64_t k = 0;
  std::int64_t lambda = 0;
  std::int64_t mu = 0;

  /// Throws InfeasibleError unless v > k >= mu >= 0, k > lambda >= 0 and
  /// k(k - lambda - 1) == (v - k - 1) mu.
  void validate() const;
  /// Parameters of the diameter-2 Moore graph of valency k: (k^2 + 1, k, 0, 1).
  static SrgParams moore(std::int64_t k);

  bool operator==(const SrgParams&) const = default;
};

/// Exact number (a + b*sqrt(d)) / 2. Normalized so that b == 0 whenever d is a
/// perfect square.
struct QuadraticNumber {
  Integer a;
  Integer b;
  Integer d;

  static QuadraticNumber make(Integer a, Integer b, Integer d);
  bool is_rational() const { return b == 0; }
  /// The value when it is an integer.
  std::optional<Integer> integral() const;
  std::string to_string() const;

  bool operator==(const QuadraticNumber&) const = default;
};

/// Spectrum of the adjacency matrix: k once, theta and tau (theta > tau) with
/// multiplicities m_theta and m_tau.
struct SrgSpectrum {
  std::int64_t k = 0;
  QuadraticNumber theta;
  QuadraticNumber tau;
  std::int64_t m_theta = 0;
  std::int64_t m_tau = 0;

  bool integral() const { return theta.is_rational() && tau.is_rational(); }
};

/// Restricted eigenvalues are the roots of x^2 - (lambda - mu) x - (k - mu);
/// multiplicities follow from the trace conditions. Throws InfeasibleError for
/// non-integral multiplicities.
SrgSpectrum srg_spectrum(const SrgParams& p);

/// True iff g has p.v vertices and A^2 = kI + lambda A + mu (J - A - I).
bool check_srg(const Graph& g, const SrgParams& p);

}  // namespace critlab
