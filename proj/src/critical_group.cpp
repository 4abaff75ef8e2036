#include "critlab/critical_group.hpp"

#include <algorithm>

#include "critlab/error.hpp"
#include "critlab/smith.hpp"

namespace critlab {

std::size_t CriticalGroup::even_factor_count() const {
  return static_cast<std::size_t>(std::count_if(invariant_factors.begin(), invariant_factors.end(),
                                                [](const Integer& d) { return mpz_even_p(d.get_mpz_t()); }));
}

Factorization CriticalGroup::order_factored() const {
  Factorization f;
  for (const auto& d : invariant_factors) f.multiply(factorize(d));
  return f;
}

namespace {

// Rebuilds invariant factors > 1 from per-prime multiplicities: the j-th
// largest factor takes the j-th largest power of every prime.
std::vector<Integer> assemble_invariant_factors(const std::vector<ElemDivisorProfile>& profiles) {
  std::vector<std::vector<unsigned long>> exps;  // per prime, descending
  std::size_t count = 0;
  for (const auto& prof : profiles) {
    std::vector<unsigned long> e;
    for (std::size_t i = prof.multiplicities.size(); i-- > 1;)
      for (std::size_t k = 0; k < prof.multiplicities[i]; ++k) e.push_back(i);
    count = std::max(count, e.size());
    exps.push_back(std::move(e));
  }
  std::vector<Integer> factors(count, Integer(1));
  for (std::size_t pi = 0; pi < profiles.size(); ++pi)
    for (std::size_t j = 0; j < exps[pi].size(); ++j) factors[j] *= power(profiles[pi].p, exps[pi][j]);
  std::reverse(factors.begin(), factors.end());
  return factors;
}

}  // namespace

CriticalGroup critical_group(const Graph& g, const CriticalGroupOptions& opts) {
  CriticalGroup cg;
  const IntMatrix lap = laplacian_matrix(g);
  if (g.vertex_count() <= opts.dense_vertex_limit) {
    const SnfResult snf = smith_normal_form(lap);
    for (const auto& d : snf.invariant_factors) {
      if (d == 0) {
        ++cg.free_rank;
      } else if (d > 1) {
        cg.invariant_factors.push_back(d);
        cg.order *= d;
      }
    }
    return cg;
  }

  // Large graphs: order from the tree count (per component it would differ, so
  // require connectivity), structure from p-local elimination at each prime.
  if (!g.is_connected()) {
    throw std::invalid_argument("critical_group: profile path needs a connected graph");
  }
  cg.free_rank = 1;
  cg.order = spanning_tree_count(g);
  const Factorization f = factorize(cg.order);
  std::vector<Prime> primes;
  for (const auto& [p, e] : f.exponents()) primes.emplace_back(p);
  std::vector<ElemDivisorProfile> profiles;
  profiles.reserve(primes.size());
  for (const auto& p : primes) {
    auto prec = static_cast<unsigned>(f.exponent(p.value()) + 1);
    profiles.push_back(elem_divisor_profile(lap, p, prec));
  }
  cg.invariant_factors = assemble_invariant_factors(profiles);
  return cg;
}

Integer spanning_tree_count(const Graph& g) {
  if (g.vertex_count() < 2) return 1;
  if (!g.is_connected()) return 0;
  return determinant(laplacian_matrix(g).minor_matrix(0, 0));
}

std::size_t bicycle_dimension(const Graph& g) {
  // Even invariant factors of L are exactly those with positive 2-valuation.
  const IntMatrix lap = laplacian_matrix(g);
  const ElemDivisorProfile prof = elem_divisor_profile(lap, Prime(2));
  return prof.divisible_count();
}

Factorization predicted_order_from_spectrum(const SrgSpectrum& s, std::int64_t v) {
  Factorization f;
  if (s.integral()) {
    for (const auto& [eig, mult] : {std::pair{s.theta, s.m_theta}, std::pair{s.tau, s.m_tau}}) {
      const Integer lap = s.k - *eig.integral();
      if (mult == 0) continue;
      if (lap <= 0) throw InfeasibleError("spectrum has a nonpositive restricted Laplacian eigenvalue");
      f.multiply(factorize(lap), mult);
    }
  } else {
    // Conjugate pair k - theta, k - tau: product is the norm
    // k^2 - k(theta + tau) + theta tau, with theta + tau = a and theta tau = (a^2 - d)/4.
    const Integer& a = s.theta.a;
    const Integer& d = s.theta.d;
    Integer norm = Integer(s.k) * s.k - Integer(s.k) * a + (a * a - d) / 4;
    if (norm <= 0) throw InfeasibleError("spectrum has a nonpositive Laplacian norm");
    f.multiply(factorize(norm), s.m_theta);
  }
  f.divide(factorize(Integer(v)));
  if (!f.is_integral()) throw InfeasibleError("predicted critical group order is not an integer: " + f.to_string());
  return f;
}

}  // namespace critlab
