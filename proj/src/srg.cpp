#include "critlab/srg.hpp"

#include <sstream>

#include "critlab/error.hpp"

namespace critlab {

void SrgParams::validate() const {
  std::ostringstream os;
  os << "(" << v << ", " << k << ", " << lambda << ", " << mu << ")";
  const std::string tag = os.str();
  if (!(v > k && k >= mu && mu >= 0 && lambda >= 0 && k > lambda)) {
    throw InfeasibleError("SRG parameters " + tag + " violate v > k >= mu >= 0, k > lambda >= 0");
  }
  if (Integer(k) * (k - lambda - 1) != Integer(v - k - 1) * mu) {
    throw InfeasibleError("SRG parameters " + tag + " violate k(k - lambda - 1) = (v - k - 1) mu");
  }
}

SrgParams SrgParams::moore(std::int64_t k) { return {k * k + 1, k, 0, 1}; }

QuadraticNumber QuadraticNumber::make(Integer a, Integer b, Integer d) {
  if (d < 0) throw std::domain_error("QuadraticNumber: negative radicand");
  if (b != 0 && mpz_perfect_square_p(d.get_mpz_t())) {
    Integer s = sqrt(d);
    a += b * s;
    b = 0;
  }
  if (b == 0) d = 0;
  return {std::move(a), std::move(b), std::move(d)};
}

std::optional<Integer> QuadraticNumber::integral() const {
  if (b != 0 || !mpz_even_p(a.get_mpz_t())) return std::nullopt;
  return Integer(a / 2);
}

std::string QuadraticNumber::to_string() const {
  if (auto x = integral()) return x->get_str();
  std::ostringstream os;
  if (b == 0) {
    os << a << "/2";
  } else {
    os << "(" << a << (b < 0 ? " - " : " + ");
    if (abs(b) != 1) os << abs(b);
    os << "sqrt(" << d << "))/2";
  }
  return os.str();
}

SrgSpectrum srg_spectrum(const SrgParams& p) {
  p.validate();
  const Integer lm = p.lambda - p.mu;
  const Integer disc = lm * lm + 4 * Integer(p.k - p.mu);

  SrgSpectrum s;
  s.k = p.k;
  s.theta = QuadraticNumber::make(lm, 1, disc);
  s.tau = QuadraticNumber::make(lm, -1, disc);

  // m_theta + m_tau = v - 1 and k + m_theta theta + m_tau tau = 0, i.e.
  // m_{theta,tau} = ((v - 1) -+ (2k + (v - 1)(lambda - mu)) / sqrt(disc)) / 2.
  const Integer num = 2 * Integer(p.k) + Integer(p.v - 1) * lm;
  const Integer vm1 = p.v - 1;
  if (mpz_perfect_square_p(disc.get_mpz_t())) {
    const Integer root = sqrt(disc);
    if (!mpz_divisible_p(num.get_mpz_t(), root.get_mpz_t())) {
      throw InfeasibleError("SRG parameters give non-integral eigenvalue multiplicities");
    }
    const Integer ratio = num / root;
    const Integer twice_theta = vm1 - ratio;
    if (mpz_odd_p(twice_theta.get_mpz_t()) || twice_theta < 0 || vm1 + ratio < 0) {
      throw InfeasibleError("SRG parameters give non-integral eigenvalue multiplicities");
    }
    s.m_theta = to_int64(twice_theta / 2);
    s.m_tau = to_int64((vm1 + ratio) / 2);
  } else {
    // Irrational eigenvalues are conjugate, so they share a multiplicity.
    if (num != 0 || mpz_odd_p(vm1.get_mpz_t())) {
      throw InfeasibleError("SRG parameters give non-integral eigenvalue multiplicities");
    }
    s.m_theta = s.m_tau = to_int64(vm1 / 2);
  }
  return s;
}

bool check_srg(const Graph& g, const SrgParams& p) {
  if (g.vertex_count() != static_cast<std::size_t>(p.v)) return false;
  const IntMatrix a = adjacency_matrix(g);
  const IntMatrix a2 = a * a;
  const std::size_t n = g.vertex_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long expected;
      if (i == j) {
        expected = p.k;
      } else if (a(i, j) != 0) {
        expected = p.lambda;
      } else {
        expected = p.mu;
      }
      if (a2(i, j) != expected) return false;
    }
  return true;
}

}  // namespace critlab
