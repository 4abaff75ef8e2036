#include "critlab/filtration.hpp"

#include <stdexcept>

#include "critlab/local_smith.hpp"

namespace critlab {

Lattice filtration_M(const IntMatrix& m, Prime p, unsigned level) {
  const std::size_t n = m.cols();
  if (level == 0) return Lattice::full(n);

  const LocalSmithForm form = local_smith(m, p, level, true);
  const IntMatrix& q = *form.column_transform;
  const Integer modulus = power(p, level);

  // With P m Q diagonal mod p^i, m x == 0 iff x = Q y where y_j is divisible
  // by p^{i - v_j} on pivot columns and free elsewhere.
  IntMatrix gens(n, 2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    Integer scale = 1;
    if (j < form.pivot_valuations.size()) scale = power(p, level - form.pivot_valuations[j]);
    for (std::size_t r = 0; r < n; ++r) gens(r, j) = scale * q(r, j);
    gens(j, n + j) = modulus;
  }
  return Lattice::from_generators_mod(gens, modulus);
}

namespace {

Lattice image_over_power(const IntMatrix& m, const Lattice& domain, Prime p, unsigned level) {
  const Integer divisor = power(p, level);
  IntMatrix img = m * domain.basis();
  for (std::size_t r = 0; r < img.rows(); ++r)
    for (std::size_t c = 0; c < img.cols(); ++c) {
      Integer& x = img(r, c);
      if (!mpz_divisible_p(x.get_mpz_t(), divisor.get_mpz_t()))
        throw std::logic_error("filtration: image of M_i not divisible by p^i");
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), divisor.get_mpz_t());
    }
  return Lattice::from_generators(img);
}

}  // namespace

Lattice filtration_N(const IntMatrix& m, Prime p, unsigned level) {
  return image_over_power(m, filtration_M(m, p, level), p, level);
}

std::size_t kernel_reduction_dim(const IntMatrix& m, Prime p) {
  const IntMatrix kernel = rational_kernel_basis(m);
  if (kernel.cols() == 0) return 0;
  return rank_mod_p(saturate_at(kernel, p), p);
}

FiltrationReport verify_lemma_dims(const IntMatrix& m, Prime p) {
  FiltrationReport rep{p, 0, {}, {}, 0, elem_divisor_profile(m, p), false, true};
  rep.kernel_dim = kernel_reduction_dim(m, p);
  rep.max_level = static_cast<unsigned>(1 + rep.profile.total_valuation());

  bool identities = true;
  std::optional<Lattice> prev_m;
  std::optional<Lattice> prev_n;
  for (unsigned i = 0; i <= rep.max_level; ++i) {
    Lattice mi = filtration_M(m, p, i);
    Lattice ni = image_over_power(m, mi, p, i);
    rep.dims_M.push_back(mi.reduction_dim(p));
    rep.dims_N.push_back(ni.reduction_dim(p));

    std::size_t upper = 0;
    std::size_t lower = 0;
    for (std::size_t k = 0; k < rep.profile.multiplicities.size(); ++k) {
      if (k >= i) upper += rep.profile.multiplicities[k];
      if (k <= i) lower += rep.profile.multiplicities[k];
    }
    if (rep.dims_M.back() != rep.kernel_dim + upper || rep.dims_N.back() != lower) identities = false;

    if (prev_m && !prev_m->contains(mi)) rep.chains_nested = false;
    if (prev_n && !ni.contains(*prev_n)) rep.chains_nested = false;
    prev_m = std::move(mi);
    prev_n = std::move(ni);
  }
  rep.identities_hold = identities;
  return rep;
}

}  // namespace critlab
