#include "critlab/local_smith.hpp"

#include <stdexcept>

namespace critlab {

namespace {

// Valuation of a residue in [0, p^B); zero residues report B.
unsigned residue_valuation(const Integer& x, const Integer& p, unsigned precision) {
  if (x == 0) return precision;
  unsigned v = 0;
  Integer q = x;
  while (v < precision && mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

}  // namespace

LocalSmithForm local_smith(const IntMatrix& m, Prime p, unsigned precision, bool track_columns) {
  if (precision == 0) throw std::invalid_argument("local_smith: precision must be positive");
  const Integer pz = p.as_integer();
  const Integer modulus = power(p, precision);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  IntMatrix a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) mpz_fdiv_r(a(r, c).get_mpz_t(), m(r, c).get_mpz_t(), modulus.get_mpz_t());

  LocalSmithForm form;
  form.precision = precision;
  if (track_columns) form.column_transform = IntMatrix::identity(cols);

  Integer unit, inv, factor, tmp;
  for (std::size_t t = 0; t < rows && t < cols; ++t) {
    std::size_t pr = rows, pc = cols;
    unsigned best = precision;
    for (std::size_t i = t; i < rows && best > 0; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (a(i, j) == 0) continue;
        const unsigned v = residue_valuation(a(i, j), pz, best);
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
          if (v == 0) break;
        }
      }
    if (pr == rows) break;
    a.swap_rows(t, pr);
    a.swap_cols(t, pc);
    if (form.column_transform) form.column_transform->swap_cols(t, pc);

    const Integer pv = power(p, best);
    mpz_divexact(unit.get_mpz_t(), a(t, t).get_mpz_t(), pv.get_mpz_t());
    mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());

    // Clear column t below the pivot; every entry there has valuation >= best.
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (a(i, t) == 0) continue;
      mpz_divexact(factor.get_mpz_t(), a(i, t).get_mpz_t(), pv.get_mpz_t());
      factor *= inv;
      mpz_fdiv_r(factor.get_mpz_t(), factor.get_mpz_t(), modulus.get_mpz_t());
      for (std::size_t c = t; c < cols; ++c) {
        if (a(t, c) == 0) continue;
        mpz_submul(a(i, c).get_mpz_t(), factor.get_mpz_t(), a(t, c).get_mpz_t());
        mpz_fdiv_r(a(i, c).get_mpz_t(), a(i, c).get_mpz_t(), modulus.get_mpz_t());
      }
    }
    // Clear row t to the right. Column t is zero below the pivot now, so the
    // column operation only changes row t of the working matrix.
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (a(t, j) == 0) continue;
      if (form.column_transform) {
        mpz_divexact(factor.get_mpz_t(), a(t, j).get_mpz_t(), pv.get_mpz_t());
        factor *= inv;
        mpz_fdiv_r(factor.get_mpz_t(), factor.get_mpz_t(), modulus.get_mpz_t());
        IntMatrix& q = *form.column_transform;
        for (std::size_t r = 0; r < cols; ++r) {
          if (q(r, t) == 0) continue;
          mpz_submul(q(r, j).get_mpz_t(), factor.get_mpz_t(), q(r, t).get_mpz_t());
          mpz_fdiv_r(q(r, j).get_mpz_t(), q(r, j).get_mpz_t(), modulus.get_mpz_t());
        }
      }
      a(t, j) = 0;
    }
    form.pivot_valuations.push_back(best);
  }
  return form;
}

}  // namespace critlab
