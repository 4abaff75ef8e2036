#include "critlab/lattice.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "critlab/smith.hpp"

namespace critlab {

namespace {

using Column = std::vector<Integer>;

IntMatrix columns_to_matrix(const std::vector<Column>& cols, std::size_t dim) {
  IntMatrix m(dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t r = 0; r < dim; ++r) m(r, j) = cols[j][r];
  return m;
}

std::vector<Column> matrix_to_columns(const IntMatrix& m) {
  std::vector<Column> cols;
  cols.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return cols;
}

void axpy(Column& y, const Integer& a, const Column& x) {  // y -= a * x
  for (std::size_t r = 0; r < y.size(); ++r)
    if (x[r] != 0) mpz_submul(y[r].get_mpz_t(), a.get_mpz_t(), x[r].get_mpz_t());
}

bool is_zero(const Column& c) {
  return std::all_of(c.begin(), c.end(), [](const Integer& x) { return x == 0; });
}

void reduce_mod(Column& c, const Integer& modulus) {
  for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
}

// Entries of earlier basis columns in row `row` reduced into [0, pivot).
void reduce_against(std::vector<Column>& basis, const Column& pivot_col, std::size_t row) {
  const Integer& d = pivot_col[row];
  Integer q;
  for (auto& b : basis) {
    if (&b == &pivot_col || b[row] == 0) continue;
    mpz_fdiv_q(q.get_mpz_t(), b[row].get_mpz_t(), d.get_mpz_t());
    if (q != 0) axpy(b, q, pivot_col);
  }
}

// Euclid on row `row` across `active`; leaves at most one column with a
// nonzero entry there and returns its index.
std::optional<std::size_t> gcd_eliminate(std::vector<Column>& active, std::size_t row,
                                         const Integer* modulus) {
  for (;;) {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < active.size(); ++j)
      if (active[j][row] != 0 && (!best || cmpabs(active[j][row], active[*best][row]) < 0)) best = j;
    if (!best) return std::nullopt;
    bool done = true;
    Integer q;
    for (std::size_t j = 0; j < active.size(); ++j) {
      if (j == *best || active[j][row] == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), active[j][row].get_mpz_t(), active[*best][row].get_mpz_t());
      axpy(active[j], q, active[*best]);
      if (modulus) reduce_mod(active[j], *modulus);
      if (active[j][row] != 0) done = false;
    }
    if (done) return best;
  }
}

}  // namespace

Lattice::Lattice(IntMatrix basis, std::vector<std::size_t> pivots)
    : basis_(std::move(basis)), pivot_rows_(std::move(pivots)) {}

Lattice Lattice::full(std::size_t dim) {
  std::vector<std::size_t> piv(dim);
  for (std::size_t i = 0; i < dim; ++i) piv[i] = i;
  return Lattice(IntMatrix::identity(dim), piv);
}

Lattice Lattice::zero(std::size_t dim) { return Lattice(IntMatrix(dim, 0), {}); }

Lattice Lattice::from_generators(const IntMatrix& generators) {
  const std::size_t dim = generators.rows();
  std::vector<Column> active;
  for (auto& c : matrix_to_columns(generators))
    if (!is_zero(c)) active.push_back(std::move(c));

  std::vector<Column> basis;
  std::vector<std::size_t> pivots;
  for (std::size_t row = 0; row < dim && !active.empty(); ++row) {
    auto piv = gcd_eliminate(active, row, nullptr);
    if (!piv) continue;
    Column col = std::move(active[*piv]);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(*piv));
    if (col[row] < 0)
      for (auto& x : col) x = -x;
    basis.push_back(std::move(col));
    pivots.push_back(row);
    reduce_against(basis, basis.back(), row);
    std::erase_if(active, is_zero);
  }
  return Lattice(columns_to_matrix(basis, dim), std::move(pivots));
}

Lattice Lattice::from_generators_mod(const IntMatrix& generators, const Integer& modulus) {
  if (modulus <= 0) throw std::invalid_argument("from_generators_mod: modulus must be positive");
  const std::size_t dim = generators.rows();
  std::vector<Column> active;
  for (auto& c : matrix_to_columns(generators)) {
    reduce_mod(c, modulus);
    if (!is_zero(c)) active.push_back(std::move(c));
  }

  std::vector<Column> basis;
  std::vector<std::size_t> pivots;
  Integer u, v, d, cofactor;
  for (std::size_t row = 0; row < dim; ++row) {
    auto piv = gcd_eliminate(active, row, &modulus);
    Column w(dim, Integer(0));
    if (!piv) {
      w[row] = modulus;
    } else {
      Column c = std::move(active[*piv]);
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(*piv));
      // Combine c with modulus * e_row: the unimodular pair
      // (u c + v M e_row, (M/d) c - (c_row/d) M e_row).
      mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), c[row].get_mpz_t(), modulus.get_mpz_t());
      for (std::size_t r = row + 1; r < dim; ++r) w[r] = u * c[r];
      reduce_mod(w, modulus);
      w[row] = d;
      mpz_divexact(cofactor.get_mpz_t(), modulus.get_mpz_t(), d.get_mpz_t());
      Column rest(dim, Integer(0));
      for (std::size_t r = row + 1; r < dim; ++r) rest[r] = cofactor * c[r];
      reduce_mod(rest, modulus);
      if (!is_zero(rest)) active.push_back(std::move(rest));
    }
    basis.push_back(std::move(w));
    pivots.push_back(row);
    reduce_against(basis, basis.back(), row);
    std::erase_if(active, is_zero);
  }
  return Lattice(columns_to_matrix(basis, dim), std::move(pivots));
}

bool Lattice::contains(std::span<const Integer> v) const {
  if (v.size() != ambient_dim()) throw std::invalid_argument("Lattice::contains: dimension mismatch");
  Column x(v.begin(), v.end());
  Integer q;
  std::size_t next_pivot = 0;
  for (std::size_t row = 0; row < x.size(); ++row) {
    if (next_pivot < pivot_rows_.size() && pivot_rows_[next_pivot] == row) {
      const Integer& d = basis_(row, next_pivot);
      if (!mpz_divisible_p(x[row].get_mpz_t(), d.get_mpz_t())) return false;
      mpz_divexact(q.get_mpz_t(), x[row].get_mpz_t(), d.get_mpz_t());
      for (std::size_t r = row; r < x.size(); ++r)
        if (basis_(r, next_pivot) != 0) mpz_submul(x[r].get_mpz_t(), q.get_mpz_t(), basis_(r, next_pivot).get_mpz_t());
      ++next_pivot;
    } else if (x[row] != 0) {
      return false;
    }
  }
  return true;
}

bool Lattice::contains(const Lattice& other) const {
  for (std::size_t j = 0; j < other.rank(); ++j) {
    if (!contains(other.basis_.column(j))) return false;
  }
  return true;
}

std::size_t Lattice::reduction_dim(Prime p) const { return rank_mod_p(basis_, p); }

IntMatrix rational_kernel_basis(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c);

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const Rational inv = 1 / a[rank][c];
    for (std::size_t k = c; k < cols; ++k) a[rank][k] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  IntMatrix kernel(cols, cols - rank);
  std::size_t k = 0;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(cols, Rational(0));
    x[f] = 1;
    for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = -a[i][f];
    Integer den = 1;
    for (const auto& q : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t r = 0; r < cols; ++r) {
      Rational scaled = x[r] * den;
      kernel(r, k) = scaled.get_num();
    }
    ++k;
  }
  return kernel;
}

IntMatrix saturate_at(const IntMatrix& basis, Prime p) {
  const std::uint64_t q = p.value();
  const Integer pz = p.as_integer();
  std::vector<Column> cols = matrix_to_columns(basis);
  const std::size_t dim = basis.rows();

  auto residue = [q](const Integer& x) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), q);
    return static_cast<std::uint64_t>(r.get_ui());
  };
  // (acc + a * b) mod q without overflow.
  auto muladd = [q](std::uint64_t acc, std::uint64_t a, std::uint64_t b) {
    using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b + acc) % q);
  };
  auto inverse = [&](std::uint64_t x) {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), Integer(static_cast<unsigned long>(x)).get_mpz_t(), pz.get_mpz_t());
    return static_cast<std::uint64_t>(inv.get_ui());
  };

  for (;;) {
    // Incremental echelon basis of the reductions, each row remembering the
    // combination of original columns that produced it.
    struct Reduced {
      std::vector<std::uint64_t> vec;
      std::vector<std::uint64_t> combo;
      std::size_t lead;
    };
    std::vector<Reduced> echelon;
    std::optional<std::vector<std::uint64_t>> dependency;
    for (std::size_t j = 0; j < cols.size() && !dependency; ++j) {
      Reduced cur{std::vector<std::uint64_t>(dim), std::vector<std::uint64_t>(cols.size(), 0), dim};
      for (std::size_t r = 0; r < dim; ++r) cur.vec[r] = residue(cols[j][r]);
      cur.combo[j] = 1;
      for (const auto& e : echelon) {
        const std::uint64_t f = cur.vec[e.lead];
        if (f == 0) continue;
        for (std::size_t r = 0; r < dim; ++r) cur.vec[r] = muladd(cur.vec[r], q - f, e.vec[r]);
        for (std::size_t k = 0; k < cols.size(); ++k) cur.combo[k] = muladd(cur.combo[k], q - f, e.combo[k]);
      }
      std::size_t lead = dim;
      for (std::size_t r = 0; r < dim; ++r)
        if (cur.vec[r] != 0) {
          lead = r;
          break;
        }
      if (lead == dim) {
        dependency = cur.combo;
        break;
      }
      const std::uint64_t inv = inverse(cur.vec[lead]);
      for (auto& x : cur.vec) x = muladd(0, x, inv);
      for (auto& x : cur.combo) x = muladd(0, x, inv);
      cur.lead = lead;
      echelon.push_back(std::move(cur));
    }
    if (!dependency) break;

    // The combination has coefficient 1 on its last column; divide it by p.
    std::size_t target = 0;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if ((*dependency)[k] != 0) target = k;
    Column combined(dim, Integer(0));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if ((*dependency)[k] == 0) continue;
      const Integer coeff(static_cast<unsigned long>((*dependency)[k]));
      for (std::size_t r = 0; r < dim; ++r) mpz_addmul(combined[r].get_mpz_t(), coeff.get_mpz_t(), cols[k][r].get_mpz_t());
    }
    for (auto& x : combined) {
      if (!mpz_divisible_p(x.get_mpz_t(), pz.get_mpz_t()))
        throw std::logic_error("saturate_at: dependency mod p is not divisible by p");
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
    }
    if (is_zero(combined)) throw std::invalid_argument("saturate_at: columns are linearly dependent");
    cols[target] = std::move(combined);
  }
  return columns_to_matrix(cols, dim);
}

}  // namespace critlab
