#include "critlab/smith.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "critlab/local_smith.hpp"

namespace critlab {

std::size_t SnfResult::rank() const {
  return static_cast<std::size_t>(
      std::count_if(invariant_factors.begin(), invariant_factors.end(), [](const Integer& d) { return d != 0; }));
}

Integer SnfResult::torsion_product() const {
  Integer prod = 1;
  for (const auto& d : invariant_factors) {
    if (d != 0) prod *= d;
  }
  return prod;
}

namespace {

// Row/column operations on the working matrix, mirrored into the witnesses.
class SmithWorkspace {
 public:
  SmithWorkspace(const IntMatrix& m, bool witnesses) : a_(m) {
    if (witnesses) {
      left_ = IntMatrix::identity(m.rows());
      right_ = IntMatrix::identity(m.cols());
    }
  }

  IntMatrix& a() { return a_; }

  void swap_rows(std::size_t i, std::size_t j) {
    a_.swap_rows(i, j);
    if (left_) left_->swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a_.swap_cols(i, j);
    if (right_) right_->swap_cols(i, j);
  }
  // (row_i, row_j) <- (x row_i + y row_j, u row_i + v row_j); the working
  // matrix is only touched from column `from` on.
  void mix_rows(std::size_t i, std::size_t j, const Integer& x, const Integer& y, const Integer& u,
                const Integer& v, std::size_t from) {
    mix(a_, i, j, x, y, u, v, from, true);
    if (left_) mix(*left_, i, j, x, y, u, v, 0, true);
  }
  void mix_cols(std::size_t i, std::size_t j, const Integer& x, const Integer& y, const Integer& u,
                const Integer& v, std::size_t from) {
    mix(a_, i, j, x, y, u, v, from, false);
    if (right_) mix(*right_, i, j, x, y, u, v, 0, false);
  }
  void negate_row(std::size_t r) {
    for (auto& x : a_.row(r)) x = -x;
    if (left_) {
      for (auto& x : left_->row(r)) x = -x;
    }
  }

  std::optional<IntMatrix> take_left() { return std::move(left_); }
  std::optional<IntMatrix> take_right() { return std::move(right_); }

 private:
  static void mix(IntMatrix& m, std::size_t i, std::size_t j, const Integer& x, const Integer& y, const Integer& u,
                  const Integer& v, std::size_t from, bool rows) {
    const std::size_t len = rows ? m.cols() : m.rows();
    for (std::size_t k = from; k < len; ++k) {
      Integer& p = rows ? m(i, k) : m(k, i);
      Integer& q = rows ? m(j, k) : m(k, j);
      Integer np = x * p + y * q;
      q = u * p + v * q;
      p = std::move(np);
    }
  }

  IntMatrix a_;
  std::optional<IntMatrix> left_;
  std::optional<IntMatrix> right_;
};

// Rank and the absolute value of a nonzero rank-sized minor, by fraction-free
// elimination with full pivoting.
std::pair<std::size_t, Integer> rank_and_minor(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  Integer prev = 1;
  std::size_t k = 0;
  for (; k < std::min(rows, cols); ++k) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (a(i, j) != 0 && (pr == rows || cmpabs(a(i, j), a(pr, pc)) < 0)) pr = i, pc = j;
    if (pr == rows) break;
    a.swap_rows(k, pr);
    a.swap_cols(k, pc);
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        Integer& x = a(i, j);
        x *= a(k, k);
        mpz_submul(x.get_mpz_t(), a(i, k).get_mpz_t(), a(k, j).get_mpz_t());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return {k, abs(prev)};
}

// Smith form of m over Z/d, where d is a multiple of the product of the
// nonzero invariant factors; the first `rank` diagonal entries are then the
// invariant factors themselves.
std::vector<Integer> modular_invariant_factors(const IntMatrix& m, std::size_t rank, const Integer& d) {
  std::vector<Integer> out(rank, Integer(1));
  if (rank == 0 || d == 1) return out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) mpz_fdiv_r(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), d.get_mpz_t());

  auto reduce = [&](Integer& x) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t()); };
  // (row_a, row_b) <- (x row_a + y row_b, u row_a + v row_b) on columns >= from.
  auto mix_rows = [&](std::size_t ra, std::size_t rb, const Integer& x, const Integer& y, const Integer& u,
                      const Integer& v, std::size_t from) {
    for (std::size_t c = from; c < cols; ++c) {
      Integer na = x * a(ra, c) + y * a(rb, c);
      Integer nb = u * a(ra, c) + v * a(rb, c);
      reduce(na);
      reduce(nb);
      a(ra, c) = std::move(na);
      a(rb, c) = std::move(nb);
    }
  };
  auto mix_cols = [&](std::size_t ca, std::size_t cb, const Integer& x, const Integer& y, const Integer& u,
                      const Integer& v, std::size_t from) {
    for (std::size_t r = from; r < rows; ++r) {
      Integer na = x * a(r, ca) + y * a(r, cb);
      Integer nb = u * a(r, ca) + v * a(r, cb);
      reduce(na);
      reduce(nb);
      a(r, ca) = std::move(na);
      a(r, cb) = std::move(nb);
    }
  };
  // Scale row t by a unit mod d so the pivot becomes gcd(pivot, d).
  auto normalize_pivot = [&](std::size_t t) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a(t, t).get_mpz_t(), d.get_mpz_t());
    if (a(t, t) == g) return;
    const Integer cofactor_mod = d / g;
    Integer unit = a(t, t) / g;
    if (cofactor_mod == 1) {
      unit = 1;
    } else {
      mpz_invert(unit.get_mpz_t(), unit.get_mpz_t(), cofactor_mod.get_mpz_t());
    }
    for (Integer gcd_check;; unit += cofactor_mod) {
      mpz_gcd(gcd_check.get_mpz_t(), unit.get_mpz_t(), d.get_mpz_t());
      if (gcd_check == 1) break;
    }
    for (std::size_t c = t; c < cols; ++c) {
      a(t, c) *= unit;
      reduce(a(t, c));
    }
  };

  std::size_t t = 0;
  for (; t < rank; ++t) {
    std::size_t pr = rows, pc = cols;
    Integer best;
    Integer g;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (a(i, j) == 0) continue;
        mpz_gcd(g.get_mpz_t(), a(i, j).get_mpz_t(), d.get_mpz_t());
        if (pr == rows || g < best) pr = i, pc = j, best = g;
      }
    if (pr == rows) break;
    a.swap_rows(t, pr);
    a.swap_cols(t, pc);

    for (;;) {
      normalize_pivot(t);
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        if (mpz_divisible_p(a(i, t).get_mpz_t(), a(t, t).get_mpz_t())) {
          const Integer q = a(i, t) / a(t, t);
          mix_rows(i, t, Integer(1), Integer(-q), Integer(0), Integer(1), t);
          continue;
        }
        Integer s, r;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), a(t, t).get_mpz_t(), a(i, t).get_mpz_t());
        const Integer p_over = a(t, t) / g;
        const Integer b_over = a(i, t) / g;
        mix_rows(t, i, s, r, Integer(-b_over), p_over, t);
        changed = true;
        normalize_pivot(t);
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        if (mpz_divisible_p(a(t, j).get_mpz_t(), a(t, t).get_mpz_t())) {
          const Integer q = a(t, j) / a(t, t);
          mix_cols(j, t, Integer(1), Integer(-q), Integer(0), Integer(1), t);
          continue;
        }
        Integer s, r;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), a(t, t).get_mpz_t(), a(t, j).get_mpz_t());
        const Integer p_over = a(t, t) / g;
        const Integer b_over = a(t, j) / g;
        mix_cols(t, j, s, r, Integer(-b_over), p_over, t);
        changed = true;
        normalize_pivot(t);
      }
      if (changed) continue;
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      mix_rows(t, bad_row, Integer(1), Integer(1), Integer(0), Integer(1), t);
    }
    out[t] = a(t, t);
  }
  // A trailing block that vanishes mod d leaves factors equal to d.
  for (; t < rank; ++t) out[t] = d;
  return out;
}

SnfResult integer_smith(const IntMatrix& m, bool want_witnesses);

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m, bool want_witnesses) {
  if (want_witnesses) return integer_smith(m, true);
  const auto [rank, minor] = rank_and_minor(m);
  SnfResult result;
  result.invariant_factors.assign(std::min(m.rows(), m.cols()), Integer(0));
  const auto factors = modular_invariant_factors(m, rank, minor);
  std::copy(factors.begin(), factors.end(), result.invariant_factors.begin());
  return result;
}

namespace {

// Elimination over Z by 2x2 extended-gcd steps, tracking unimodular transforms.
SnfResult integer_smith(const IntMatrix& m, bool want_witnesses) {
  SmithWorkspace ws(m, want_witnesses);
  IntMatrix& a = ws.a();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t diag = std::min(rows, cols);

  std::size_t t = 0;
  for (; t < diag; ++t) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (pr == rows || cmpabs(a(i, j), a(pr, pc)) < 0)) pr = i, pc = j;
    if (pr == rows) break;
    ws.swap_rows(t, pr);
    ws.swap_cols(t, pc);

    Integer g, s, r;
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        if (mpz_divisible_p(a(i, t).get_mpz_t(), a(t, t).get_mpz_t())) {
          ws.mix_rows(i, t, Integer(1), Integer(-(a(i, t) / a(t, t))), Integer(0), Integer(1), t);
          continue;
        }
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), a(t, t).get_mpz_t(), a(i, t).get_mpz_t());
        ws.mix_rows(t, i, s, r, Integer(-(a(i, t) / g)), Integer(a(t, t) / g), t);
        changed = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        if (mpz_divisible_p(a(t, j).get_mpz_t(), a(t, t).get_mpz_t())) {
          ws.mix_cols(j, t, Integer(1), Integer(-(a(t, j) / a(t, t))), Integer(0), Integer(1), t);
          continue;
        }
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), a(t, t).get_mpz_t(), a(t, j).get_mpz_t());
        ws.mix_cols(t, j, s, r, Integer(-(a(t, j) / g)), Integer(a(t, t) / g), t);
        changed = true;
      }
      if (changed) continue;
      // Pivot must divide the whole trailing block.
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      ws.mix_rows(t, bad_row, Integer(1), Integer(1), Integer(0), Integer(1), t);
    }
    if (a(t, t) < 0) ws.negate_row(t);
  }

  SnfResult result;
  result.invariant_factors.assign(diag, Integer(0));
  for (std::size_t i = 0; i < t; ++i) result.invariant_factors[i] = a(i, i);
  result.left = ws.take_left();
  result.right = ws.take_right();
  return result;
}

}  // namespace

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, k) != 0 && (piv == n || cmpabs(a(i, k), a(piv, k)) < 0)) piv = i;
    if (piv == n) return 0;
    if (piv != k) {
      a.swap_rows(piv, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer& x = a(i, j);
        x *= a(k, k);
        mpz_submul(x.get_mpz_t(), a(i, k).get_mpz_t(), a(k, j).get_mpz_t());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank_mod_p(const IntMatrix& m, Prime p) {
  using u128 = unsigned __int128;
  const std::uint64_t q = p.value();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), m.entries()[i].get_mpz_t(), q);
    a[i] = r.get_ui();
  }
  auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return a[r * cols + c]; };
  auto inverse = [q](std::uint64_t x) {
    Integer z(static_cast<unsigned long>(x)), inv, mod(static_cast<unsigned long>(q));
    mpz_invert(inv.get_mpz_t(), z.get_mpz_t(), mod.get_mpz_t());
    return static_cast<std::uint64_t>(inv.get_ui());
  };

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    for (std::size_t k = 0; k < cols; ++k) std::swap(at(piv, k), at(rank, k));
    const std::uint64_t inv = inverse(at(rank, c));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (at(r, c) == 0) continue;
      const std::uint64_t f = static_cast<std::uint64_t>(static_cast<u128>(at(r, c)) * inv % q);
      for (std::size_t k = c; k < cols; ++k) {
        const std::uint64_t sub = static_cast<std::uint64_t>(static_cast<u128>(f) * at(rank, k) % q);
        at(r, k) = at(r, k) >= sub ? at(r, k) - sub : at(r, k) + q - sub;
      }
    }
    ++rank;
  }
  return rank;
}

unsigned long ElemDivisorProfile::total_valuation() const {
  unsigned long total = 0;
  for (std::size_t i = 0; i < multiplicities.size(); ++i) total += i * multiplicities[i];
  return total;
}

std::size_t ElemDivisorProfile::divisible_count() const {
  std::size_t n = 0;
  for (std::size_t i = 1; i < multiplicities.size(); ++i) n += multiplicities[i];
  return n;
}

namespace {

void trim(std::vector<std::size_t>& mult) {
  while (mult.size() > 1 && mult.back() == 0) mult.pop_back();
}

}  // namespace

ElemDivisorProfile profile_from_invariant_factors(std::span<const Integer> factors, Prime p) {
  ElemDivisorProfile prof{p, {0}, 0};
  for (const auto& d : factors) {
    if (d == 0) {
      ++prof.kernel_rank;
      continue;
    }
    const auto v = valuation(d, p);
    if (prof.multiplicities.size() <= v) prof.multiplicities.resize(v + 1, 0);
    ++prof.multiplicities[v];
  }
  trim(prof.multiplicities);
  return prof;
}

unsigned hadamard_precision(const IntMatrix& m, Prime p) {
  // Bound |minor|^2 by the smaller of the products of squared row norms and
  // squared column norms (zero rows/columns contribute nothing).
  auto product_of_norms = [&](bool by_rows) {
    Integer prod = 1;
    const std::size_t outer = by_rows ? m.rows() : m.cols();
    const std::size_t inner = by_rows ? m.cols() : m.rows();
    for (std::size_t i = 0; i < outer; ++i) {
      Integer norm2 = 0;
      for (std::size_t j = 0; j < inner; ++j) {
        const Integer& x = by_rows ? m(i, j) : m(j, i);
        mpz_addmul(norm2.get_mpz_t(), x.get_mpz_t(), x.get_mpz_t());
      }
      if (norm2 != 0) prod *= norm2;
    }
    return prod;
  };
  const Integer bound2 = std::min(product_of_norms(true), product_of_norms(false));
  const Integer p2 = p.as_integer() * p.as_integer();
  unsigned b = 1;
  Integer pw = p2;
  while (pw <= bound2) {
    pw *= p2;
    ++b;
  }
  return b;
}

ElemDivisorProfile elem_divisor_profile(const IntMatrix& m, Prime p, std::optional<unsigned> precision) {
  const unsigned b = precision.value_or(hadamard_precision(m, p));
  if (b == 0) throw std::invalid_argument("elem_divisor_profile: precision must be positive");
  const LocalSmithForm form = local_smith(m, p, b, false);
  ElemDivisorProfile prof{p, {0}, 0};
  for (unsigned v : form.pivot_valuations) {
    if (prof.multiplicities.size() <= v) prof.multiplicities.resize(v + 1, 0);
    ++prof.multiplicities[v];
  }
  prof.kernel_rank = std::min(m.rows(), m.cols()) - form.pivot_valuations.size();
  trim(prof.multiplicities);
  return prof;
}

std::vector<ElemDivisorProfile> elem_divisor_profiles(const IntMatrix& m, std::span<const Prime> primes,
                                                      unsigned threads, std::optional<unsigned> precision) {
  std::vector<std::optional<ElemDivisorProfile>> slots(primes.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(primes.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < primes.size(); ++i) slots[i] = elem_divisor_profile(m, primes[i], precision);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < primes.size(); i += workers)
              slots[i] = elem_divisor_profile(m, primes[i], precision);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<ElemDivisorProfile> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace critlab
