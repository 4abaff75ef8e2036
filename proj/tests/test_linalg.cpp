#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "critlab/error.hpp"
#include "critlab/local_smith.hpp"
#include "critlab/smith.hpp"
#include "oracles.hpp"

using namespace critlab;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

bool is_diagonal_with(const IntMatrix& m, const std::vector<Integer>& d) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Integer want = (r == c && r < d.size()) ? d[r] : Integer(0);
      if (m(r, c) != want) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("arithmetic helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(1'000'000'007));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS_AS(Prime(4), std::invalid_argument);
  CHECK(valuation(Integer(3250), Prime(5)) == 3);
  CHECK(power(Prime(5), 3) == 125);

  const Factorization f = factorize(Integer(3250));
  CHECK(f.to_string() == "2 * 5^3 * 13");
  CHECK(f.value() == 3250);
  CHECK(factorize(Integer(1)).to_string() == "1");
  const Integer big = Integer(1'000'000'007) * 1024;
  CHECK(factorize(big).exponent(1'000'000'007) == 1);
  CHECK(factorize(big).exponent(2) == 10);

  Factorization q = factorize(Integer(50));
  q.divide(factorize(Integer(100)));
  CHECK_FALSE(q.is_integral());
  CHECK_THROWS_AS(q.value(), std::domain_error);
}

TEST_CASE("Smith normal form examples") {
  CHECK(smith_normal_form(IntMatrix::diagonal({2, 3})).invariant_factors == ints({1, 6}));
  CHECK(smith_normal_form(IntMatrix::identity(4)).invariant_factors == ints({1, 1, 1, 1}));
  CHECK(smith_normal_form(IntMatrix{{2, 4}, {6, 8}}).invariant_factors == ints({2, 4}));
  CHECK(smith_normal_form(IntMatrix(0, 0)).invariant_factors.empty());
  CHECK(smith_normal_form(IntMatrix(2, 3)).invariant_factors == ints({0, 0}));
  CHECK(smith_normal_form(IntMatrix{{6, 0}, {0, 0}, {0, 4}}).invariant_factors == ints({2, 12}));
}

TEST_CASE("determinantal divisors match the Smith form") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto small = oracle::random_matrix(rng, dim(rng), dim(rng), trial % 3 == 0 ? 3 : 20);
    const IntMatrix m = oracle::to_int_matrix(small);
    const auto want = oracle::invariant_factors(small);
    const SnfResult got = smith_normal_form(m);
    REQUIRE(got.invariant_factors.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(got.invariant_factors[i] == want[i]);
  }
}

TEST_CASE("Smith form invariants on structured inputs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    // Known invariant factors hidden by unimodular mixing, with entries
    // well beyond the range of the minor oracle.
    std::vector<long> diag;
    long d = 1;
    const std::size_t rows = 3 + trial % 6, cols = 3 + (trial / 6) % 6;
    const std::size_t rank = std::min(rows, cols) - trial % 2;
    for (std::size_t i = 0; i < rank; ++i) {
      d *= std::vector<long>{1, 1, 2, 3, 5, 4}[(trial + i) % 6];
      diag.push_back(d);
    }
    const IntMatrix m = oracle::scrambled_diagonal(rng, diag, rows, cols, 60);
    const SnfResult got = smith_normal_form(m);
    CAPTURE(trial);
    for (std::size_t i = 0; i < got.invariant_factors.size(); ++i) {
      CHECK(got.invariant_factors[i] == (i < diag.size() ? Integer(diag[i]) : Integer(0)));
      if (i + 1 < got.invariant_factors.size() && got.invariant_factors[i + 1] != 0) {
        CHECK(mpz_divisible_p(got.invariant_factors[i + 1].get_mpz_t(), got.invariant_factors[i].get_mpz_t()));
      }
    }
  }
}

TEST_CASE("unimodular witnesses") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix m = oracle::to_int_matrix(oracle::random_matrix(rng, dim(rng), dim(rng), 9));
    const SnfResult snf = smith_normal_form(m, true);
    REQUIRE(snf.left.has_value());
    REQUIRE(snf.right.has_value());
    CHECK(is_diagonal_with(*snf.left * m * *snf.right, snf.invariant_factors));
    CHECK(abs(determinant(*snf.left)) == 1);
    CHECK(abs(determinant(*snf.right)) == 1);
    CHECK(snf.invariant_factors == smith_normal_form(m).invariant_factors);
  }
}

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix::identity(3)) == 1);
  CHECK(determinant(IntMatrix{{2, 4}, {6, 8}}) == -8);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const auto small = oracle::random_matrix(rng, n, n, 15);
    const IntMatrix m = oracle::to_int_matrix(small);
    const Integer det = determinant(m);
    CHECK(det == oracle::laplace_det(small));
    if (det != 0) CHECK(abs(det) == smith_normal_form(m).torsion_product());
  }
}

TEST_CASE("rank mod p") {
  CHECK(rank_mod_p(IntMatrix::identity(5), Prime(5)) == 5);
  CHECK(rank_mod_p(IntMatrix::diagonal({5, 1}), Prime(5)) == 1);
  CHECK(rank_mod_p(IntMatrix(3, 4), Prime(2)) == 0);
  CHECK(rank_mod_p(IntMatrix{{1, 1}, {1, -1}}, Prime(2)) == 1);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix m = oracle::to_int_matrix(oracle::random_matrix(rng, 1 + trial % 7, 1 + trial % 5, 20));
    for (std::uint64_t p : {2, 3, 5, 13}) {
      const auto prof = elem_divisor_profile(m, Prime(p));
      CHECK(rank_mod_p(m, Prime(p)) == prof.multiplicity(0));
    }
  }
}

TEST_CASE("elementary divisor profile examples") {
  const auto a = elem_divisor_profile(IntMatrix::diagonal({1, 5, 25}), Prime(5));
  CHECK(a.multiplicities == std::vector<std::size_t>{1, 1, 1});
  CHECK(a.kernel_rank == 0);
  const auto b = elem_divisor_profile(IntMatrix::diagonal({10, 20}), Prime(2));
  CHECK(b.multiplicities == std::vector<std::size_t>{0, 1, 1});
  const auto c = elem_divisor_profile(IntMatrix::diagonal({3, 0, 0}), Prime(3));
  CHECK(c.multiplicities == std::vector<std::size_t>{0, 1});
  CHECK(c.kernel_rank == 2);
  CHECK(c.total_valuation() == 1);
  CHECK(c.divisible_count() == 1);
}

TEST_CASE("profiles agree with the p-part of the Smith form") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  const std::vector<Prime> primes{Prime(2), Prime(3), Prime(5), Prime(13)};
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix m = oracle::to_int_matrix(oracle::random_matrix(rng, dim(rng), dim(rng), trial % 2 ? 4 : 30));
    const SnfResult snf = smith_normal_form(m);
    const auto parallel = elem_divisor_profiles(m, primes, 3);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const auto want = profile_from_invariant_factors(snf.invariant_factors, primes[i]);
      CHECK(elem_divisor_profile(m, primes[i]) == want);
      CHECK(parallel[i] == want);
      std::size_t total = want.kernel_rank;
      for (auto e : want.multiplicities) total += e;
      CHECK(total == std::min(m.rows(), m.cols()));
      CHECK(want.total_valuation() == valuation(snf.torsion_product(), primes[i]));
    }
  }
}

TEST_CASE("explicit precision and local column transform") {
  const IntMatrix m{{25, 0, 5}, {0, 125, 0}, {5, 0, 1}};
  const auto prof = elem_divisor_profile(m, Prime(5), 5u);
  CHECK(prof == profile_from_invariant_factors(smith_normal_form(m).invariant_factors, Prime(5)));

  const LocalSmithForm form = local_smith(m, Prime(5), 6, true);
  REQUIRE(form.column_transform.has_value());
  CHECK(form.pivot_valuations == std::vector<unsigned>{0, 3});
  const Integer modulus = power(Prime(5), form.precision);
  const IntMatrix mq = m * *form.column_transform;
  for (std::size_t j = 0; j < mq.cols(); ++j) {
    const bool pivot = j < form.pivot_valuations.size();
    const Integer unit = pivot ? power(Prime(5), form.pivot_valuations[j]) : modulus;
    bool exact_level = !pivot;
    for (std::size_t r = 0; r < mq.rows(); ++r) {
      Integer x = mq(r, j) % modulus;
      CHECK(mpz_divisible_p(x.get_mpz_t(), unit.get_mpz_t()));
      if (pivot && !mpz_divisible_p(x.get_mpz_t(), Integer(unit * 5).get_mpz_t())) exact_level = true;
    }
    CHECK(exact_level);
  }
  CHECK(determinant(*form.column_transform) % 5 != 0);
  CHECK(power(Prime(5), hadamard_precision(m, Prime(5))) > 125);
}

TEST_CASE("matrix text format") {
  std::istringstream in("2 3\n1 -2 3\n40000000000000000000000 0 5\n");
  const IntMatrix m = read_matrix(in);
  CHECK(m.rows() == 2);
  CHECK(m(1, 0) == Integer("40000000000000000000000"));
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(read_matrix(ss) == m);

  std::istringstream bad("2 2\n1 2 3\n");
  CHECK_THROWS_AS(read_matrix(bad), ParseError);
  std::istringstream junk("1 1\nx\n");
  CHECK_THROWS_AS(read_matrix(junk), ParseError);
}
