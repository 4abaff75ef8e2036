#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "critlab/filtration.hpp"
#include "critlab/graph.hpp"
#include "critlab/lattice.hpp"
#include "critlab/moore.hpp"
#include "oracles.hpp"

using namespace critlab;

namespace {

std::vector<Integer> vec(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

// Expected residue dimensions from an independently computed Smith form.
struct Expected {
  std::vector<std::size_t> dims_M, dims_N;
};

Expected lemma_dims_from_snf(const IntMatrix& m, Prime p, std::size_t levels) {
  const auto snf = smith_normal_form(m, true);
  std::vector<std::size_t> e;
  std::size_t kernel = m.cols() - snf.rank();
  for (const auto& d : snf.invariant_factors) {
    if (d == 0) continue;
    const auto v = valuation(d, p);
    if (e.size() <= v) e.resize(v + 1, 0);
    ++e[v];
  }
  Expected out;
  for (std::size_t i = 0; i < levels; ++i) {
    std::size_t above = kernel, below = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k >= i) above += e[k];
      if (k <= i) below += e[k];
    }
    out.dims_M.push_back(above);
    out.dims_N.push_back(below);
  }
  return out;
}

}  // namespace

TEST_CASE("filtration M examples") {
  const Prime p(5);
  const IntMatrix d = IntMatrix::diagonal({5, 25, 0});
  const Lattice m1 = filtration_M(d, p, 1);
  CHECK(m1.rank() == 3);
  CHECK(m1.reduction_dim(p) == 3);

  const Lattice m2 = filtration_M(d, p, 2);
  CHECK(m2.reduction_dim(p) == 2);
  CHECK(m2.contains(vec({5, 0, 0})));
  CHECK(m2.contains(vec({0, 1, 0})));
  CHECK(m2.contains(vec({0, 0, 1})));
  CHECK_FALSE(m2.contains(vec({1, 0, 0})));
  CHECK(m2.contains(Lattice::from_generators(IntMatrix{{5, 0, 0}, {0, 1, 0}, {0, 0, 1}})));

  const Lattice id1 = filtration_M(IntMatrix::identity(2), p, 1);
  CHECK(id1.reduction_dim(p) == 0);
  CHECK(id1.contains(vec({5, 0})));
  CHECK_FALSE(id1.contains(vec({1, 0})));
}

TEST_CASE("filtration N examples") {
  const Prime p(5);
  const IntMatrix d = IntMatrix::diagonal({5, 25, 0});
  const Lattice n1 = filtration_N(d, p, 1);
  CHECK(n1.reduction_dim(p) == 1);
  CHECK(n1.contains(vec({1, 0, 0})));
  CHECK(n1.contains(vec({0, 5, 0})));
  CHECK_FALSE(n1.contains(vec({0, 1, 0})));

  const Lattice n2 = filtration_N(d, p, 2);
  CHECK(n2.reduction_dim(p) == 2);
  CHECK(n2.contains(vec({0, 1, 0})));
  CHECK_FALSE(n2.contains(vec({0, 0, 1})));

  const Lattice z = filtration_N(IntMatrix(3, 3), p, 2);
  CHECK(z.rank() == 0);
}

TEST_CASE("lemma dims on diag(5, 25, 0)") {
  const auto r = verify_lemma_dims(IntMatrix::diagonal({5, 25, 0}), Prime(5));
  CHECK(r.pass());
  CHECK(r.kernel_dim == 1);
  REQUIRE(r.dims_M.size() >= 4);
  CHECK(std::vector<std::size_t>(r.dims_M.begin(), r.dims_M.begin() + 4) == std::vector<std::size_t>{3, 3, 2, 1});
  CHECK(std::vector<std::size_t>(r.dims_N.begin(), r.dims_N.begin() + 4) == std::vector<std::size_t>{0, 1, 2, 2});
}

TEST_CASE("lemma dims on random matrices") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  for (int trial = 0; trial < 120; ++trial) {
    const IntMatrix m = oracle::to_int_matrix(oracle::random_matrix(rng, dim(rng), dim(rng), trial % 2 ? 6 : 20));
    for (std::uint64_t q : {2, 3, 5}) {
      const Prime p(q);
      const auto r = verify_lemma_dims(m, p);
      CAPTURE(trial);
      CAPTURE(q);
      CHECK(r.pass());
      const auto want = lemma_dims_from_snf(m, p, r.dims_M.size());
      CHECK(r.dims_M == want.dims_M);
      CHECK(r.dims_N == want.dims_N);
      CHECK(r.dims_M.front() == m.cols());
      CHECK(r.dims_N.back() == smith_normal_form(m).rank());
      CHECK(std::is_sorted(r.dims_M.rbegin(), r.dims_M.rend()));
      CHECK(std::is_sorted(r.dims_N.begin(), r.dims_N.end()));
    }
  }
}

TEST_CASE("chain containment") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMatrix m = oracle::to_int_matrix(oracle::random_matrix(rng, 5, 5, 10));
    const Prime p(trial % 2 ? 2 : 3);
    for (unsigned i = 0; i < 4; ++i) {
      CHECK(filtration_M(m, p, i).contains(filtration_M(m, p, i + 1)));
      CHECK(filtration_N(m, p, i + 1).contains(filtration_N(m, p, i)));
    }
  }
}

TEST_CASE("Petersen and Hoffman-Singleton filtrations") {
  const auto pet = verify_lemma_dims(laplacian_matrix(petersen_graph()), Prime(5));
  CHECK(pet.pass());
  CHECK(pet.dims_N[1] >= 4);
  CHECK(verify_lemma_dims(laplacian_matrix(petersen_graph()), Prime(2)).pass());

  const IntMatrix hosi = laplacian_matrix(hoffman_singleton_graph());
  const auto r5 = verify_lemma_dims(hosi, Prime(5));
  CHECK(r5.pass());
  CHECK(r5.kernel_dim == 1);
  CHECK(r5.profile.total_valuation() == 47);
}

TEST_CASE("eigenvector lattices land in the filtration") {
  SUBCASE("Hoffman-Singleton, q = 5") {
    const auto checks = check_eigen_lattices(hoffman_singleton_graph(), {50, 7, 0, 1}, Prime(5));
    REQUIRE(checks.size() == 2);
    for (const auto& c : checks) {
      CAPTURE(c.eigenvalue);
      CHECK(c.reduction_dim == static_cast<std::size_t>(c.multiplicity));
      CHECK(c.level == 1);
      CHECK(c.in_image_chain);
      CHECK(c.in_kernel_chain);
    }
  }
  SUBCASE("Petersen, q = 5 and q = 2") {
    for (std::uint64_t q : {5, 2}) {
      for (const auto& c : check_eigen_lattices(petersen_graph(), {10, 3, 0, 1}, Prime(q))) {
        CHECK(c.reduction_dim == static_cast<std::size_t>(c.multiplicity));
        CHECK(c.in_image_chain);
        CHECK(c.in_kernel_chain);
      }
    }
  }
}

TEST_CASE("rational kernel and saturation") {
  const IntMatrix m{{1, 1, 1}, {2, 2, 2}};
  const IntMatrix k = rational_kernel_basis(m);
  CHECK(k.cols() == 2);
  CHECK((m * k).is_zero());
  // Columns (5, 0) and (0, 5) reduce to zero mod 5; saturation fixes that.
  const IntMatrix s = saturate_at(IntMatrix{{5, 0}, {0, 5}}, Prime(5));
  CHECK(rank_mod_p(s, Prime(5)) == 2);
  const IntMatrix t = saturate_at(IntMatrix{{1, 1}, {1, 6}}, Prime(5));
  CHECK(rank_mod_p(t, Prime(5)) == 2);
}
