#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "critlab/critical_group.hpp"
#include "critlab/error.hpp"
#include "critlab/moore.hpp"
#include "critlab/smith.hpp"

using namespace critlab;

namespace {

const SrgParams kMoore57{3250, 57, 0, 1};
const SrgParams kHoSi{50, 7, 0, 1};
const SrgParams kPetersen{10, 3, 0, 1};
const SrgParams kPentagon{5, 2, 0, 1};

std::vector<std::string> rank_exprs(const SolutionFamily& f) {
  std::vector<std::string> out;
  for (const auto& e : f.in_terms_of_rank) out.push_back(e.to_string("e0"));
  return out;
}

std::vector<std::string> param_exprs(const SolutionFamily& f) {
  std::vector<std::string> out;
  for (const auto& e : f.e) out.push_back(e.to_string("t"));
  return out;
}

std::vector<std::uint64_t> bound_values(const DivisorBound& b) {
  std::vector<std::uint64_t> out;
  for (const auto& pp : b.allowed) out.push_back(pp.value.get_ui());
  return out;
}

}  // namespace

TEST_CASE("Laplacian identity") {
  const auto m57 = derive_laplacian_identity(kMoore57);
  CHECK(m57.shift == 115);
  CHECK(m57.constant == 3250);
  CHECK(m57.j_coefficient == 1);
  CHECK(m57.constant_factored.to_string() == "2 * 5^3 * 13");

  const auto hosi = derive_laplacian_identity(kHoSi);
  CHECK(hosi.shift == 15);
  CHECK(hosi.constant == 50);
  const auto pet = derive_laplacian_identity(kPetersen);
  CHECK(pet.shift == 7);
  CHECK(pet.constant == 10);
  const auto c5 = derive_laplacian_identity(kPentagon);
  CHECK(c5.shift == 5);
  CHECK(c5.constant == 5);

  CHECK(verify_laplacian_identity(cycle_graph(5), c5));
  CHECK(verify_laplacian_identity(petersen_graph(), pet));
  CHECK(verify_laplacian_identity(hoffman_singleton_graph(), hosi));
  CHECK_FALSE(verify_laplacian_identity(petersen_graph(), hosi));
  CHECK_FALSE(verify_laplacian_identity(cycle_graph(10), pet));

  // mu > 1: K_{3,3} is SRG(6, 3, 0, 3).
  const auto k33 = derive_laplacian_identity({6, 3, 0, 3});
  CHECK(k33.j_coefficient == 3);
  CHECK(verify_laplacian_identity(complete_bipartite_graph(3, 3), k33));
  CHECK(k33.constant == 6 * 3);

  CHECK_THROWS_AS(derive_laplacian_identity({3250, 57, 0, 2}), InfeasibleError);
}

TEST_CASE("divisor bound") {
  CHECK(bound_values(divisor_bound(derive_laplacian_identity(kMoore57))) == std::vector<std::uint64_t>{2, 5, 25, 125, 13});
  CHECK(bound_values(divisor_bound(derive_laplacian_identity(kPetersen))) == std::vector<std::uint64_t>{2, 5});
  CHECK(bound_values(divisor_bound(derive_laplacian_identity(kHoSi))) == std::vector<std::uint64_t>{2, 5, 25});
  const auto b = divisor_bound(derive_laplacian_identity(kMoore57));
  CHECK(b.max_exponent(5) == 3);
  CHECK(b.max_exponent(13) == 1);
  CHECK(b.max_exponent(3) == 0);
}

TEST_CASE("divisor bound holds on real Moore graphs") {
  for (unsigned k : {2u, 3u, 7u}) {
    const auto bound = divisor_bound(derive_laplacian_identity(SrgParams::moore(k)));
    const CriticalGroup cg = critical_group(moore_graph(k));
    const Factorization order = cg.order_factored();
    for (const auto& [p, e] : order.exponents()) {
      CHECK(bound.max_exponent(p) >= 1);
      const auto prof = profile_from_invariant_factors(cg.invariant_factors, Prime(p));
      CHECK(prof.multiplicities.size() <= bound.max_exponent(p) + 1);
    }
  }
}

TEST_CASE("forced multiplicities") {
  const auto two = forced_multiplicities(kMoore57, Prime(2));
  CHECK(two.multiplicity == 1728u);
  CHECK(forced_multiplicities(kMoore57, Prime(13)).multiplicity == 1519u);
  const auto five = forced_multiplicities(kMoore57, Prime(5));
  CHECK_FALSE(five.multiplicity.has_value());
  CHECK(five.valuation == 4975);
  CHECK(five.max_exponent == 3);
  CHECK(forced_multiplicities(kMoore57, Prime(3)).multiplicity == 0u);
  CHECK(forced_multiplicities(kHoSi, Prime(2)).multiplicity == 20u);

  // Measured e_1 at q = 2 on the real graphs.
  for (const auto& [params, graph] : {std::pair{kHoSi, hoffman_singleton_graph()}, std::pair{kPetersen, petersen_graph()}}) {
    const auto prof = elem_divisor_profile(laplacian_matrix(graph), Prime(2));
    const auto forced = forced_multiplicities(params, Prime(2));
    REQUIRE(forced.multiplicity.has_value());
    CHECK(prof.multiplicity(1) == *forced.multiplicity);
    CHECK(prof.multiplicities.size() <= 2);
  }
  CHECK(forced_multiplicities(kPetersen, Prime(5)).multiplicity == 3u);
}

TEST_CASE("Moore(57) families for q = 5") {
  const FamilyAnalysis fa = enumerate_families(kMoore57, Prime(5));
  CHECK(fa.max_exponent == 3);
  CHECK(fa.valuation == 4975);
  REQUIRE(fa.paired.has_value());
  CHECK(fa.constraints[fa.paired->first].to_string() == "1520 <= e0 + e1");
  CHECK(fa.constraints[fa.paired->second].to_string() == "1729 <= 1 + e2 + e3");
  REQUIRE(fa.families.size() == 2);

  const auto& c1 = fa.families[0];
  CHECK(c1.case_label == 1);
  CHECK(param_exprs(c1) == std::vector<std::string>{"t + 3", "1517 - t", "1729 - t", "t"});
  CHECK(rank_exprs(c1) == std::vector<std::string>{"1520 - e0", "1732 - e0", "e0 - 3"});
  CHECK(c1.t_min == 0);
  CHECK(c1.t_max == 1517);

  const auto& c2 = fa.families[1];
  CHECK(c2.case_label == 2);
  CHECK(param_exprs(c2) == std::vector<std::string>{"t + 2", "1519 - t", "1728 - t", "t"});
  CHECK(rank_exprs(c2) == std::vector<std::string>{"1521 - e0", "1730 - e0", "e0 - 2"});
  CHECK(c2.t_min == 0);
  CHECK(c2.t_max == 1519);
}

TEST_CASE("sum rules across every family member") {
  for (const auto& [params, q] : {std::pair{kMoore57, 5u}, std::pair{kHoSi, 5u}, std::pair{kPetersen, 5u}}) {
    const FamilyAnalysis fa = enumerate_families(params, Prime(q));
    for (const auto& fam : fa.families)
      for (Integer t = fam.t_min; t <= fam.t_max; ++t) {
        Rational count = 0, weighted = 0;
        for (std::size_t i = 0; i < fam.e.size(); ++i) {
          const Rational e = fam.e[i].at(Rational(t));
          CHECK(e >= 0);
          CHECK(e.get_den() == 1);
          count += e;
          weighted += e * static_cast<unsigned long>(i);
        }
        CHECK(count + 1 == params.v);
        CHECK(weighted == fa.valuation);
      }
  }
}

TEST_CASE("Moore(57) families cover every solution of the combined system") {
  // Two equalities leave e0 and e3 free: e2 = 1726 + e0 - 2 e3 and
  // e1 = 1523 - 2 e0 + e3. Scan both and keep nonnegative solutions of the
  // two rank inequalities.
  const FamilyAnalysis fa = enumerate_families(kMoore57, Prime(5));
  std::size_t solutions = 0, covered = 0;
  for (std::int64_t e0 = 0; e0 <= 3250; ++e0)
    for (std::int64_t e3 = 0; e3 <= 3250; ++e3) {
      const std::int64_t e2 = 1726 + e0 - 2 * e3;
      const std::int64_t e1 = 1523 - 2 * e0 + e3;
      if (e1 < 0 || e2 < 0) continue;
      if (e0 + e1 < 1520 || 1 + e2 + e3 < 1729) continue;
      ++solutions;
      const std::vector<std::size_t> mult{static_cast<std::size_t>(e0), static_cast<std::size_t>(e1),
                                          static_cast<std::size_t>(e2), static_cast<std::size_t>(e3)};
      if (family_membership({Prime(5), mult, 1}, fa.families)) ++covered;
    }
  CHECK(solutions == 1518 + 1520);
  CHECK(covered == solutions);
}

TEST_CASE("family membership") {
  const FamilyAnalysis fa = enumerate_families(kMoore57, Prime(5));
  const auto a = family_membership({Prime(5), {3, 1517, 1729, 0}, 1}, fa.families);
  REQUIRE(a.has_value());
  CHECK(a->case_label == 1);
  CHECK(a->parameter == 0);
  const auto b = family_membership({Prime(5), {2, 1519, 1728, 0}, 1}, fa.families);
  REQUIRE(b.has_value());
  CHECK(b->case_label == 2);
  CHECK(b->parameter == 0);
  CHECK_FALSE(family_membership({Prime(5), {0, 0, 0, 0}, 1}, fa.families));
  CHECK_FALSE(family_membership({Prime(2), {3, 1517, 1729, 0}, 1}, fa.families));
  const auto c = family_membership({Prime(5), {103, 1417, 1629, 100}, 1}, fa.families);
  REQUIRE(c.has_value());
  CHECK(c->parameter == 100);
}

TEST_CASE("Hoffman-Singleton profile lies in an enumerated family") {
  const FamilyAnalysis fa = enumerate_families(kHoSi, Prime(5));
  REQUIRE(fa.families.size() == 1);
  CHECK_FALSE(fa.paired.has_value());
  CHECK(param_exprs(fa.families[0]) == std::vector<std::string>{"t + 2", "47 - 2t", "t"});

  const auto measured = elem_divisor_profile(laplacian_matrix(hoffman_singleton_graph()), Prime(5));
  CHECK(measured.total_valuation() == 47);
  const auto match = family_membership(measured, fa.families);
  REQUIRE(match.has_value());
  CHECK(match->parameter == Integer(static_cast<unsigned long>(measured.multiplicity(2))));

  // The rank inequalities the families are built from hold for the measured profile.
  for (const auto& c : fa.constraints) {
    std::size_t rhs = c.kernel_term;
    for (unsigned i = c.first; i <= c.last; ++i) rhs += measured.multiplicity(i);
    CHECK(static_cast<std::size_t>(c.multiplicity) <= rhs);
  }
}

TEST_CASE("Petersen profile at q = 5") {
  const FamilyAnalysis fa = enumerate_families(kPetersen, Prime(5));
  REQUIRE(fa.families.size() == 1);
  const auto measured = elem_divisor_profile(laplacian_matrix(petersen_graph()), Prime(5));
  CHECK(measured.multiplicities == std::vector<std::size_t>{6, 3});
  CHECK(family_membership(measured, fa.families).has_value());
}

TEST_CASE("contradictory systems") {
  FamilyAnalysis sys = multiplicity_system(kMoore57, Prime(5));
  CHECK(sys.families.empty());
  CHECK_NOTHROW(solve_multiplicity_system(sys));

  FamilyAnalysis too_deep = sys;
  too_deep.valuation = 3 * 3249 + 1;
  CHECK_THROWS_AS(solve_multiplicity_system(too_deep), ContradictionError);

  FamilyAnalysis crowded = sys;
  crowded.constraints[crowded.paired->first].multiplicity = 2000;
  CHECK_THROWS_AS(solve_multiplicity_system(crowded), ContradictionError);
}

TEST_CASE("systems with several free parameters") {
  CHECK_THROWS_AS(enumerate_families({99, 48, 22, 24}, Prime(3)), FreeParameterError);
  const MooreAnalysis an = analyze_srg({99, 48, 22, 24});
  REQUIRE(an.unenumerated.size() == 1);
  CHECK(an.unenumerated[0].first == 3);
  CHECK(an.unenumerated[0].second == 2);
}

TEST_CASE("full analysis") {
  const MooreAnalysis an = analyze_srg(kMoore57);
  CHECK(an.order.to_string() == "2^1728 * 5^4975 * 13^1519");
  CHECK(an.even_invariant_factors == 1728u);
  REQUIRE(an.families.size() == 1);
  CHECK(an.families[0].prime == 5);
  CHECK(an.families[0].families.size() == 2);

  const MooreAnalysis c5 = analyze_srg(kPentagon);
  CHECK(c5.order.to_string() == "5");
  CHECK(c5.even_invariant_factors == 0u);
  CHECK(c5.families.empty());

  const MooreAnalysis pet = analyze_srg(kPetersen);
  CHECK(pet.even_invariant_factors == bicycle_dimension(petersen_graph()));
  const MooreAnalysis hosi = analyze_srg(kHoSi);
  CHECK(hosi.even_invariant_factors == bicycle_dimension(hoffman_singleton_graph()));
}

TEST_CASE("affine expression formatting") {
  CHECK(AffineExpr{Rational(3), Rational(1)}.to_string("t") == "t + 3");
  CHECK(AffineExpr{Rational(-3), Rational(1)}.to_string("e0") == "e0 - 3");
  CHECK(AffineExpr{Rational(1520), Rational(-1)}.to_string("e0") == "1520 - e0");
  CHECK(AffineExpr{Rational(47), Rational(-2)}.to_string("t") == "47 - 2t");
  CHECK(AffineExpr{Rational(0), Rational(1)}.to_string("t") == "t");
  CHECK(AffineExpr{Rational(0), Rational(-1)}.to_string("t") == "-t");
  CHECK(AffineExpr{Rational(7), Rational(0)}.to_string("t") == "7");
  CHECK(AffineExpr{Rational(1, 2), Rational(1, 3)}.to_string("t") == "(1/3)t + (1/2)");
}
