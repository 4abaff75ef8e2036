#include "critlab/moore.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "critlab/critical_group.hpp"
#include "critlab/error.hpp"
#include "critlab/filtration.hpp"
#include "critlab/lattice.hpp"

namespace critlab {

namespace {

// Linear combination of I, L, L^2 and J for a connected regular graph, where
// LJ = JL = 0 and J^2 = vJ.
struct LaplacianPoly {
  Integer i = 0;
  Integer l = 0;
  Integer l2 = 0;
  Integer j = 0;

  LaplacianPoly operator+(const LaplacianPoly& o) const { return {i + o.i, l + o.l, l2 + o.l2, j + o.j}; }
  LaplacianPoly operator-(const LaplacianPoly& o) const { return {i - o.i, l - o.l, l2 - o.l2, j - o.j}; }
  LaplacianPoly scaled(const Integer& s) const { return {s * i, s * l, s * l2, s * j}; }

  LaplacianPoly times(const LaplacianPoly& o, const Integer& v) const {
    if ((l2 != 0 && (o.l != 0 || o.l2 != 0)) || (o.l2 != 0 && l != 0)) {
      throw std::logic_error("LaplacianPoly: degree above 2");
    }
    LaplacianPoly r;
    r.i = i * o.i;
    r.l = i * o.l + l * o.i;
    r.l2 = i * o.l2 + l2 * o.i + l * o.l;
    r.j = i * o.j + j * o.i + v * j * o.j;
    return r;
  }
};

}  // namespace

LaplacianIdentity derive_laplacian_identity(const SrgParams& p) {
  p.validate();
  if (p.mu < 1) throw InfeasibleError("Laplacian identity needs mu >= 1");
  const Integer v = p.v;
  const LaplacianPoly eye{1, 0, 0, 0};
  const LaplacianPoly lap{0, 1, 0, 0};
  const LaplacianPoly ones{0, 0, 0, 1};
  const LaplacianPoly adj = eye.scaled(p.k) - lap;

  const LaplacianPoly lhs = adj.times(adj, v);
  const LaplacianPoly rhs = eye.scaled(p.k) + adj.scaled(p.lambda) + (ones - adj - eye).scaled(p.mu);
  // lhs - rhs = L^2 - shift L + constant I - mu J = 0.
  const LaplacianPoly diff = lhs - rhs;
  if (diff.l2 != 1) throw std::logic_error("unexpected L^2 coefficient");

  LaplacianIdentity id;
  id.params = p;
  id.shift = -diff.l;
  id.constant = diff.i;
  id.j_coefficient = -diff.j;
  if (id.constant <= 0) throw InfeasibleError("Laplacian identity constant is not positive");
  id.constant_factored = factorize(id.constant);
  return id;
}

bool verify_laplacian_identity(const Graph& g, const LaplacianIdentity& id) {
  const std::size_t n = g.vertex_count();
  if (n != static_cast<std::size_t>(id.params.v)) return false;
  const IntMatrix lap = laplacian_matrix(g);
  IntMatrix shifted = lap;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= id.shift;
  const IntMatrix lhs = shifted * lap;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Integer expected = id.j_coefficient - (r == c ? id.constant : Integer(0));
      if (lhs(r, c) != expected) return false;
    }
  return true;
}

unsigned DivisorBound::max_exponent(std::uint64_t prime) const {
  unsigned best = 0;
  for (const auto& pp : allowed)
    if (pp.prime == prime) best = std::max(best, pp.exponent);
  return best;
}

DivisorBound divisor_bound(const LaplacianIdentity& id) {
  DivisorBound b;
  for (const auto& [p, e] : id.constant_factored.exponents())
    for (long k = 1; k <= e; ++k)
      b.allowed.push_back({p, static_cast<unsigned>(k), power(Prime(p), static_cast<unsigned long>(k))});
  return b;
}

ForcedMultiplicity forced_multiplicities(const SrgParams& p, Prime q) {
  const LaplacianIdentity id = derive_laplacian_identity(p);
  const Factorization order = predicted_order_from_spectrum(srg_spectrum(p), p.v);
  ForcedMultiplicity fm;
  fm.prime = q.value();
  fm.valuation = static_cast<unsigned long>(order.exponent(q.value()));
  fm.max_exponent = divisor_bound(id).max_exponent(q.value());
  if (fm.valuation == 0) {
    fm.multiplicity = 0;
  } else if (fm.max_exponent == 0) {
    throw ContradictionError("prime " + std::to_string(q.value()) + " divides the order but not the bound");
  } else if (fm.max_exponent == 1) {
    if (fm.valuation > static_cast<unsigned long>(p.v - 1)) {
      throw ContradictionError("too many forced elementary divisors for prime " + std::to_string(q.value()));
    }
    fm.multiplicity = fm.valuation;
  }
  return fm;
}

std::string RankConstraint::to_string() const {
  std::ostringstream os;
  os << multiplicity << " <= ";
  bool first_term = true;
  if (kernel_term != 0) {
    os << kernel_term;
    first_term = false;
  }
  for (unsigned i = first; i <= last; ++i) {
    os << (first_term ? "" : " + ") << "e" << i;
    first_term = false;
  }
  return os.str();
}

namespace {

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "(" + q.get_str() + ")";
}

}  // namespace

std::string AffineExpr::to_string(const std::string& var) const {
  if (slope == 0) return rational_str(constant);
  std::string term;
  const Rational mag = abs(slope);
  term = (mag == 1 ? "" : rational_str(mag)) + var;
  if (constant == 0) return (slope < 0 ? "-" : "") + term;
  if (slope < 0) return rational_str(constant) + " - " + term;
  return term + (constant < 0 ? " - " : " + ") + rational_str(abs(constant));
}

std::optional<Integer> SolutionFamily::parameter_for(std::span<const std::size_t> mult) const {
  for (std::size_t i = e.size(); i < mult.size(); ++i)
    if (mult[i] != 0) return std::nullopt;
  std::optional<Rational> t;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Rational value(static_cast<unsigned long>(i < mult.size() ? mult[i] : 0));
    if (e[i].slope == 0) {
      if (e[i].constant != value) return std::nullopt;
      continue;
    }
    const Rational ti = (value - e[i].constant) / e[i].slope;
    if (t && *t != ti) return std::nullopt;
    t = ti;
  }
  const Rational tv = t.value_or(Rational(t_min));
  if (tv.get_den() != 1) return std::nullopt;
  const Integer ti = tv.get_num();
  if (ti < t_min || ti > t_max) return std::nullopt;
  return ti;
}

namespace {

struct LinearSystem {
  std::vector<std::vector<Rational>> rows;  // coefficients on e_0..e_D
  std::vector<Rational> rhs;

  void add(std::vector<Rational> coeffs, Rational value) {
    rows.push_back(std::move(coeffs));
    rhs.push_back(std::move(value));
  }
};

std::vector<Rational> indicator(std::size_t vars, unsigned first, unsigned last) {
  std::vector<Rational> c(vars, Rational(0));
  for (unsigned i = first; i <= last; ++i) c[i] = 1;
  return c;
}

Integer ceil_div(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer floor_div(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Solves the system with the highest-index unknowns free. Returns the affine
// solution in the single free variable (slopes all zero when fully
// determined), or nothing when inconsistent.
std::optional<std::vector<AffineExpr>> solve_affine(LinearSystem sys, std::size_t vars) {
  auto& a = sys.rows;
  auto& b = sys.rhs;
  std::vector<std::size_t> pivot_of_row;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < vars && rank < a.size(); ++c) {
    std::size_t piv = a.size();
    for (std::size_t r = rank; r < a.size(); ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    std::swap(b[piv], b[rank]);
    const Rational inv = 1 / a[rank][c];
    for (auto& x : a[rank]) x *= inv;
    b[rank] *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = 0; k < vars; ++k) a[r][k] -= f * a[rank][k];
      b[r] -= f * b[rank];
    }
    pivot_of_row.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < a.size(); ++r)
    if (b[r] != 0) return std::nullopt;

  std::vector<bool> pivot(vars, false);
  for (auto c : pivot_of_row) pivot[c] = true;
  std::vector<std::size_t> free_vars;
  for (std::size_t c = 0; c < vars; ++c)
    if (!pivot[c]) free_vars.push_back(c);
  if (free_vars.size() > 1) throw FreeParameterError(free_vars.size());

  std::vector<AffineExpr> sol(vars, AffineExpr{Rational(0), Rational(0)});
  if (!free_vars.empty()) sol[free_vars[0]] = {Rational(0), Rational(1)};
  for (std::size_t r = 0; r < rank; ++r) {
    const std::size_t c = pivot_of_row[r];
    sol[c].constant = b[r];
    if (!free_vars.empty()) sol[c].slope = -a[r][free_vars[0]];
  }
  return sol;
}

// Integer points of the affine solution subject to lower-bound conditions
// (each expression >= 0). Re-parameterizes so that all e_i have integer
// coefficients; returns nothing when no admissible parameter exists.
std::optional<SolutionFamily> integer_family(std::vector<AffineExpr> sol, const std::vector<AffineExpr>& nonneg) {
  // The free variable is itself an unknown, hence integral; find the residue
  // classes of it that make every other unknown integral.
  Integer period = 1;
  for (const auto& ex : sol) mpz_lcm(period.get_mpz_t(), period.get_mpz_t(), ex.slope.get_den_mpz_t());
  std::optional<Integer> offset;
  for (Integer t0 = 0; t0 < period; ++t0) {
    bool ok = true;
    for (const auto& ex : sol)
      if (Rational(ex.at(Rational(t0))).get_den() != 1) ok = false;
    if (ok) {
      offset = t0;
      break;
    }
  }
  if (!offset) return std::nullopt;
  auto reparam = [&](const AffineExpr& ex) {
    return AffineExpr{Rational(ex.at(Rational(*offset))), Rational(ex.slope * period)};
  };

  SolutionFamily fam;
  for (const auto& ex : sol) fam.e.push_back(reparam(ex));

  std::optional<Integer> lo;
  std::optional<Integer> hi;
  const bool has_param = std::any_of(fam.e.begin(), fam.e.end(), [](const AffineExpr& x) { return x.slope != 0; });
  for (const auto& raw : nonneg) {
    const AffineExpr ex = reparam(raw);
    if (ex.slope == 0) {
      if (ex.constant < 0) return std::nullopt;
    } else if (ex.slope > 0) {
      const Integer bound = ceil_div(Rational(-ex.constant / ex.slope));
      lo = lo ? std::max(*lo, bound) : bound;
    } else {
      const Integer bound = floor_div(Rational(-ex.constant / ex.slope));
      hi = hi ? std::min(*hi, bound) : bound;
    }
  }
  if (!has_param) {
    lo = hi = Integer(0);
  }
  if (!lo || !hi) throw std::logic_error("multiplicity family is unbounded");
  if (*lo > *hi) return std::nullopt;
  fam.t_min = *lo;
  fam.t_max = *hi;
  return fam;
}

}  // namespace

FreeParameterError::FreeParameterError(std::size_t count)
    : std::runtime_error("multiplicity system has " + std::to_string(count) +
                         " free parameters; only one-parameter families are supported"),
      count_(count) {}

FamilyAnalysis multiplicity_system(const SrgParams& p, Prime q) {
  const SrgSpectrum spec = srg_spectrum(p);
  const LaplacianIdentity id = derive_laplacian_identity(p);
  const Factorization order = predicted_order_from_spectrum(spec, p.v);

  FamilyAnalysis fa;
  fa.prime = q.value();
  fa.max_exponent = divisor_bound(id).max_exponent(q.value());
  fa.valuation = static_cast<unsigned long>(order.exponent(q.value()));
  fa.kernel_dim = 1;
  fa.vertex_count = p.v;
  const unsigned top = fa.max_exponent;

  if (spec.integral()) {
    for (const auto& [eig, mult] : {std::pair{spec.theta, spec.m_theta}, std::pair{spec.tau, spec.m_tau}}) {
      if (mult == 0) continue;
      const Integer lap = p.k - *eig.integral();
      const auto level = static_cast<unsigned>(valuation(lap, q));
      if (level > top) throw std::logic_error("Laplacian eigenvalue exceeds the divisor bound");
      // x in the eigenlattice has L x = lap x, so x lies in M_level, and
      // p^-level L x is a unit multiple of x, so x lies in N_level.
      if (level < top) fa.constraints.push_back({lap, mult, level, RankConstraint::Side::image, 0, 0, level});
      if (level > 0) fa.constraints.push_back({lap, mult, level, RankConstraint::Side::kernel, fa.kernel_dim, level, top});
    }
  }

  // A pair (image at level j, kernel at level j+1) covers every multiplicity
  // exactly once, so its total slack is fixed; one family per slack split.
  std::optional<std::int64_t> budget;
  for (std::size_t a = 0; a < fa.constraints.size(); ++a)
    for (std::size_t b = 0; b < fa.constraints.size(); ++b) {
      const auto& ca = fa.constraints[a];
      const auto& cb = fa.constraints[b];
      if (ca.side != RankConstraint::Side::image || cb.side != RankConstraint::Side::kernel) continue;
      if (cb.first != ca.last + 1) continue;
      const std::int64_t s = p.v - ca.multiplicity - cb.multiplicity;
      if (!budget || s < *budget) {
        budget = s;
        fa.paired = {a, b};
      }
    }
  return fa;
}

std::vector<SolutionFamily> solve_multiplicity_system(const FamilyAnalysis& fa) {
  const unsigned top = fa.max_exponent;
  const std::size_t vars = top + 1;
  if (fa.vertex_count < static_cast<std::int64_t>(fa.kernel_dim)) throw std::invalid_argument("vertex count below kernel");
  const auto free_total = static_cast<unsigned long>(fa.vertex_count - static_cast<std::int64_t>(fa.kernel_dim));
  std::optional<std::int64_t> budget;
  if (fa.paired) {
    budget = fa.vertex_count - fa.constraints.at(fa.paired->first).multiplicity -
             fa.constraints.at(fa.paired->second).multiplicity;
  }

  LinearSystem base;
  base.add(indicator(vars, 0, top), Rational(free_total));
  {
    std::vector<Rational> weights(vars);
    for (std::size_t i = 0; i < vars; ++i) weights[i] = static_cast<unsigned long>(i);
    base.add(weights, Rational(fa.valuation));
  }

  struct Case {
    LinearSystem sys;
    std::vector<std::int64_t> slack;
  };
  std::vector<Case> cases;
  if (fa.paired && *budget >= 0) {
    const auto& ca = fa.constraints[fa.paired->first];
    const auto& cb = fa.constraints[fa.paired->second];
    for (std::int64_t sa = 0; sa <= *budget; ++sa) {
      Case c{base, {sa, *budget - sa}};
      c.sys.add(indicator(vars, ca.first, ca.last), Rational(ca.multiplicity + sa));
      c.sys.add(indicator(vars, cb.first, cb.last),
                Rational(cb.multiplicity + (*budget - sa) - static_cast<std::int64_t>(cb.kernel_term)));
      cases.push_back(std::move(c));
    }
  } else if (!fa.paired) {
    cases.push_back({base, {}});
  }

  std::vector<SolutionFamily> families;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    auto sol = solve_affine(cases[ci].sys, vars);
    if (!sol) continue;
    std::vector<AffineExpr> nonneg = *sol;
    for (const auto& c : fa.constraints) {
      AffineExpr slack{Rational(static_cast<long>(c.kernel_term) - c.multiplicity), Rational(0)};
      for (unsigned i = c.first; i <= c.last; ++i) {
        slack.constant += (*sol)[i].constant;
        slack.slope += (*sol)[i].slope;
      }
      nonneg.push_back(slack);
    }
    auto fam = integer_family(*sol, nonneg);
    if (!fam) continue;
    fam->case_label = static_cast<int>(ci + 1);
    fam->prime = fa.prime;
    fam->slack = cases[ci].slack;
    const AffineExpr& rank = fam->e[0];
    if (rank.slope != 0) {
      for (std::size_t i = 1; i < fam->e.size(); ++i) {
        const AffineExpr& ex = fam->e[i];
        const Rational ratio = ex.slope / rank.slope;
        fam->in_terms_of_rank.push_back({Rational(ex.constant - ratio * rank.constant), ratio});
      }
    }
    families.push_back(std::move(*fam));
  }

  if (families.empty()) {
    throw ContradictionError("no admissible elementary-divisor multiplicities for prime " +
                             std::to_string(fa.prime) + ": parameters contradict");
  }
  return families;
}

FamilyAnalysis enumerate_families(const SrgParams& p, Prime q) {
  FamilyAnalysis fa = multiplicity_system(p, q);
  fa.families = solve_multiplicity_system(fa);
  return fa;
}

std::optional<FamilyMatch> family_membership(const ElemDivisorProfile& profile,
                                             std::span<const SolutionFamily> families) {
  for (const auto& fam : families) {
    if (fam.prime != profile.p.value()) continue;
    if (auto t = fam.parameter_for(profile.multiplicities)) return FamilyMatch{fam.case_label, *t};
  }
  return std::nullopt;
}

std::vector<EigenLatticeCheck> check_eigen_lattices(const Graph& g, const SrgParams& p, Prime q) {
  if (!check_srg(g, p)) throw std::invalid_argument("graph does not have the given SRG parameters");
  const SrgSpectrum spec = srg_spectrum(p);
  if (!spec.integral()) throw std::invalid_argument("eigenvector lattices need integral eigenvalues");
  const IntMatrix lap = laplacian_matrix(g);

  std::vector<EigenLatticeCheck> out;
  for (const auto& [eig, mult] : {std::pair{spec.theta, spec.m_theta}, std::pair{spec.tau, spec.m_tau}}) {
    if (mult == 0) continue;
    EigenLatticeCheck chk;
    chk.eigenvalue = p.k - *eig.integral();
    chk.multiplicity = mult;
    chk.level = static_cast<unsigned>(valuation(chk.eigenvalue, q));

    IntMatrix shifted = lap;
    for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= chk.eigenvalue;
    const IntMatrix eigen = saturate_at(rational_kernel_basis(shifted), q);
    chk.reduction_dim = rank_mod_p(eigen, q);

    auto reduces_into = [&](const Lattice& chain) {
      const std::size_t before = chain.reduction_dim(q);
      return rank_mod_p(chain.basis().hconcat(eigen), q) == before;
    };
    chk.in_image_chain = reduces_into(filtration_N(lap, q, chk.level));
    chk.in_kernel_chain = reduces_into(filtration_M(lap, q, chk.level));
    out.push_back(std::move(chk));
  }
  return out;
}

MooreAnalysis analyze_srg(const SrgParams& p, std::optional<Prime> prime) {
  MooreAnalysis an;
  an.params = p;
  an.spectrum = srg_spectrum(p);
  an.identity = derive_laplacian_identity(p);
  an.bound = divisor_bound(an.identity);
  an.order = predicted_order_from_spectrum(an.spectrum, p.v);

  std::vector<std::uint64_t> primes;
  for (const auto& [q, e] : an.identity.constant_factored.exponents()) primes.push_back(q);
  for (const auto& [q, e] : an.order.exponents())
    if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);
  std::sort(primes.begin(), primes.end());

  for (std::uint64_t q : primes) an.forced.push_back(forced_multiplicities(p, Prime(q)));
  const ForcedMultiplicity two = forced_multiplicities(p, Prime(2));
  if (two.multiplicity) an.even_invariant_factors = *two.multiplicity;

  std::vector<Prime> targets;
  if (prime) {
    targets.push_back(*prime);
  } else {
    for (const auto& fm : an.forced)
      if (!fm.multiplicity) targets.emplace_back(fm.prime);
  }
  for (Prime q : targets) {
    try {
      an.families.push_back(enumerate_families(p, q));
    } catch (const FreeParameterError& e) {
      an.unenumerated.emplace_back(q.value(), e.count());
    }
  }
  return an;
}

}  // namespace critlab
