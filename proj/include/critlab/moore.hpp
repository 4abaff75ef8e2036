#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "critlab/arith.hpp"
#include "critlab/graph.hpp"
#include "critlab/smith.hpp"
#include "critlab/srg.hpp"

namespace critlab {

/// (L - shift I) L = -constant I + j_coefficient J, valid for the Laplacian of
/// every graph with the given SRG parameters.
struct LaplacianIdentity {
  SrgParams params;
  Integer shift;
  Integer constant;
  Integer j_coefficient;
  Factorization constant_factored;
};

/// Substitutes A = kI - L into A^2 = kI + lambda A + mu (J - A - I) and
/// collects terms. Requires mu >= 1 (connected, diameter 2).
LaplacianIdentity derive_laplacian_identity(const SrgParams& p);

/// Entrywise check of the identity on an actual graph.
bool verify_laplacian_identity(const Graph& g, const LaplacianIdentity& id);

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  Integer value;
};

/// On the sum-zero sublattice Y = ker J the identity reads
/// (L - shift I) L = -constant I, so every invariant factor of L restricted to
/// Y divides the constant. The same holds for the critical group, a quotient.
struct DivisorBound {
  std::vector<PrimePower> allowed;

  /// Largest exponent of `prime` that may occur; 0 when it cannot divide.
  unsigned max_exponent(std::uint64_t prime) const;
};

DivisorBound divisor_bound(const LaplacianIdentity& id);

/// Elementary divisors of q in the critical group, when the bound fixes them.
struct ForcedMultiplicity {
  std::uint64_t prime = 0;
  /// v_q of the critical-group order.
  unsigned long valuation = 0;
  /// Largest q-exponent allowed by the divisor bound.
  unsigned max_exponent = 0;
  /// Multiplicity of q^1 when all q-divisors must equal q (or 0 when q does
  /// not divide the order); empty when higher powers remain possible.
  std::optional<std::uint64_t> multiplicity;
};

ForcedMultiplicity forced_multiplicities(const SrgParams& p, Prime q);

/// "multiplicity(eigenvalue) <= kernel_term + e_first + ... + e_last", coming
/// from the eigenvector lattice of a Laplacian eigenvalue with q-valuation
/// `level` landing inside N_level (image side) or M_level (kernel side).
struct RankConstraint {
  enum class Side { image, kernel };

  Integer eigenvalue;
  std::int64_t multiplicity = 0;
  unsigned level = 0;
  Side side = Side::image;
  std::size_t kernel_term = 0;
  unsigned first = 0;
  unsigned last = 0;

  std::string to_string() const;
};

/// constant + slope * x over the rationals.
struct AffineExpr {
  Rational constant;
  Rational slope;

  Rational at(const Rational& x) const { return constant + slope * x; }
  std::string to_string(const std::string& var) const;
  bool operator==(const AffineExpr&) const = default;
};

/// One-parameter family of multiplicity vectors (e_0, ..., e_D) with every
/// e_i = e[i](t) for integer t in [t_min, t_max].
struct SolutionFamily {
  int case_label = 1;
  std::uint64_t prime = 0;
  /// Slack assigned to each paired constraint (empty when none are paired).
  std::vector<std::int64_t> slack;
  Integer t_min;
  Integer t_max;
  std::vector<AffineExpr> e;
  /// e_1 .. e_D as functions of the p-rank e_0; empty when e_0 is constant.
  std::vector<AffineExpr> in_terms_of_rank;

  /// Parameter value reproducing `mult` (padded with zeros), if any.
  std::optional<Integer> parameter_for(std::span<const std::size_t> mult) const;
};

/// The linear system behind the families for one prime: the count and
/// valuation equalities plus the eigenvector-lattice rank constraints.
struct FamilyAnalysis {
  std::uint64_t prime = 0;
  std::int64_t vertex_count = 0;
  unsigned max_exponent = 0;
  unsigned long valuation = 0;
  std::size_t kernel_dim = 1;
  std::vector<RankConstraint> constraints;
  /// Indices into `constraints` of the image/kernel pair whose right-hand
  /// sides partition all multiplicities, if one exists.
  std::optional<std::pair<std::size_t, std::size_t>> paired;
  std::vector<SolutionFamily> families;
};

/// Raised when the solution set needs more than one free parameter.
class FreeParameterError : public std::runtime_error {
 public:
  FreeParameterError(std::size_t count);
  std::size_t count() const noexcept { return count_; }

 private:
  std::size_t count_;
};

/// Builds the system (constraints and pairing, no families yet).
FamilyAnalysis multiplicity_system(const SrgParams& p, Prime q);

/// All nonnegative integer solutions of the system as one-parameter families.
/// Throws ContradictionError when there are none, FreeParameterError when a
/// family needs more than one free parameter.
std::vector<SolutionFamily> solve_multiplicity_system(const FamilyAnalysis& system);

/// multiplicity_system followed by solve_multiplicity_system.
FamilyAnalysis enumerate_families(const SrgParams& p, Prime q);

struct FamilyMatch {
  int case_label = 0;
  Integer parameter;
};

std::optional<FamilyMatch> family_membership(const ElemDivisorProfile& profile,
                                             std::span<const SolutionFamily> families);

/// Concrete check, on an actual graph, of the containments behind the rank
/// constraints: the q-saturated eigenvector lattice of each restricted
/// Laplacian eigenvalue reduces into N_j-bar and M_j-bar.
struct EigenLatticeCheck {
  Integer eigenvalue;
  std::int64_t multiplicity = 0;
  unsigned level = 0;
  std::size_t reduction_dim = 0;
  bool in_image_chain = false;
  bool in_kernel_chain = false;
};

std::vector<EigenLatticeCheck> check_eigen_lattices(const Graph& g, const SrgParams& p, Prime q);

/// Everything the analyzer derives from SRG parameters alone.
struct MooreAnalysis {
  SrgParams params;
  SrgSpectrum spectrum;
  LaplacianIdentity identity;
  DivisorBound bound;
  Factorization order;
  std::vector<ForcedMultiplicity> forced;
  /// Number of even invariant factors (bicycle dimension) when forced.
  std::optional<std::uint64_t> even_invariant_factors;
  std::vector<FamilyAnalysis> families;
  /// Primes whose families were not enumerated, with their free-parameter count.
  std::vector<std::pair<std::uint64_t, std::size_t>> unenumerated;
};

/// With `prime` set, families are enumerated for that prime only; otherwise
/// for every prime whose multiplicities are not forced.
MooreAnalysis analyze_srg(const SrgParams& p, std::optional<Prime> prime = std::nullopt);

}  // namespace critlab
