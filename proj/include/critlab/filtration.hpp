#pragma once

#include <cstddef>
#include <vector>

#include "critlab/arith.hpp"
#include "critlab/int_matrix.hpp"
#include "critlab/lattice.hpp"
#include "critlab/smith.hpp"

namespace critlab {

/// M_i = { x : m x == 0 mod p^i }, a full-rank sublattice of the domain.
Lattice filtration_M(const IntMatrix& m, Prime p, unsigned level);

/// N_i = p^{-i} m(M_i), an ascending chain in the codomain that stabilizes at
/// the p-purification of the image.
Lattice filtration_N(const IntMatrix& m, Prime p, unsigned level);

/// dim over F_p of the reduction of ker(m) (a direct summand, so its rank).
std::size_t kernel_reduction_dim(const IntMatrix& m, Prime p);

/// Residue dimensions of both chains checked against the elementary-divisor
/// multiplicities:
///   dim M_i-bar = dim ker-bar + e_i + e_{i+1} + ...
///   dim N_i-bar = e_0 + ... + e_i
struct FiltrationReport {
  Prime p;
  unsigned max_level = 0;
  std::vector<std::size_t> dims_M;
  std::vector<std::size_t> dims_N;
  std::size_t kernel_dim = 0;
  /// Multiplicities used for the comparison.
  ElemDivisorProfile profile;
  bool identities_hold = false;
  /// M_{i+1} within M_i and N_i within N_{i+1} at every level.
  bool chains_nested = false;

  bool pass() const { return identities_hold && chains_nested; }
};

/// Levels 0 .. 1 + v_p(product of nonzero invariant factors); the chains are
/// constant from there on.
FiltrationReport verify_lemma_dims(const IntMatrix& m, Prime p);

}  // namespace critlab
