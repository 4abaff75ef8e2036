#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "critlab/arith.hpp"
#include "critlab/int_matrix.hpp"

namespace critlab {

/// A sublattice of Z^d stored as a column-echelon (Hermite-style) basis:
/// column j is zero above its pivot row, pivot rows strictly increase, pivots
/// are positive, and entries to the left of a pivot are reduced modulo it.
class Lattice {
 public:
  /// Lattice spanned by the columns of `generators`.
  static Lattice from_generators(const IntMatrix& generators);
  /// Same, for a full-rank lattice known to contain modulus * Z^d. All
  /// intermediate entries stay reduced modulo `modulus`.
  static Lattice from_generators_mod(const IntMatrix& generators, const Integer& modulus);
  static Lattice full(std::size_t dim);
  static Lattice zero(std::size_t dim);

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t rank() const noexcept { return basis_.cols(); }
  const IntMatrix& basis() const noexcept { return basis_; }

  /// Membership by back-substitution along the pivots.
  bool contains(std::span<const Integer> v) const;
  bool contains(const Lattice& other) const;

  /// dim over F_p of (L + pZ^d) / pZ^d.
  std::size_t reduction_dim(Prime p) const;

 private:
  Lattice(IntMatrix basis, std::vector<std::size_t> pivots);

  IntMatrix basis_;
  std::vector<std::size_t> pivot_rows_;
};

/// Basis (as columns) of the rational kernel of m, scaled to integer vectors.
IntMatrix rational_kernel_basis(const IntMatrix& m);

/// Replaces the columns of `basis` by a basis of the same rational span whose
/// reductions mod p are linearly independent, so the Z_(p)-span is a direct
/// summand. Columns must be linearly independent over Q.
IntMatrix saturate_at(const IntMatrix& basis, Prime p);

}  // namespace critlab
