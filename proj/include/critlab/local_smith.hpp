#pragma once

#include <optional>
#include <vector>

#include "critlab/arith.hpp"
#include "critlab/int_matrix.hpp"

namespace critlab {

/// Diagonalization of a matrix over the local ring Z/p^B.
struct LocalSmithForm {
  unsigned precision = 0;
  /// Valuation of each pivot, in elimination order; all are < precision.
  std::vector<unsigned> pivot_valuations;
  /// Column transform Q (invertible mod p^B, entries in [0, p^B)). After the
  /// elimination, column j of m*Q is congruent to p^{pivot_valuations[j]} times
  /// a vector that is nonzero mod p for j < pivots, and to zero beyond that.
  std::optional<IntMatrix> column_transform;
};

/// Eliminates m mod p^precision, pivoting on entries of minimal p-valuation.
LocalSmithForm local_smith(const IntMatrix& m, Prime p, unsigned precision, bool track_columns = false);

}  // namespace critlab
