#pragma once

#include <cstddef>
#include <vector>

#include "critlab/arith.hpp"
#include "critlab/graph.hpp"
#include "critlab/srg.hpp"

namespace critlab {

/// Torsion part of coker L as invariant factors greater than one, plus the
/// free rank (one per connected component).
struct CriticalGroup {
  std::vector<Integer> invariant_factors;
  Integer order = 1;
  std::size_t free_rank = 0;

  /// Number of invariant factors (of L, equivalently of the group) that are even.
  std::size_t even_factor_count() const;
  Factorization order_factored() const;
};

struct CriticalGroupOptions {
  /// Above this many vertices the group is assembled from per-prime
  /// elementary-divisor profiles instead of a full integer Smith form.
  std::size_t dense_vertex_limit = 200;
  unsigned threads = 1;
};

CriticalGroup critical_group(const Graph& g, const CriticalGroupOptions& opts = {});

/// Determinant of the Laplacian with row and column 0 deleted; 0 for a
/// disconnected graph, 1 for graphs with fewer than two vertices.
Integer spanning_tree_count(const Graph& g);

/// Number of even invariant factors of the Laplacian, which is the dimension of
/// the bicycle space (cycle space intersected with cut space over F_2).
std::size_t bicycle_dimension(const Graph& g);

/// Factorization of (product of nonzero Laplacian eigenvalues) / v for a
/// connected strongly regular graph with the given spectrum. Throws
/// InfeasibleError when the quotient is not an integer.
Factorization predicted_order_from_spectrum(const SrgSpectrum& s, std::int64_t v);

}  // namespace critlab
