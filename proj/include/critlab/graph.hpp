#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "critlab/int_matrix.hpp"

namespace critlab {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph on vertices 0..n-1. Edges are stored once each
/// with the smaller endpoint first, in insertion order.
class Graph {
 public:
  Graph() = default;
  /// Throws std::invalid_argument on loops, repeated edges or endpoints >= n.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }
  bool adjacent(std::size_t u, std::size_t v) const;

  std::size_t component_count() const;
  bool is_connected() const { return component_count() <= 1; }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph complete_bipartite_graph(std::size_t a, std::size_t b);
Graph star_graph(std::size_t leaves);
Graph wheel_graph(std::size_t rim);
Graph petersen_graph();
/// Robertson's construction: pentagons P_h and pentagrams Q_i (h, i in Z_5),
/// with P_h[j] ~ P_h[j+1], Q_i[j] ~ Q_i[j+2] and P_h[j] ~ Q_i[h*i + j].
Graph hoffman_singleton_graph();

/// The diameter-2 Moore graph of valency k in {2, 3, 7}. Valency 57 throws
/// ExistenceUnknownError; any other value std::invalid_argument.
Graph moore_graph(unsigned k);

/// Named builtin: "petersen", "hoffman-singleton" (alias "hosi"), "moore:K",
/// "cycle:N", "path:N", "complete:N", "star:N", "wheel:N", "bipartite:A,B".
Graph named_graph(const std::string& name);

IntMatrix adjacency_matrix(const Graph& g);
IntMatrix laplacian_matrix(const Graph& g);

/// Edge list: "n m" then m lines "u v" (0-based).
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace critlab
