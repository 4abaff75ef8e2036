#include "critlab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "critlab/error.hpp"

namespace critlab {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : adjacency_(n) {
  std::set<Edge> seen;
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("loops are not allowed");
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) throw std::invalid_argument("repeated edge");
    edges_.emplace_back(u, v);
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  const auto& nb = adjacency_.at(u);
  return std::find(nb.begin(), nb.end(), v) != nb.end();
}

std::size_t Graph::component_count() const {
  const std::size_t n = vertex_count();
  std::vector<bool> seen(n, false);
  std::size_t count = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adjacency_[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return count;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e));
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph(a + b, std::move(e));
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, std::move(e));
}

Graph wheel_graph(std::size_t rim) {
  if (rim < 3) throw std::invalid_argument("wheel needs a rim of at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < rim; ++i) {
    e.emplace_back(0, 1 + i);
    e.emplace_back(1 + i, 1 + (i + 1) % rim);
  }
  return Graph(rim + 1, std::move(e));
}

Graph petersen_graph() {
  // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i ~ i+5.
  std::vector<Edge> e;
  for (std::size_t i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
    e.emplace_back(i, 5 + i);
  }
  return Graph(10, std::move(e));
}

Graph hoffman_singleton_graph() {
  // P_h[j] -> 5h + j, Q_i[j] -> 25 + 5i + j.
  auto pent = [](std::size_t h, std::size_t j) { return 5 * h + j % 5; };
  auto gram = [](std::size_t i, std::size_t j) { return 25 + 5 * i + j % 5; };
  std::vector<Edge> e;
  for (std::size_t h = 0; h < 5; ++h)
    for (std::size_t j = 0; j < 5; ++j) {
      e.emplace_back(pent(h, j), pent(h, j + 1));
      e.emplace_back(gram(h, j), gram(h, j + 2));
    }
  for (std::size_t h = 0; h < 5; ++h)
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) e.emplace_back(pent(h, j), gram(i, h * i + j));
  return Graph(50, std::move(e));
}

Graph moore_graph(unsigned k) {
  switch (k) {
    case 2:
      return cycle_graph(5);
    case 3:
      return petersen_graph();
    case 7:
      return hoffman_singleton_graph();
    case 57:
      throw ExistenceUnknownError("Moore graph of valency 57: existence unknown");
    default:
      throw std::invalid_argument("no diameter-2 Moore graph of valency " + std::to_string(k));
  }
}

namespace {

std::size_t parse_size(const std::string& s, const std::string& name) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) throw std::invalid_argument("bad graph size in '" + name + "'");
  return v;
}

}  // namespace

Graph named_graph(const std::string& name) {
  if (name == "petersen") return petersen_graph();
  if (name == "hoffman-singleton" || name == "hosi") return hoffman_singleton_graph();
  const auto colon = name.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("unknown graph '" + name + "'");
  const std::string kind = name.substr(0, colon);
  const std::string arg = name.substr(colon + 1);
  if (kind == "bipartite") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bipartite needs A,B");
    return complete_bipartite_graph(parse_size(arg.substr(0, comma), name), parse_size(arg.substr(comma + 1), name));
  }
  const std::size_t n = parse_size(arg, name);
  if (kind == "moore") return moore_graph(static_cast<unsigned>(n));
  if (kind == "cycle") return cycle_graph(n);
  if (kind == "path") return path_graph(n);
  if (kind == "complete") return complete_graph(n);
  if (kind == "star") return star_graph(n);
  if (kind == "wheel") return wheel_graph(n);
  throw std::invalid_argument("unknown graph '" + name + "'");
}

IntMatrix adjacency_matrix(const Graph& g) {
  IntMatrix a(g.vertex_count(), g.vertex_count());
  for (auto [u, v] : g.edges()) {
    a(u, v) = 1;
    a(v, u) = 1;
  }
  return a;
}

IntMatrix laplacian_matrix(const Graph& g) {
  IntMatrix l(g.vertex_count(), g.vertex_count());
  for (auto [u, v] : g.edges()) {
    l(u, v) = -1;
    l(v, u) = -1;
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) l(v, v) = static_cast<unsigned long>(g.degree(v));
  return l;
}

Graph read_edge_list(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw ParseError("edge list: expected header \"n m\"");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = -1, v = -1;
    if (!(in >> u >> v)) throw ParseError("edge list: truncated at edge " + std::to_string(i));
    if (u < 0 || v < 0) throw ParseError("edge list: negative vertex index");
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  std::string extra;
  if (in >> extra) throw ParseError("edge list: trailing token '" + extra + "'");
  try {
    return Graph(static_cast<std::size_t>(n), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("edge list: ") + e.what());
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace critlab
