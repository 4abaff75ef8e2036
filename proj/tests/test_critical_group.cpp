#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "critlab/critical_group.hpp"
#include "critlab/graph.hpp"
#include "critlab/moore.hpp"
#include "critlab/smith.hpp"
#include "oracles.hpp"

using namespace critlab;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("small critical groups") {
  const CriticalGroup k3 = critical_group(complete_graph(3));
  CHECK(k3.invariant_factors == ints({3}));
  CHECK(k3.order == 3);
  CHECK(k3.free_rank == 1);

  const CriticalGroup k4 = critical_group(complete_graph(4));
  CHECK(k4.invariant_factors == ints({4, 4}));
  CHECK(k4.order == 16);

  CHECK(critical_group(cycle_graph(5)).invariant_factors == ints({5}));
  CHECK(critical_group(path_graph(6)).invariant_factors.empty());
  CHECK(critical_group(path_graph(6)).order == 1);

  const CriticalGroup two = critical_group(Graph(4, {{0, 1}, {2, 3}}));
  CHECK(two.free_rank == 2);
  CHECK(two.order == 1);
}

TEST_CASE("Moore graph critical groups") {
  const CriticalGroup pet = critical_group(petersen_graph());
  CHECK(pet.order == 2000);
  CHECK(pet.invariant_factors == ints({2, 10, 10, 10}));
  CHECK(pet.order_factored().to_string() == "2^4 * 5^3");

  const CriticalGroup hosi = critical_group(hoffman_singleton_graph());
  CHECK(hosi.order_factored().to_string() == "2^20 * 5^47");
  for (const auto& d : hosi.invariant_factors) {
    // Elementary divisors lie in {2, 5, 25}, so every invariant factor divides 50.
    CHECK(50 % d == 0);
  }
}

TEST_CASE("large-graph path agrees with the dense Smith form") {
  CriticalGroupOptions sparse;
  sparse.dense_vertex_limit = 0;
  sparse.threads = 2;
  std::mt19937_64 rng(41);
  std::vector<Graph> graphs{petersen_graph(), hoffman_singleton_graph(), complete_graph(6), wheel_graph(7),
                            complete_bipartite_graph(3, 4)};
  for (int i = 0; i < 10; ++i) graphs.push_back(oracle::random_graph(rng, 9, 0.45));
  for (const auto& g : graphs) {
    if (!g.is_connected()) continue;
    const CriticalGroup dense = critical_group(g);
    const CriticalGroup fast = critical_group(g, sparse);
    CHECK(fast.invariant_factors == dense.invariant_factors);
    CHECK(fast.order == dense.order);
    CHECK(fast.free_rank == dense.free_rank);
  }
}

TEST_CASE("spanning tree count") {
  CHECK(spanning_tree_count(complete_graph(4)) == 16);
  CHECK(spanning_tree_count(cycle_graph(5)) == 5);
  CHECK(spanning_tree_count(petersen_graph()) == 2000);
  CHECK(spanning_tree_count(Graph(3, {{0, 1}})) == 0);
  CHECK(spanning_tree_count(Graph(1, {})) == 1);

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = oracle::random_graph(rng, 3 + trial % 6, 0.5);
    CAPTURE(trial);
    const Integer trees = spanning_tree_count(g);
    CHECK(trees == oracle::brute_spanning_trees(g));
    if (g.is_connected()) CHECK(critical_group(g).order == trees);
  }
  CHECK(oracle::brute_spanning_trees(petersen_graph()) == 2000);
}

TEST_CASE("bicycle dimension against the F2 oracle") {
  CHECK(bicycle_dimension(cycle_graph(5)) == 0);
  CHECK(bicycle_dimension(complete_graph(4)) == 2);
  CHECK(bicycle_dimension(petersen_graph()) == 4);
  CHECK(oracle::brute_bicycle_dimension(petersen_graph()) == 4);

  // Every labelled graph on up to five vertices (at most ten edges).
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& g : oracle::all_graphs(n)) {
      CHECK(bicycle_dimension(g) == oracle::brute_bicycle_dimension(g));
      ++graphs;
    }
  CHECK(graphs == 1 + 2 + 8 + 64 + 1024);

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = oracle::random_graph(rng, 6 + trial % 3, 0.35);
    if (g.edge_count() > 12) continue;
    CHECK(bicycle_dimension(g) == oracle::brute_bicycle_dimension(g));
  }
}

TEST_CASE("order from the spectrum") {
  CHECK(predicted_order_from_spectrum(srg_spectrum({3250, 57, 0, 1}), 3250).to_string() ==
        "2^1728 * 5^4975 * 13^1519");
  CHECK(predicted_order_from_spectrum(srg_spectrum({10, 3, 0, 1}), 10).to_string() == "2^4 * 5^3");
  CHECK(predicted_order_from_spectrum(srg_spectrum({50, 7, 0, 1}), 50).to_string() == "2^20 * 5^47");
  CHECK(predicted_order_from_spectrum(srg_spectrum({5, 2, 0, 1}), 5).to_string() == "5");

  for (unsigned k : {2u, 3u, 7u}) {
    const Graph g = moore_graph(k);
    CHECK(predicted_order_from_spectrum(srg_spectrum(SrgParams::moore(k)), g.vertex_count()).value() ==
          critical_group(g).order);
  }
  // A non-Moore strongly regular graph.
  CHECK(predicted_order_from_spectrum(srg_spectrum({6, 3, 0, 3}), 6).value() ==
        critical_group(complete_bipartite_graph(3, 3)).order);
}
