#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "critlab/arith.hpp"
#include "critlab/graph.hpp"

namespace critlab {

/// Chip configuration on a graph with a designated sink. `chips` has one slot
/// per vertex; the sink's slot is ignored and kept at zero.
struct ChipConfig {
  std::vector<std::int64_t> chips;
  std::size_t sink = 0;

  static ChipConfig zero(const Graph& g, std::size_t sink);
  bool operator==(const ChipConfig&) const = default;
};

/// Fires unstable non-sink vertices (chips >= degree) until none remain.
/// Throws std::invalid_argument for a disconnected graph or negative chips.
ChipConfig stabilize(ChipConfig c, const Graph& g);
/// Same dynamics, firing one uniformly chosen unstable vertex at a time.
ChipConfig stabilize(ChipConfig c, const Graph& g, std::mt19937_64& rng);

/// Dhar's burning test: c is recurrent iff stabilize(c + beta) == c, where
/// beta counts each vertex's edges to the sink.
bool is_recurrent(const ChipConfig& c, const Graph& g);

/// stabilize(a + b).
ChipConfig sandpile_add(const ChipConfig& a, const ChipConfig& b, const Graph& g);
/// The identity of the sandpile group: stab(2c_max - stab(2c_max)).
ChipConfig sandpile_identity(const Graph& g, std::size_t sink);

struct SandpileLimits {
  /// Upper bound on the number of stable configurations enumerated.
  std::uint64_t max_configurations = 20'000'000;
  unsigned threads = 1;
};

/// All recurrent configurations, in mixed-radix order of the stable configurations.
std::vector<ChipConfig> recurrent_configurations(const Graph& g, std::size_t sink, const SandpileLimits& lim = {});
std::uint64_t recurrent_count(const Graph& g, std::size_t sink, const SandpileLimits& lim = {});

/// Invariant factors (> 1, ascending) of the group of recurrent
/// configurations, recovered from the distribution of element orders.
std::vector<Integer> sandpile_group_structure(const Graph& g, std::size_t sink, const SandpileLimits& lim = {});

}  // namespace critlab
