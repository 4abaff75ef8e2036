#include "critlab/sandpile.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <thread>

#include "critlab/error.hpp"

namespace critlab {

namespace {

void check_input(const ChipConfig& c, const Graph& g) {
  if (c.chips.size() != g.vertex_count()) throw std::invalid_argument("chip vector size does not match graph");
  if (c.sink >= g.vertex_count()) throw std::invalid_argument("sink out of range");
  if (!g.is_connected()) throw std::invalid_argument("sandpile dynamics need a connected graph");
  for (std::size_t v = 0; v < c.chips.size(); ++v)
    if (v != c.sink && c.chips[v] < 0) throw std::invalid_argument("negative chip count");
}

// Topples without validation; used on hot paths.
void relax(ChipConfig& c, const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::deque<std::size_t> queue;
  std::vector<bool> queued(n, false);
  for (std::size_t v = 0; v < n; ++v)
    if (v != c.sink && c.chips[v] >= static_cast<std::int64_t>(g.degree(v))) {
      queue.push_back(v);
      queued[v] = true;
    }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    queued[v] = false;
    const auto deg = static_cast<std::int64_t>(g.degree(v));
    const std::int64_t fires = c.chips[v] / deg;
    if (fires == 0) continue;
    c.chips[v] -= fires * deg;
    for (std::size_t w : g.neighbors(v)) {
      if (w == c.sink) continue;
      c.chips[w] += fires;
      if (!queued[w] && c.chips[w] >= static_cast<std::int64_t>(g.degree(w))) {
        queue.push_back(w);
        queued[w] = true;
      }
    }
  }
  c.chips[c.sink] = 0;
}

}  // namespace

ChipConfig ChipConfig::zero(const Graph& g, std::size_t sink) {
  if (sink >= g.vertex_count()) throw std::invalid_argument("sink out of range");
  return {std::vector<std::int64_t>(g.vertex_count(), 0), sink};
}

ChipConfig stabilize(ChipConfig c, const Graph& g) {
  check_input(c, g);
  relax(c, g);
  return c;
}

ChipConfig stabilize(ChipConfig c, const Graph& g, std::mt19937_64& rng) {
  check_input(c, g);
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> unstable;
  for (;;) {
    unstable.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (v != c.sink && c.chips[v] >= static_cast<std::int64_t>(g.degree(v))) unstable.push_back(v);
    if (unstable.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, unstable.size() - 1);
    const std::size_t v = unstable[pick(rng)];
    c.chips[v] -= static_cast<std::int64_t>(g.degree(v));
    for (std::size_t w : g.neighbors(v))
      if (w != c.sink) ++c.chips[w];
  }
  c.chips[c.sink] = 0;
  return c;
}

bool is_recurrent(const ChipConfig& c, const Graph& g) {
  ChipConfig burned = c;
  for (std::size_t w : g.neighbors(c.sink)) ++burned.chips[w];
  return stabilize(std::move(burned), g) == c;
}

ChipConfig sandpile_add(const ChipConfig& a, const ChipConfig& b, const Graph& g) {
  if (a.sink != b.sink) throw std::invalid_argument("sandpile_add: different sinks");
  ChipConfig s = a;
  for (std::size_t v = 0; v < s.chips.size(); ++v) s.chips[v] += b.chips.at(v);
  return stabilize(std::move(s), g);
}

ChipConfig sandpile_identity(const Graph& g, std::size_t sink) {
  ChipConfig twice_max = ChipConfig::zero(g, sink);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (v != sink) twice_max.chips[v] = 2 * (static_cast<std::int64_t>(g.degree(v)) - 1);
  const ChipConfig stab = stabilize(twice_max, g);
  ChipConfig diff = twice_max;
  for (std::size_t v = 0; v < diff.chips.size(); ++v) diff.chips[v] -= stab.chips[v];
  return stabilize(std::move(diff), g);
}

std::vector<ChipConfig> recurrent_configurations(const Graph& g, std::size_t sink, const SandpileLimits& lim) {
  const std::size_t n = g.vertex_count();
  if (sink >= n) throw std::invalid_argument("sink out of range");
  if (!g.is_connected()) throw std::invalid_argument("sandpile dynamics need a connected graph");

  std::vector<std::size_t> vertices;
  std::uint64_t total = 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (v == sink) continue;
    vertices.push_back(v);
    const std::uint64_t deg = g.degree(v);
    if (total > lim.max_configurations / deg) {
      throw SizeLimitError("sandpile enumeration exceeds " + std::to_string(lim.max_configurations) +
                           " stable configurations");
    }
    total *= deg;
  }

  // Shard the mixed-radix index range; shards are concatenated in order.
  const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(lim.threads, total)));
  std::vector<std::vector<ChipConfig>> shards(workers);
  auto scan = [&](unsigned w) {
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    ChipConfig c = ChipConfig::zero(g, sink);
    std::uint64_t rem = begin;
    for (std::size_t v : vertices) {
      c.chips[v] = static_cast<std::int64_t>(rem % g.degree(v));
      rem /= g.degree(v);
    }
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      ChipConfig burned = c;
      for (std::size_t u : g.neighbors(sink)) ++burned.chips[u];
      relax(burned, g);
      if (burned == c) shards[w].push_back(c);
      for (std::size_t v : vertices) {
        if (++c.chips[v] < static_cast<std::int64_t>(g.degree(v))) break;
        c.chips[v] = 0;
      }
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
  }
  std::vector<ChipConfig> out;
  for (auto& s : shards) std::move(s.begin(), s.end(), std::back_inserter(out));
  return out;
}

std::uint64_t recurrent_count(const Graph& g, std::size_t sink, const SandpileLimits& lim) {
  return recurrent_configurations(g, sink, lim).size();
}

std::vector<Integer> sandpile_group_structure(const Graph& g, std::size_t sink, const SandpileLimits& lim) {
  const std::vector<ChipConfig> rec = recurrent_configurations(g, sink, lim);
  const ChipConfig identity = sandpile_identity(g, sink);
  if (std::find(rec.begin(), rec.end(), identity) == rec.end()) {
    throw std::logic_error("sandpile identity is not recurrent");
  }

  const std::uint64_t order = rec.size();
  const Factorization f = factorize(Integer(static_cast<unsigned long>(order)));
  auto times = [&](const ChipConfig& x, std::uint64_t k) {
    ChipConfig acc = identity;
    ChipConfig base = x;
    for (; k > 0; k >>= 1) {
      if (k & 1) acc = sandpile_add(acc, base, g);
      if (k > 1) base = sandpile_add(base, base, g);
    }
    return acc;
  };
  std::vector<std::uint64_t> orders;
  orders.reserve(rec.size());
  for (const auto& x : rec) {
    if (!(times(x, order) == identity)) throw std::logic_error("element order does not divide the group order");
    std::uint64_t k = order;
    for (const auto& [p, e] : f.exponents()) {
      while (k % p == 0 && times(x, k / p) == identity) k /= p;
    }
    orders.push_back(k);
  }

  // For each prime p, |G[p^j]| = #{x : ord(x) | p^j}; the ratio of consecutive
  // sizes is p^(number of cyclic p-factors with exponent >= j).
  std::vector<std::vector<unsigned long>> exps;
  for (const auto& [p, e] : f.exponents()) {
    std::vector<std::uint64_t> count_at(static_cast<std::size_t>(e) + 1, 0);
    for (std::uint64_t o : orders) {
      std::uint64_t pk = 1;
      for (long j = 0; j <= e; ++j, pk *= p) {
        if (pk % o == 0) ++count_at[static_cast<std::size_t>(j)];
      }
    }
    std::vector<std::size_t> at_least(static_cast<std::size_t>(e) + 2, 0);
    for (long j = 1; j <= e; ++j) {
      std::uint64_t ratio = count_at[static_cast<std::size_t>(j)] / count_at[static_cast<std::size_t>(j - 1)];
      std::size_t r = 0;
      while (ratio > 1) {
        if (ratio % p != 0) throw std::logic_error("element order counts are inconsistent");
        ratio /= p;
        ++r;
      }
      at_least[static_cast<std::size_t>(j)] = r;
    }
    std::vector<unsigned long> desc;
    for (long j = e; j >= 1; --j) {
      const std::size_t exactly = at_least[static_cast<std::size_t>(j)] - at_least[static_cast<std::size_t>(j) + 1];
      for (std::size_t k = 0; k < exactly; ++k) desc.push_back(static_cast<unsigned long>(j));
    }
    exps.push_back(std::move(desc));
  }

  std::size_t count = 0;
  for (const auto& e : exps) count = std::max(count, e.size());
  std::vector<Integer> factors(count, Integer(1));
  std::size_t pi = 0;
  for (const auto& [p, e] : f.exponents()) {
    for (std::size_t j = 0; j < exps[pi].size(); ++j) factors[j] *= power(Prime(p), exps[pi][j]);
    ++pi;
  }
  std::reverse(factors.begin(), factors.end());

  Integer product = 1;
  for (const auto& d : factors) product *= d;
  if (product != static_cast<unsigned long>(order)) throw std::logic_error("reconstructed group order mismatch");
  return factors;
}

}  // namespace critlab
