#include "dawn/oracles.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

#include "dawn/errors.hpp"
#include "dawn/format.hpp"

namespace dawn {

namespace {

void check_source(const CsrGraph& g, NodeId source) {
  if (source >= g.num_nodes())
    throw std::invalid_argument("source " + std::to_string(source) +
                                " out of range for n = " + std::to_string(g.num_nodes()));
}

}  // namespace

OracleResult dijkstra_sssp(const CsrGraph& g, NodeId source) {
  check_source(g, source);
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    auto t = g.targets(u);
    auto w = g.weights(u);
    for (std::size_t k = 0; k < t.size(); ++k)
      if (w[k] < 0.0)
        throw DomainError("Dijkstra requires non-negative weights; edge " +
                          std::to_string(u) + " -> " + std::to_string(t[k]) +
                          " has weight " + format_weight(w[k]));
  }

  OracleResult r;
  r.distances.source = source;
  auto& dist = r.distances.dist;
  dist.assign(g.num_nodes(), kInfinity);
  dist[source] = 0.0;

  using Entry = std::pair<Weight, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;  // stale
    auto t = g.targets(u);
    auto w = g.weights(u);
    for (std::size_t k = 0; k < t.size(); ++k) {
      ++r.relaxations;
      const Weight cand = d + w[k];
      if (cand < dist[t[k]]) {
        dist[t[k]] = cand;
        heap.emplace(cand, t[k]);
      }
    }
  }
  return r;
}

OracleResult bellman_ford_sssp(const CsrGraph& g, NodeId source) {
  check_source(g, source);
  const std::size_t n = g.num_nodes();
  OracleResult r;
  r.distances.source = source;
  auto& dist = r.distances.dist;
  dist.assign(n, kInfinity);
  dist[source] = 0.0;

  auto pass = [&] {
    bool changed = false;
    for (NodeId u = 0; u < n; ++u) {
      if (dist[u] == kInfinity) continue;
      auto t = g.targets(u);
      auto w = g.weights(u);
      for (std::size_t k = 0; k < t.size(); ++k) {
        ++r.relaxations;
        const Weight cand = dist[u] + w[k];
        if (cand < dist[t[k]]) {
          dist[t[k]] = cand;
          changed = true;
        }
      }
    }
    return changed;
  };

  for (std::size_t i = 1; i < n; ++i)
    if (!pass()) return r;
  r.negative_cycle = pass();
  return r;
}

FloydResult floyd_warshall_apsp(const CsrGraph& g, std::size_t cap) {
  const std::size_t n = g.num_nodes();
  if (n > cap)
    throw SizeError("Floyd-Warshall limited to n <= " + std::to_string(cap) + " (n = " +
                    std::to_string(n) + "); use a per-source solver instead");
  FloydResult r;
  r.n = n;
  r.matrix.assign(n * n, kInfinity);
  for (std::size_t i = 0; i < n; ++i) r.matrix[i * n + i] = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    auto t = g.targets(u);
    auto w = g.weights(u);
    for (std::size_t k = 0; k < t.size(); ++k) {
      Weight& cell = r.matrix[u * n + t[k]];
      cell = std::min(cell, w[k]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Weight* row_k = &r.matrix[k * n];
    for (std::size_t i = 0; i < n; ++i) {
      const Weight ik = r.matrix[i * n + k];
      if (ik == kInfinity) continue;
      Weight* row_i = &r.matrix[i * n];
      for (std::size_t j = 0; j < n; ++j) {
        ++r.relaxations;
        const Weight cand = ik + row_k[j];
        if (cand < row_i[j]) row_i[j] = cand;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (r.matrix[i * n + i] < 0.0) r.negative_cycle = true;
  return r;
}

}  // namespace dawn
