// Classical reference solvers used as correctness oracles and benchmark
// comparators.
#pragma once

#include <cstdint>
#include <vector>

#include "dawn/graph.hpp"
#include "dawn/solver.hpp"

namespace dawn {

struct OracleResult {
  DistanceVector distances;
  bool negative_cycle = false;  // only Bellman-Ford sets this
  std::uint64_t relaxations = 0;
};

// Binary-heap Dijkstra with lazy deletion. Throws DomainError naming the first
// negative edge.
OracleResult dijkstra_sssp(const CsrGraph& g, NodeId source);

// Up to n-1 passes in CSR row order, then one detection pass: negative_cycle
// is set iff that pass still improves a distance reachable from the source.
OracleResult bellman_ford_sssp(const CsrGraph& g, NodeId source);

inline constexpr std::size_t kDefaultFloydCap = 2000;

struct FloydResult {
  std::size_t n = 0;
  std::vector<Weight> matrix;  // row-major n x n
  bool negative_cycle = false;
  std::uint64_t relaxations = 0;

  Weight at(std::size_t i, std::size_t j) const { return matrix[i * n + j]; }
};

// Throws SizeError when n exceeds `cap`.
FloydResult floyd_warshall_apsp(const CsrGraph& g, std::size_t cap = kDefaultFloydCap);

}  // namespace dawn
