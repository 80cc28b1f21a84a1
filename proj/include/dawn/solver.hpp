// Weighted DAWN shortest-path kernels.
//
// Both kernels start from the same seeded state: every direct out-neighbour
// of the source holds its cheapest edge weight (step 1). Each further step
// relaxes out-edges in CSR order, writing in place, until a step performs no
// write or the step counter reaches n.
//
//  * GSVM rescans every node with a finite distance on each step.
//  * GOVM rescans only the nodes written during the previous step.
//
// Relaxation is a strict `dist[t] > dist[j] + w` test and never targets the
// source, so dist[source] stays 0.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dawn/graph.hpp"

namespace dawn {

enum class Algorithm { Gsvm, Govm };

std::string to_string(Algorithm a);

inline constexpr NodeId kNoPredecessor = std::numeric_limits<NodeId>::max();

struct DistanceVector {
  NodeId source = 0;
  std::vector<Weight> dist;

  friend bool operator==(const DistanceVector&, const DistanceVector&) = default;
};

struct PredecessorVector {
  std::vector<NodeId> pred;  // kNoPredecessor for the source and unreached nodes
};

struct SolveStats {
  std::uint64_t outer_steps = 0;
  std::uint64_t relaxations = 0;
  std::uint64_t writes = 0;
  std::uint64_t first_discoveries = 0;
  std::uint64_t re_updates = 0;
  double mu = 0.0;
  double updated_ratio = 0.0;
  bool negative_cycle = false;

  friend bool operator==(const SolveStats&, const SolveStats&) = default;
};

// Flat key/value rendering in a fixed key order.
std::vector<std::pair<std::string, std::string>> to_key_values(const SolveStats& s);

// Instrumentation for tests: (step, node) pairs for every scanned row and
// every distance write, in execution order. Seeding is step 1.
struct SolveTrace {
  std::vector<std::pair<std::uint64_t, NodeId>> scans;
  std::vector<std::pair<std::uint64_t, NodeId>> writes;
};

struct SolveOptions {
  bool record_pred = false;
  SolveTrace* trace = nullptr;
};

struct SsspResult {
  DistanceVector distances;
  PredecessorVector predecessors;  // empty unless record_pred was set
  SolveStats stats;
};

// Per-solve mutable state. One workspace per worker; reusable across sources
// of the same graph.
struct SsspWorkspace {
  std::vector<Weight> dist;           // alpha
  std::vector<std::uint8_t> current;  // delta
  std::vector<std::uint8_t> next;     // beta
  std::vector<NodeId> pred;
  std::vector<std::uint32_t> write_count;
  SolveStats stats;
  // Set when an improvement to the pinned source was refused, which proves a
  // negative closed walk through the source.
  bool source_improvement_blocked = false;

  void reset(std::size_t n, NodeId source);
};

// Step 1: dist[j] = min over edges (source -> j, w), j != source, with
// current[j] set for every seeded node.
void seed_source(const CsrGraph& g, NodeId source, SsspWorkspace& ws,
                 const SolveOptions& opts = {});

SsspResult gsvm_sssp(const CsrGraph& g, NodeId source, const SolveOptions& opts = {});
SsspResult govm_sssp(const CsrGraph& g, NodeId source, const SolveOptions& opts = {});
SsspResult solve_sssp(const CsrGraph& g, NodeId source, Algorithm algo,
                      const SolveOptions& opts = {});

// Runs one solve in a caller-owned workspace.
SsspResult solve_sssp(const CsrGraph& g, NodeId source, Algorithm algo,
                      SsspWorkspace& ws, const SolveOptions& opts = {});

// Sums over sources. Means are taken over sources that reached at least one
// node; both are 0 when no source reached anything.
struct AggregateStats {
  std::uint64_t sources = 0;
  std::uint64_t sources_reaching = 0;
  std::uint64_t outer_steps = 0;
  std::uint64_t relaxations = 0;
  std::uint64_t writes = 0;
  std::uint64_t first_discoveries = 0;
  std::uint64_t re_updates = 0;
  double mean_mu = 0.0;
  double mean_updated_ratio = 0.0;
  std::uint64_t negative_cycle_sources = 0;

  friend bool operator==(const AggregateStats&, const AggregateStats&) = default;
};

class StatsAccumulator {
 public:
  void add(const SolveStats& s);
  AggregateStats result() const;

 private:
  AggregateStats totals_;
  double mu_sum_ = 0.0;
  double ratio_sum_ = 0.0;
};

AggregateStats aggregate(std::span<const SolveStats> stats);

std::size_t default_workers();

// Independent solves from each source, parallel across sources. Row i always
// belongs to sources[i], whatever the worker count.
std::vector<SsspResult> mssp(const CsrGraph& g, std::span<const NodeId> sources,
                             Algorithm algo, std::size_t workers,
                             const SolveOptions& opts = {});

using RowSink = std::function<void(const DistanceVector&, const SolveStats&)>;

// All-pairs as a stream of rows in ascending source order; only a bounded
// batch of rows is held in memory at once. An exception from the sink stops
// the run and propagates.
AggregateStats apsp(const CsrGraph& g, Algorithm algo, std::size_t workers,
                    const RowSink& sink);

// Runs fn(index, worker_id) for index in [0, count) across `workers` threads.
// The first exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace dawn
