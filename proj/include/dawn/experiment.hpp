// Path-update (mu) experiment and timing benchmarks.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dawn/graph.hpp"
#include "dawn/oracles.hpp"
#include "dawn/solver.hpp"

namespace dawn {

inline constexpr std::size_t kDefaultMuSources = 64;

// Paired runs over one graph structure: a unit-weight baseline arm and an arm
// with weights drawn from [0, 2). The headline numbers describe the random
// arm.
struct MuReport {
  std::string graph_id;
  std::uint64_t seed = 0;
  std::uint64_t sources_requested = 0;
  std::uint64_t sources_sampled = 0;
  std::vector<NodeId> sources;
  AggregateStats baseline;
  AggregateStats randomized;
  // Mean over reaching sources of the random arm's updated_ratio.
  double mean_updated_ratio = 0.0;
  // 1 + mean over reaching sources of re_updates / first_discoveries.
  double mean_mu = 0.0;
  std::vector<SolveStats> baseline_per_source;
  std::vector<SolveStats> randomized_per_source;
  std::vector<std::string> notes;

  friend bool operator==(const MuReport&, const MuReport&) = default;
};

// min(k, n) distinct node ids drawn with `seed`, sorted ascending.
std::vector<NodeId> sample_sources(std::size_t n, std::size_t k, std::uint64_t seed);

// Summary figures recomputed from per-source stats:
// {1 + mean(re_updates / first_discoveries), mean(updated_ratio)}.
std::pair<double, double> mu_summary(std::span<const SolveStats> per_source);

// Samples min(num_sources, n) distinct sources with `seed`, then runs GOVM from
// each on both arms. Throws std::logic_error if the baseline arm ever
// re-updates a distance.
MuReport run_mu_experiment(const CsrGraph& g, std::size_t num_sources, std::uint64_t seed,
                           const std::string& graph_id = "graph",
                           std::size_t workers = default_workers());

enum class BenchAlgorithm { Gsvm, Govm, Dijkstra, BellmanFord, Floyd };
enum class Task { Sssp, Mssp, Apsp };

std::string to_string(BenchAlgorithm a);
std::string to_string(Task t);
BenchAlgorithm parse_bench_algorithm(const std::string& s);
Task parse_task(const std::string& s);

struct BenchRecord {
  std::string graph_id;
  std::string algorithm;
  std::string task;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t sources = 0;
  std::uint64_t workers = 1;
  double wall_time = 0.0;  // median of times, seconds
  std::uint64_t relaxations = 0;
  std::uint64_t repeats = 0;
  std::vector<double> times;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

double median(std::vector<double> xs);

struct BenchOptions {
  std::string graph_id = "graph";
  std::size_t workers = 1;
  std::size_t repeats = 3;
  std::size_t floyd_cap = kDefaultFloydCap;
};

// Rejects incompatible pairings (Dijkstra with negative weights, Floyd above
// its cap, fewer than 3 repeats) before timing. One untimed run is checked
// against Bellman-Ford; a disagreement throws std::runtime_error.
// SSSP uses sources[0]; APSP ignores `sources`.
BenchRecord run_benchmark(const CsrGraph& g, BenchAlgorithm algo, Task task,
                          std::span<const NodeId> sources, const BenchOptions& opts);

}  // namespace dawn
