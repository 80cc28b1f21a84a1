#include "dawn/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "dawn/errors.hpp"
#include "dawn/format.hpp"

namespace dawn {

std::pair<double, double> mu_summary(std::span<const SolveStats> per_source) {
  double excess = 0.0;
  double ratio = 0.0;
  std::size_t reaching = 0;
  for (const SolveStats& s : per_source) {
    if (s.first_discoveries == 0) continue;
    ++reaching;
    excess += static_cast<double>(s.re_updates) / static_cast<double>(s.first_discoveries);
    ratio += s.updated_ratio;
  }
  if (reaching == 0) return {1.0, 0.0};
  const double k = static_cast<double>(reaching);
  return {1.0 + excess / k, ratio / k};
}

std::vector<NodeId> sample_sources(std::size_t n, std::size_t k, std::uint64_t seed) {
  k = std::min(k, n);
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), NodeId{0});
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates; std::shuffle's draw pattern is library-specific.
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

MuReport run_mu_experiment(const CsrGraph& g, std::size_t num_sources, std::uint64_t seed,
                           const std::string& graph_id, std::size_t workers) {
  if (num_sources == 0) throw std::invalid_argument("num_sources must be at least 1");
  const std::size_t n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("mu experiment needs a non-empty graph");

  MuReport report;
  report.graph_id = graph_id;
  report.seed = seed;
  report.sources_requested = num_sources;
  if (num_sources > n) {
    report.notes.push_back("requested " + std::to_string(num_sources) +
                           " sources, clamped to n = " + std::to_string(n));
    num_sources = n;
  }

  report.sources = sample_sources(n, num_sources, seed);
  report.sources_sampled = report.sources.size();

  const CsrGraph unit = apply_weight_mode(g, UnitWeights{});
  const CsrGraph random = apply_weight_mode(g, RandomUniformWeights{0.0, 2.0, seed});

  for (const auto& r : mssp(unit, report.sources, Algorithm::Govm, workers))
    report.baseline_per_source.push_back(r.stats);
  for (const auto& r : mssp(random, report.sources, Algorithm::Govm, workers))
    report.randomized_per_source.push_back(r.stats);

  report.baseline = aggregate(report.baseline_per_source);
  report.randomized = aggregate(report.randomized_per_source);
  if (report.baseline.re_updates != 0)
    throw std::logic_error("unit-weight arm re-updated " +
                           std::to_string(report.baseline.re_updates) + " distances");
  std::tie(report.mean_mu, report.mean_updated_ratio) =
      mu_summary(report.randomized_per_source);
  return report;
}

std::string to_string(BenchAlgorithm a) {
  switch (a) {
    case BenchAlgorithm::Gsvm: return "gsvm";
    case BenchAlgorithm::Govm: return "govm";
    case BenchAlgorithm::Dijkstra: return "dijkstra";
    case BenchAlgorithm::BellmanFord: return "bellman-ford";
    case BenchAlgorithm::Floyd: return "floyd";
  }
  return "?";
}

std::string to_string(Task t) {
  switch (t) {
    case Task::Sssp: return "sssp";
    case Task::Mssp: return "mssp";
    case Task::Apsp: return "apsp";
  }
  return "?";
}

BenchAlgorithm parse_bench_algorithm(const std::string& s) {
  for (auto a : {BenchAlgorithm::Gsvm, BenchAlgorithm::Govm, BenchAlgorithm::Dijkstra,
                 BenchAlgorithm::BellmanFord, BenchAlgorithm::Floyd})
    if (to_string(a) == s) return a;
  if (s == "bellman_ford" || s == "bf") return BenchAlgorithm::BellmanFord;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

Task parse_task(const std::string& s) {
  for (auto t : {Task::Sssp, Task::Mssp, Task::Apsp})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown task '" + s + "'");
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median of an empty sequence");
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

namespace {

struct Probe {
  std::vector<Weight> dist;
  bool negative_cycle = false;
};

Probe probe(const CsrGraph& g, BenchAlgorithm algo, NodeId source, std::size_t cap) {
  switch (algo) {
    case BenchAlgorithm::Gsvm:
    case BenchAlgorithm::Govm: {
      auto r = solve_sssp(g, source,
                          algo == BenchAlgorithm::Gsvm ? Algorithm::Gsvm : Algorithm::Govm);
      return {std::move(r.distances.dist), r.stats.negative_cycle};
    }
    case BenchAlgorithm::Dijkstra:
      return {dijkstra_sssp(g, source).distances.dist, false};
    case BenchAlgorithm::BellmanFord: {
      auto r = bellman_ford_sssp(g, source);
      return {std::move(r.distances.dist), r.negative_cycle};
    }
    case BenchAlgorithm::Floyd: {
      auto f = floyd_warshall_apsp(g, cap);
      const auto row = f.matrix.begin() + static_cast<std::ptrdiff_t>(source * f.n);
      return {std::vector<Weight>(row, row + static_cast<std::ptrdiff_t>(f.n)),
              f.negative_cycle};
    }
  }
  return {};
}

bool close(Weight a, Weight b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b));
}

void cross_check(const CsrGraph& g, BenchAlgorithm algo, NodeId source, std::size_t cap) {
  Probe reference;
  if (algo == BenchAlgorithm::BellmanFord) {
    if (g.num_nodes() <= cap)
      reference = probe(g, BenchAlgorithm::Floyd, source, cap);
    else if (!g.has_negative_weight())
      reference = probe(g, BenchAlgorithm::Dijkstra, source, cap);
    else
      return;
    if (reference.negative_cycle) return;
  } else {
    reference = probe(g, BenchAlgorithm::BellmanFord, source, cap);
  }
  const Probe got = probe(g, algo, source, cap);
  if (reference.negative_cycle) {
    const bool dawn = algo == BenchAlgorithm::Gsvm || algo == BenchAlgorithm::Govm;
    if (dawn && !got.negative_cycle)
      throw std::runtime_error(to_string(algo) + " missed a negative cycle reachable from " +
                               std::to_string(source));
    return;
  }
  for (std::size_t j = 0; j < got.dist.size(); ++j)
    if (!close(got.dist[j], reference.dist[j]))
      throw std::runtime_error(to_string(algo) + " disagrees with the oracle at node " +
                               std::to_string(j) + " from source " + std::to_string(source) +
                               ": " + format_weight(got.dist[j]) + " vs " +
                               format_weight(reference.dist[j]));
}

// One timed execution; returns the relaxation count.
std::uint64_t execute(const CsrGraph& g, BenchAlgorithm algo, std::span<const NodeId> sources,
                      bool all_pairs, const BenchOptions& opts) {
  if (algo == BenchAlgorithm::Floyd) return floyd_warshall_apsp(g, opts.floyd_cap).relaxations;
  if (algo == BenchAlgorithm::Gsvm || algo == BenchAlgorithm::Govm) {
    const Algorithm a = algo == BenchAlgorithm::Gsvm ? Algorithm::Gsvm : Algorithm::Govm;
    if (all_pairs)
      return apsp(g, a, opts.workers, [](const DistanceVector&, const SolveStats&) {})
          .relaxations;
    std::uint64_t total = 0;
    for (const auto& r : mssp(g, sources, a, opts.workers)) total += r.stats.relaxations;
    return total;
  }
  const std::size_t count = all_pairs ? g.num_nodes() : sources.size();
  std::vector<std::uint64_t> relax(count, 0);
  parallel_for(count, opts.workers, [&](std::size_t i, std::size_t) {
    const NodeId s = all_pairs ? static_cast<NodeId>(i) : sources[i];
    relax[i] = algo == BenchAlgorithm::Dijkstra ? dijkstra_sssp(g, s).relaxations
                                                : bellman_ford_sssp(g, s).relaxations;
  });
  return std::accumulate(relax.begin(), relax.end(), std::uint64_t{0});
}

}  // namespace

BenchRecord run_benchmark(const CsrGraph& g, BenchAlgorithm algo, Task task,
                          std::span<const NodeId> sources, const BenchOptions& opts) {
  if (opts.repeats < 3) throw std::invalid_argument("benchmarks need at least 3 repeats");
  if (opts.workers == 0) throw std::invalid_argument("workers must be at least 1");
  if (g.num_nodes() == 0) throw std::invalid_argument("cannot benchmark an empty graph");
  if (algo == BenchAlgorithm::Dijkstra && g.has_negative_weight())
    throw DomainError("Dijkstra cannot run on a graph with negative weights");
  if (algo == BenchAlgorithm::Floyd && g.num_nodes() > opts.floyd_cap)
    throw DomainError("Floyd-Warshall limited to n <= " + std::to_string(opts.floyd_cap) +
                      " (n = " + std::to_string(g.num_nodes()) + ")");
  if (task != Task::Apsp && sources.empty())
    throw std::invalid_argument(to_string(task) + " benchmark needs at least one source");
  for (NodeId s : sources)
    if (s >= g.num_nodes())
      throw std::invalid_argument("source " + std::to_string(s) + " out of range");

  std::span<const NodeId> used = task == Task::Sssp ? sources.first(1) : sources;
  const bool all_pairs = task == Task::Apsp;
  cross_check(g, algo, all_pairs ? NodeId{0} : used.front(), opts.floyd_cap);

  BenchRecord rec;
  rec.graph_id = opts.graph_id;
  rec.algorithm = to_string(algo);
  rec.task = to_string(task);
  rec.n = g.num_nodes();
  rec.m = g.num_edges();
  rec.sources = all_pairs ? g.num_nodes() : used.size();
  rec.workers = opts.workers;
  rec.repeats = opts.repeats;
  for (std::size_t r = 0; r < opts.repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t relax = execute(g, algo, used, all_pairs, opts);
    const auto t1 = std::chrono::steady_clock::now();
    rec.times.push_back(std::chrono::duration<double>(t1 - t0).count());
    if (r == 0)
      rec.relaxations = relax;
    else if (relax != rec.relaxations)
      throw std::logic_error("relaxation count changed between repeats");
  }
  rec.wall_time = median(rec.times);
  return rec;
}

}  // namespace dawn
