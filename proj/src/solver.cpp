#include "dawn/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dawn/format.hpp"

namespace dawn {

std::string to_string(Algorithm a) { return a == Algorithm::Gsvm ? "gsvm" : "govm"; }

std::vector<std::pair<std::string, std::string>> to_key_values(const SolveStats& s) {
  return {
      {"outer_steps", std::to_string(s.outer_steps)},
      {"relaxations", std::to_string(s.relaxations)},
      {"writes", std::to_string(s.writes)},
      {"first_discoveries", std::to_string(s.first_discoveries)},
      {"re_updates", std::to_string(s.re_updates)},
      {"mu", format_weight(s.mu)},
      {"updated_ratio", format_weight(s.updated_ratio)},
      {"negative_cycle", s.negative_cycle ? "true" : "false"},
  };
}

void SsspWorkspace::reset(std::size_t n, NodeId source) {
  dist.assign(n, kInfinity);
  current.assign(n, 0);
  next.assign(n, 0);
  pred.assign(n, kNoPredecessor);
  write_count.assign(n, 0);
  stats = SolveStats{};
  source_improvement_blocked = false;
  dist[source] = 0.0;
}

namespace {

void check_source(const CsrGraph& g, NodeId source) {
  if (source >= g.num_nodes())
    throw std::invalid_argument("source " + std::to_string(source) +
                                " out of range for n = " + std::to_string(g.num_nodes()));
}

inline void record_write(SsspWorkspace& ws, NodeId target, Weight value, NodeId from,
                         std::uint64_t step, const SolveOptions& opts) {
  assert(value < ws.dist[target] && "distances never increase");
  if (ws.dist[target] == kInfinity) ++ws.stats.first_discoveries;
  ++ws.stats.writes;
  ++ws.write_count[target];
  ws.dist[target] = value;
  if (opts.record_pred) ws.pred[target] = from;
  if (opts.trace) opts.trace->writes.emplace_back(step, target);
}

// One pass over the out-edges of row j. Returns whether any write happened.
template <bool kMarkNext>
inline bool relax_row(const CsrGraph& g, NodeId source, NodeId j, std::uint64_t step,
                      SsspWorkspace& ws, const SolveOptions& opts) {
  const auto row_ptr = g.row_ptr();
  const auto col = g.col();
  const auto val = g.val();
  bool wrote = false;
  for (EdgeIndex k = row_ptr[j]; k < row_ptr[j + 1]; ++k) {
    ++ws.stats.relaxations;
    const NodeId index = col[k];
    const Weight candidate = ws.dist[j] + val[k];
    if (ws.dist[index] > candidate) {
      if (index == source) {
        ws.source_improvement_blocked = true;
        continue;
      }
      record_write(ws, index, candidate, j, step, opts);
      if constexpr (kMarkNext) ws.next[index] = 1;
      wrote = true;
    }
  }
  return wrote;
}

template <bool kFrontier>
void run_steps(const CsrGraph& g, NodeId source, SsspWorkspace& ws,
               const SolveOptions& opts) {
  const std::size_t n = g.num_nodes();
  const auto row_ptr = g.row_ptr();
  std::uint64_t step = 1;
  bool last_step_wrote = false;
  while (step < n) {
    ++step;
    bool wrote = false;
    for (NodeId j = 0; j < n; ++j) {
      if constexpr (kFrontier) {
        if (!ws.current[j]) continue;
      } else {
        if (ws.dist[j] == kInfinity) continue;
      }
      if (row_ptr[j] == row_ptr[j + 1]) continue;
      if (opts.trace) opts.trace->scans.emplace_back(step, j);
      wrote |= relax_row<kFrontier>(g, source, j, step, ws, opts);
    }
    last_step_wrote = wrote;
    if (!wrote) break;
    if constexpr (kFrontier) {
      ws.current.swap(ws.next);
      std::fill(ws.next.begin(), ws.next.end(), std::uint8_t{0});
    }
  }

  SolveStats& s = ws.stats;
  s.outer_steps = step;
  s.negative_cycle = (step >= n && last_step_wrote) || ws.source_improvement_blocked;
  s.re_updates = s.writes - s.first_discoveries;
  const double denom = static_cast<double>(std::max<std::uint64_t>(s.first_discoveries, 1));
  // No reached node means no path transformations: mu = 1.
  s.mu = s.first_discoveries == 0 ? 1.0 : static_cast<double>(s.writes) / denom;
  const auto rewritten = std::count_if(ws.write_count.begin(), ws.write_count.end(),
                                       [](std::uint32_t c) { return c >= 2; });
  s.updated_ratio = static_cast<double>(rewritten) / denom;
}

}  // namespace

void seed_source(const CsrGraph& g, NodeId source, SsspWorkspace& ws,
                 const SolveOptions& opts) {
  check_source(g, source);
  const auto targets = g.targets(source);
  const auto weights = g.weights(source);
  if (opts.trace && !targets.empty()) opts.trace->scans.emplace_back(1, source);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    ++ws.stats.relaxations;
    const NodeId j = targets[k];
    if (j == source) {
      if (weights[k] < 0.0) ws.source_improvement_blocked = true;
      continue;
    }
    if (ws.dist[j] > weights[k]) {
      record_write(ws, j, weights[k], source, 1, opts);
      ws.current[j] = 1;
    }
  }
}

SsspResult solve_sssp(const CsrGraph& g, NodeId source, Algorithm algo,
                      SsspWorkspace& ws, const SolveOptions& opts) {
  check_source(g, source);
  ws.reset(g.num_nodes(), source);
  seed_source(g, source, ws, opts);
  if (algo == Algorithm::Govm)
    run_steps<true>(g, source, ws, opts);
  else
    run_steps<false>(g, source, ws, opts);

  SsspResult r;
  r.distances.source = source;
  r.distances.dist = ws.dist;
  if (opts.record_pred) r.predecessors.pred = ws.pred;
  r.stats = ws.stats;
  return r;
}

SsspResult solve_sssp(const CsrGraph& g, NodeId source, Algorithm algo,
                      const SolveOptions& opts) {
  SsspWorkspace ws;
  return solve_sssp(g, source, algo, ws, opts);
}

SsspResult gsvm_sssp(const CsrGraph& g, NodeId source, const SolveOptions& opts) {
  return solve_sssp(g, source, Algorithm::Gsvm, opts);
}

SsspResult govm_sssp(const CsrGraph& g, NodeId source, const SolveOptions& opts) {
  return solve_sssp(g, source, Algorithm::Govm, opts);
}

void StatsAccumulator::add(const SolveStats& s) {
  AggregateStats& a = totals_;
  ++a.sources;
  a.outer_steps += s.outer_steps;
  a.relaxations += s.relaxations;
  a.writes += s.writes;
  a.first_discoveries += s.first_discoveries;
  a.re_updates += s.re_updates;
  if (s.negative_cycle) ++a.negative_cycle_sources;
  if (s.first_discoveries > 0) {
    ++a.sources_reaching;
    mu_sum_ += s.mu;
    ratio_sum_ += s.updated_ratio;
  }
}

AggregateStats StatsAccumulator::result() const {
  AggregateStats a = totals_;
  if (a.sources_reaching > 0) {
    a.mean_mu = mu_sum_ / static_cast<double>(a.sources_reaching);
    a.mean_updated_ratio = ratio_sum_ / static_cast<double>(a.sources_reaching);
  }
  return a;
}

AggregateStats aggregate(std::span<const SolveStats> stats) {
  StatsAccumulator acc;
  for (const auto& s : stats) acc.add(s);
  return acc.result();
}

std::size_t default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (workers == 0) throw std::invalid_argument("workers must be at least 1");
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (;;) {
        if (failed.load(std::memory_order_relaxed)) return;
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          fn(i, w);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
          return;
        }
      }
    });
  }
  threads.clear();
  if (error) std::rethrow_exception(error);
}

std::vector<SsspResult> mssp(const CsrGraph& g, std::span<const NodeId> sources,
                             Algorithm algo, std::size_t workers,
                             const SolveOptions& opts) {
  if (workers == 0) throw std::invalid_argument("workers must be at least 1");
  if (opts.trace) throw std::invalid_argument("tracing is only supported for single solves");
  for (NodeId s : sources) check_source(g, s);
  std::vector<SsspResult> results(sources.size());
  std::vector<SsspWorkspace> spaces(std::min(workers, std::max<std::size_t>(sources.size(), 1)));
  parallel_for(sources.size(), workers, [&](std::size_t i, std::size_t w) {
    results[i] = solve_sssp(g, sources[i], algo, spaces[w], opts);
  });
  return results;
}

AggregateStats apsp(const CsrGraph& g, Algorithm algo, std::size_t workers,
                    const RowSink& sink) {
  if (workers == 0) throw std::invalid_argument("workers must be at least 1");
  const std::size_t n = g.num_nodes();
  const std::size_t batch = std::max<std::size_t>(16, 4 * workers);
  std::vector<SsspWorkspace> spaces(std::min(workers, batch));
  std::vector<SsspResult> rows(batch);
  StatsAccumulator acc;
  for (std::size_t begin = 0; begin < n; begin += batch) {
    const std::size_t count = std::min(batch, n - begin);
    parallel_for(count, workers, [&](std::size_t i, std::size_t w) {
      rows[i] = solve_sssp(g, static_cast<NodeId>(begin + i), algo, spaces[w]);
    });
    for (std::size_t i = 0; i < count; ++i) {
      sink(rows[i].distances, rows[i].stats);
      acc.add(rows[i].stats);
    }
  }
  return acc.result();
}

}  // namespace dawn
