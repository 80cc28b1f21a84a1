#include "dawn/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>

#include "CLI11.hpp"
#include "dawn/errors.hpp"
#include "dawn/experiment.hpp"
#include "dawn/format.hpp"
#include "dawn/oracles.hpp"
#include "dawn/report.hpp"
#include "dawn/solver.hpp"

namespace dawn::cli {

namespace fs = std::filesystem;

std::string to_string(Command c) {
  switch (c) {
    case Command::Sssp: return "sssp";
    case Command::Mssp: return "mssp";
    case Command::Apsp: return "apsp";
    case Command::Mu: return "mu";
    case Command::Bench: return "bench";
    case Command::Convert: return "convert";
  }
  return "?";
}

namespace {

std::string extension(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

SourceSpec parse_source_spec(const std::string& text) {
  SourceSpec spec;
  if (text == "all") {
    spec.kind = SourceSpec::Kind::All;
    return spec;
  }
  if (text.find(',') == std::string::npos) {
    auto k = parse_int<std::size_t>(text);
    if (!k || *k == 0)
      throw UsageError("--sources expects 'all', a positive count or a comma-separated list, got '" +
                       text + "'");
    spec.kind = SourceSpec::Kind::Count;
    spec.count = *k;
    return spec;
  }
  spec.kind = SourceSpec::Kind::List;
  std::string_view rest = text;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    auto item = rest.substr(0, comma);
    auto id = parse_int<NodeId>(item);
    if (!id) throw UsageError("--sources: invalid node id '" + std::string(item) + "'");
    spec.list.push_back(*id);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  if (spec.list.empty()) throw UsageError("--sources: empty source list");
  return spec;
}

void validate(RunConfig& c) {
  using Kind = SourceSpec::Kind;
  if (c.input_format.empty()) c.input_format = extension(c.input) == ".mtx" ? "mtx" : "edgelist";
  if (c.input_format != "edgelist" && c.input_format != "mtx")
    throw UsageError("--format must be edgelist or mtx, got '" + c.input_format + "'");

  static const std::vector<std::string> algorithms = {"govm", "gsvm", "dijkstra",
                                                      "bellman-ford", "floyd"};
  if (std::find(algorithms.begin(), algorithms.end(), c.algorithm) == algorithms.end())
    throw UsageError("--algorithm must be one of govm, gsvm, dijkstra, bellman-ford, floyd; got '" +
                     c.algorithm + "'");

  WeightMode mode;
  try {
    mode = parse_weight_mode(c.weights, c.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--weights: ") + e.what());
  }
  if (c.algorithm == "dijkstra") {
    if (auto* r = std::get_if<RandomUniformWeights>(&mode); r && r->lo < 0.0)
      throw UsageError("--algorithm dijkstra cannot be combined with --weights " + c.weights +
                       " (negative weights)");
  }
  if (c.workers == 0) throw UsageError("--workers must be at least 1");

  switch (c.command) {
    case Command::Sssp:
      if (c.sources.kind == Kind::None)
        throw UsageError("sssp requires --source or --sources");
      if (c.sources.kind == Kind::All ||
          (c.sources.kind == Kind::List && c.sources.list.size() != 1) ||
          (c.sources.kind == Kind::Count && c.sources.count != 1))
        throw UsageError("sssp takes exactly one source; use mssp or apsp for more");
      break;
    case Command::Mssp:
      if (c.sources.kind == Kind::None)
        throw UsageError("mssp requires --source or --sources");
      break;
    case Command::Apsp:
      if (c.sources.kind != Kind::None && c.sources.kind != Kind::All)
        throw UsageError("apsp always solves from every node; drop --source/--sources");
      c.sources.kind = Kind::All;
      break;
    case Command::Mu:
      if (c.sources.kind == Kind::None) {
        c.sources.kind = Kind::Count;
        c.sources.count = kDefaultMuSources;
      }
      if (c.sources.kind != Kind::Count)
        throw UsageError("mu takes --sources COUNT");
      break;
    case Command::Bench:
      if (c.sources.kind == Kind::None) {
        c.sources.kind = Kind::List;
        c.sources.list = {0};
      }
      if (c.repeats < 3) throw UsageError("--repeats must be at least 3");
      if (!c.task.empty() && c.task != "sssp" && c.task != "mssp" && c.task != "apsp")
        throw UsageError("--task must be sssp, mssp or apsp");
      break;
    case Command::Convert:
      if (c.output.empty()) throw UsageError("convert requires -o/--output");
      break;
  }

  std::vector<std::string> allowed;
  std::string inferred;
  const std::string out_ext = extension(c.output);
  switch (c.command) {
    case Command::Sssp:
    case Command::Mssp:
    case Command::Apsp:
      allowed = {"rows", "csv", "json"};
      inferred = out_ext == ".json" ? "json" : out_ext == ".csv" ? "csv" : "rows";
      break;
    case Command::Mu:
    case Command::Bench:
      allowed = {"csv", "json"};
      inferred = out_ext == ".json" ? "json" : "csv";
      break;
    case Command::Convert:
      allowed = {"edgelist", "mtx"};
      inferred = out_ext == ".mtx" ? "mtx" : "edgelist";
      break;
  }
  if (c.output_format.empty()) c.output_format = inferred;
  if (std::find(allowed.begin(), allowed.end(), c.output_format) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw UsageError("--output-format for " + to_string(c.command) + " must be one of " + list);
  }
}

struct Loaded {
  CsrGraph graph;
  std::string id;
};

Loaded load_graph(const RunConfig& c) {
  std::ifstream in(c.input);
  if (!in) throw std::runtime_error("cannot open input '" + c.input + "'");
  EdgeList el = c.input_format == "mtx" ? load_matrix_market(in) : load_edge_list(in, c.directed);
  CsrGraph g = apply_weight_mode(build_csr(el), parse_weight_mode(c.weights, c.seed));
  return {std::move(g), fs::path(c.input).stem().string()};
}

std::vector<NodeId> resolve_sources(const RunConfig& c, const CsrGraph& g) {
  using Kind = SourceSpec::Kind;
  std::vector<NodeId> sources;
  switch (c.sources.kind) {
    case Kind::List:
      sources = c.sources.list;
      break;
    case Kind::Count:
      sources = sample_sources(g.num_nodes(), c.sources.count, c.seed);
      break;
    case Kind::All:
      sources.resize(g.num_nodes());
      for (std::size_t i = 0; i < sources.size(); ++i) sources[i] = static_cast<NodeId>(i);
      break;
    case Kind::None:
      break;
  }
  for (NodeId s : sources)
    if (s >= g.num_nodes())
      throw std::invalid_argument("source " + std::to_string(s) + " out of range for n = " +
                                  std::to_string(g.num_nodes()));
  return sources;
}

// Streams distance rows in the chosen format.
class RowWriter {
 public:
  RowWriter(std::ostream& out, std::string format, std::size_t n)
      : out_(out), format_(std::move(format)) {
    if (format_ == "csv") {
      out_ << "source";
      for (std::size_t j = 0; j < n; ++j) out_ << ",d" << j;
      out_ << '\n';
    } else if (format_ == "json") {
      out_ << "[";
    }
  }

  void write(const DistanceVector& row, const SolveStats* stats, bool negative_cycle) {
    if (format_ != "json") {
      out_ << format_distance_row(row) << '\n';
    } else {
      nlohmann::ordered_json j;
      j["source"] = row.source;
      nlohmann::ordered_json dist = nlohmann::ordered_json::array();
      for (Weight d : row.dist) {
        if (std::isinf(d))
          dist.push_back(format_weight(d));
        else
          dist.push_back(d);
      }
      j["dist"] = std::move(dist);
      j["negative_cycle"] = negative_cycle;
      if (stats) j["stats"] = to_json(*stats);
      out_ << (first_ ? "\n" : ",\n") << j.dump();
      first_ = false;
    }
    if (!out_) throw std::runtime_error("failed to write output");
  }

  void close() {
    if (format_ == "json") out_ << (first_ ? "]\n" : "\n]\n");
    out_.flush();
    if (!out_) throw std::runtime_error("failed to write output");
  }

 private:
  std::ostream& out_;
  std::string format_;
  bool first_ = true;
};

// Returns the number of rows flagged with a negative cycle.
std::size_t solve_rows(const RunConfig& c, const CsrGraph& g, const std::vector<NodeId>& sources,
                       RowWriter& writer) {
  std::size_t flagged = 0;
  const std::size_t n = g.num_nodes();
  if (c.algorithm == "govm" || c.algorithm == "gsvm") {
    const Algorithm algo = c.algorithm == "govm" ? Algorithm::Govm : Algorithm::Gsvm;
    auto emit = [&](const DistanceVector& row, const SolveStats& stats) {
      if (stats.negative_cycle) ++flagged;
      writer.write(row, &stats, stats.negative_cycle);
    };
    if (c.sources.kind == SourceSpec::Kind::All) {
      apsp(g, algo, c.workers, emit);
    } else {
      for (const auto& r : mssp(g, sources, algo, c.workers)) emit(r.distances, r.stats);
    }
    return flagged;
  }
  if (c.algorithm == "floyd") {
    const FloydResult f = floyd_warshall_apsp(g, c.floyd_cap);
    for (NodeId s : sources) {
      DistanceVector row{s, {f.matrix.begin() + static_cast<std::ptrdiff_t>(s * n),
                             f.matrix.begin() + static_cast<std::ptrdiff_t>((s + 1) * n)}};
      if (f.negative_cycle) ++flagged;
      writer.write(row, nullptr, f.negative_cycle);
    }
    return flagged;
  }
  if (c.algorithm == "dijkstra" && g.has_negative_weight())
    throw DomainError("Dijkstra cannot run on a graph with negative weights");
  const std::size_t batch = std::max<std::size_t>(16, 4 * c.workers);
  std::vector<OracleResult> results(batch);
  for (std::size_t begin = 0; begin < sources.size(); begin += batch) {
    const std::size_t count = std::min(batch, sources.size() - begin);
    parallel_for(count, c.workers, [&](std::size_t i, std::size_t) {
      const NodeId s = sources[begin + i];
      results[i] = c.algorithm == "dijkstra" ? dijkstra_sssp(g, s) : bellman_ford_sssp(g, s);
    });
    for (std::size_t i = 0; i < count; ++i) {
      if (results[i].negative_cycle) ++flagged;
      writer.write(results[i].distances, nullptr, results[i].negative_cycle);
    }
  }
  return flagged;
}

int run_command(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Loaded loaded = load_graph(c);
  const CsrGraph& g = loaded.graph;

  std::unique_ptr<std::ofstream> file;
  if (!c.output.empty()) {
    file = std::make_unique<std::ofstream>(c.output);
    if (!*file) throw std::runtime_error("cannot open output '" + c.output + "'");
  }
  std::ostream& sink = file ? *file : out;

  switch (c.command) {
    case Command::Sssp:
    case Command::Mssp:
    case Command::Apsp: {
      const auto sources = resolve_sources(c, g);
      RowWriter writer(sink, c.output_format, g.num_nodes());
      const std::size_t flagged = solve_rows(c, g, sources, writer);
      writer.close();
      if (flagged > 0) {
        err << "negative cycle detected (" << flagged
            << " row(s) flagged); distances are unreliable. Pass --allow-negative-cycles to "
               "accept them.\n";
        if (!c.allow_negative_cycles) return kNegativeCycle;
      }
      return kOk;
    }
    case Command::Mu: {
      const MuReport report = run_mu_experiment(g, c.sources.count, c.seed, loaded.id, c.workers);
      write_report(std::span(&report, 1), parse_report_format(c.output_format), sink);
      for (const auto& note : report.notes) err << "note: " << note << '\n';
      return kOk;
    }
    case Command::Bench: {
      const auto sources = resolve_sources(c, g);
      Task task;
      if (!c.task.empty())
        task = parse_task(c.task);
      else if (c.sources.kind == SourceSpec::Kind::All)
        task = Task::Apsp;
      else
        task = sources.size() == 1 ? Task::Sssp : Task::Mssp;
      BenchOptions opts;
      opts.graph_id = loaded.id;
      opts.workers = c.workers;
      opts.repeats = c.repeats;
      opts.floyd_cap = c.floyd_cap;
      const BenchRecord rec =
          run_benchmark(g, parse_bench_algorithm(c.algorithm), task, sources, opts);
      write_report(std::span(&rec, 1), parse_report_format(c.output_format), sink);
      return kOk;
    }
    case Command::Convert: {
      if (c.output_format == "mtx")
        write_matrix_market(g, sink);
      else
        write_edge_list(g, sink);
      sink.flush();
      if (!sink) throw std::runtime_error("failed to write '" + c.output + "'");
      return kOk;
    }
  }
  return kRuntimeError;
}

}  // namespace

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig c;
  CLI::App app{"Weighted DAWN shortest-path solver", "dawn"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  std::vector<std::uint64_t> single_sources;
  std::string sources_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", c.input, "Input graph file")->required();
    sub->add_option("--format", c.input_format, "Input format: edgelist or mtx (default: by extension)");
    sub->add_flag("--directed,!--undirected", c.directed,
                  "Treat edge-list input as directed (default) or undirected");
    sub->add_option("--weights", c.weights, "Weight mode: keep, unit or random:LO:HI");
    sub->add_option("--seed", c.seed, "Seed for sampling and random weights")->envname(kSeedEnv);
    sub->add_option("--workers", c.workers, "Worker threads (default: available parallelism)")
        ->envname(kWorkersEnv);
    sub->add_option("-o,--output", c.output, "Output path (default: stdout)");
    sub->add_option("--output-format", c.output_format, "Output format");
  };
  auto add_solve = [&](CLI::App* sub) {
    sub->add_option("-a,--algorithm", c.algorithm,
                    "govm, gsvm, dijkstra, bellman-ford or floyd");
    sub->add_option("--floyd-cap", c.floyd_cap, "Largest n accepted by Floyd-Warshall");
    sub->add_flag("--allow-negative-cycles", c.allow_negative_cycles,
                  "Exit 0 even when a negative cycle is detected");
  };
  auto add_sources = [&](CLI::App* sub) {
    auto* one = sub->add_option("--source", single_sources, "Source node (repeatable)");
    auto* many = sub->add_option("--sources", sources_text,
                                 "'all', a sample COUNT, or a comma-separated list");
    one->excludes(many);
  };

  std::vector<std::pair<CLI::App*, Command>> subs;
  auto* sssp = app.add_subcommand("sssp", "Single-source shortest paths");
  add_common(sssp), add_solve(sssp), add_sources(sssp);
  auto* mssp_cmd = app.add_subcommand("mssp", "Shortest paths from several sources");
  add_common(mssp_cmd), add_solve(mssp_cmd), add_sources(mssp_cmd);
  auto* apsp_cmd = app.add_subcommand("apsp", "All-pairs shortest paths, streamed row by row");
  add_common(apsp_cmd), add_solve(apsp_cmd), add_sources(apsp_cmd);
  auto* mu = app.add_subcommand("mu", "Unit vs random-weight path-update experiment");
  add_common(mu), add_sources(mu);
  auto* bench = app.add_subcommand("bench", "Time an algorithm on a task");
  add_common(bench), add_solve(bench), add_sources(bench);
  bench->add_option("--repeats", c.repeats, "Timed repetitions (>= 3)");
  bench->add_option("--task", c.task, "sssp, mssp or apsp (default: from the sources)");
  auto* convert = app.add_subcommand("convert", "Convert between edge-list and MatrixMarket");
  add_common(convert);
  subs = {{sssp, Command::Sssp},   {mssp_cmd, Command::Mssp}, {apsp_cmd, Command::Apsp},
          {mu, Command::Mu},       {bench, Command::Bench},   {convert, Command::Convert}};

  c.workers = default_workers();

  std::vector<const char*> argv = {"dawn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& [sub, cmd] : subs)
    if (sub->parsed()) c.command = cmd;

  if (!single_sources.empty()) {
    c.sources.kind = SourceSpec::Kind::List;
    for (auto s : single_sources) {
      if (s >= std::numeric_limits<NodeId>::max()) throw UsageError("--source out of range");
      c.sources.list.push_back(static_cast<NodeId>(s));
    }
  } else if (!sources_text.empty()) {
    c.sources = parse_source_spec(sources_text);
  }
  validate(c);
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return run_command(config, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_args(args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun 'dawn --help' for usage.\n";
    return kUsageError;
  }
  if (!config) return kOk;
  return run(*config, out, err);
}

}  // namespace dawn::cli
