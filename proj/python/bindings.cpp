#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dawn/cli.hpp"
#include "dawn/errors.hpp"
#include "dawn/experiment.hpp"
#include "dawn/graph.hpp"
#include "dawn/oracles.hpp"
#include "dawn/report.hpp"
#include "dawn/solver.hpp"

namespace py = pybind11;
using namespace dawn;

namespace {

template <typename T>
py::array_t<T> to_array(std::span<const T> xs) {
  py::array_t<T> out(static_cast<py::ssize_t>(xs.size()));
  std::copy(xs.begin(), xs.end(), out.mutable_data());
  return out;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "govm") return Algorithm::Govm;
  if (s == "gsvm") return Algorithm::Gsvm;
  throw std::invalid_argument("algorithm must be 'govm' or 'gsvm'");
}

py::tuple sssp_tuple(SsspResult r, bool record_pred) {
  py::object pred = py::none();
  if (record_pred) {
    py::list p;
    for (NodeId x : r.predecessors.pred)
      p.append(x == kNoPredecessor ? py::object(py::none()) : py::object(py::int_(x)));
    pred = std::move(p);
  }
  return py::make_tuple(to_array<Weight>(r.distances.dist), pred, r.stats);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted DAWN shortest paths (GSVM / GOVM) over CSR graphs.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UnsupportedFormatError>(m, "UnsupportedFormatError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);

  py::class_<EdgeList>(m, "EdgeList")
      .def(py::init<>())
      .def_readwrite("n", &EdgeList::n)
      .def_property(
          "edges",
          [](const EdgeList& el) {
            std::vector<std::tuple<NodeId, NodeId, Weight>> out;
            for (const auto& e : el.edges) out.emplace_back(e.u, e.v, e.w);
            return out;
          },
          [](EdgeList& el, const std::vector<std::tuple<NodeId, NodeId, Weight>>& edges) {
            el.edges.clear();
            for (const auto& [u, v, w] : edges) el.edges.push_back({u, v, w});
          });

  py::class_<CsrGraph>(m, "CsrGraph")
      .def(py::init<>())
      .def(py::init([](std::vector<EdgeIndex> row_ptr, std::vector<NodeId> col,
                       std::vector<Weight> val) {
             return CsrGraph(std::move(row_ptr), std::move(col), std::move(val));
           }),
           py::arg("row_ptr"), py::arg("col"), py::arg("val"))
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<std::tuple<NodeId, NodeId, Weight>>& edges) {
            EdgeList el;
            el.n = n;
            for (const auto& [u, v, w] : edges) el.edges.push_back({u, v, w});
            return build_csr(el);
          },
          py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_nodes", &CsrGraph::num_nodes)
      .def_property_readonly("num_edges", &CsrGraph::num_edges)
      .def_property_readonly("row_ptr", [](const CsrGraph& g) { return to_array(g.row_ptr()); })
      .def_property_readonly("col", [](const CsrGraph& g) { return to_array(g.col()); })
      .def_property_readonly("val", [](const CsrGraph& g) { return to_array(g.val()); })
      .def("has_negative_weight", &CsrGraph::has_negative_weight)
      .def("__eq__", [](const CsrGraph& a, const CsrGraph& b) { return a == b; })
      .def("__repr__", [](const CsrGraph& g) {
        return "CsrGraph(n=" + std::to_string(g.num_nodes()) +
               ", m=" + std::to_string(g.num_edges()) + ")";
      });

  py::class_<SolveStats>(m, "SolveStats")
      .def_readonly("outer_steps", &SolveStats::outer_steps)
      .def_readonly("relaxations", &SolveStats::relaxations)
      .def_readonly("writes", &SolveStats::writes)
      .def_readonly("first_discoveries", &SolveStats::first_discoveries)
      .def_readonly("re_updates", &SolveStats::re_updates)
      .def_readonly("mu", &SolveStats::mu)
      .def_readonly("updated_ratio", &SolveStats::updated_ratio)
      .def_readonly("negative_cycle", &SolveStats::negative_cycle)
      .def("to_dict", [](const SolveStats& s) { return json_to_py(to_json(s)); })
      .def("__repr__", [](const SolveStats& s) { return "SolveStats(" + to_json(s).dump() + ")"; });

  m.def(
      "parse_edge_list",
      [](const std::string& text, bool directed) {
        std::istringstream in(text);
        return load_edge_list(in, directed);
      },
      py::arg("text"), py::arg("directed") = true);
  m.def(
      "parse_matrix_market",
      [](const std::string& text) {
        std::istringstream in(text);
        return load_matrix_market(in);
      },
      py::arg("text"));
  m.def("build_csr", &build_csr, py::arg("edge_list"));
  m.def(
      "to_edge_list_text",
      [](const CsrGraph& g) {
        std::ostringstream out;
        write_edge_list(g, out);
        return out.str();
      },
      py::arg("graph"));
  m.def(
      "to_matrix_market_text",
      [](const CsrGraph& g) {
        std::ostringstream out;
        write_matrix_market(g, out);
        return out.str();
      },
      py::arg("graph"));
  m.def(
      "apply_weight_mode",
      [](const CsrGraph& g, const std::string& mode, std::uint64_t seed) {
        return apply_weight_mode(g, parse_weight_mode(mode, seed));
      },
      py::arg("graph"), py::arg("mode"), py::arg("seed") = 0);
  m.def(
      "generate_random_graph",
      [](std::size_t n, double avg_degree, const std::string& weights, std::uint64_t seed) {
        return generate_random_graph(n, avg_degree, parse_weight_mode(weights, seed), seed);
      },
      py::arg("n"), py::arg("avg_degree"), py::arg("weights") = "unit", py::arg("seed") = 0);

  m.def(
      "gsvm_sssp",
      [](const CsrGraph& g, NodeId source, bool record_pred) {
        SsspResult r;
        {
          py::gil_scoped_release release;
          r = gsvm_sssp(g, source, {.record_pred = record_pred});
        }
        return sssp_tuple(std::move(r), record_pred);
      },
      py::arg("graph"), py::arg("source"), py::arg("record_pred") = false,
      "Returns (distances, predecessors or None, SolveStats).");
  m.def(
      "govm_sssp",
      [](const CsrGraph& g, NodeId source, bool record_pred) {
        SsspResult r;
        {
          py::gil_scoped_release release;
          r = govm_sssp(g, source, {.record_pred = record_pred});
        }
        return sssp_tuple(std::move(r), record_pred);
      },
      py::arg("graph"), py::arg("source"), py::arg("record_pred") = false,
      "Returns (distances, predecessors or None, SolveStats).");
  m.def(
      "mssp",
      [](const CsrGraph& g, const std::vector<NodeId>& sources, const std::string& algorithm,
         std::size_t workers) {
        const Algorithm algo = parse_algorithm(algorithm);
        std::vector<SsspResult> rows;
        {
          py::gil_scoped_release release;
          rows = mssp(g, sources, algo, workers == 0 ? default_workers() : workers);
        }
        py::array_t<Weight> matrix({static_cast<py::ssize_t>(rows.size()),
                                    static_cast<py::ssize_t>(g.num_nodes())});
        auto view = matrix.mutable_unchecked<2>();
        std::vector<SolveStats> stats;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          for (std::size_t j = 0; j < g.num_nodes(); ++j)
            view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) =
                rows[i].distances.dist[j];
          stats.push_back(rows[i].stats);
        }
        return py::make_tuple(matrix, stats);
      },
      py::arg("graph"), py::arg("sources"), py::arg("algorithm") = "govm",
      py::arg("workers") = 0, "Returns (rows x n distance matrix, list of SolveStats).");
  m.def(
      "apsp",
      [](const CsrGraph& g, const std::function<void(NodeId, py::array_t<Weight>, SolveStats)>& sink,
         const std::string& algorithm, std::size_t workers) {
        const Algorithm algo = parse_algorithm(algorithm);
        AggregateStats agg;
        {
          py::gil_scoped_release release;
          agg = apsp(g, algo, workers == 0 ? default_workers() : workers,
                     [&](const DistanceVector& row, const SolveStats& stats) {
                       py::gil_scoped_acquire acquire;
                       sink(row.source, to_array<Weight>(row.dist), stats);
                     });
        }
        return json_to_py(to_json(agg));
      },
      py::arg("graph"), py::arg("sink"), py::arg("algorithm") = "govm", py::arg("workers") = 0,
      "Calls sink(source, distances, stats) in ascending source order; returns aggregate stats.");

  m.def(
      "dijkstra_sssp",
      [](const CsrGraph& g, NodeId source) {
        auto r = dijkstra_sssp(g, source);
        return to_array<Weight>(r.distances.dist);
      },
      py::arg("graph"), py::arg("source"));
  m.def(
      "bellman_ford_sssp",
      [](const CsrGraph& g, NodeId source) {
        auto r = bellman_ford_sssp(g, source);
        return py::make_tuple(to_array<Weight>(r.distances.dist), r.negative_cycle);
      },
      py::arg("graph"), py::arg("source"), "Returns (distances, negative_cycle).");
  m.def(
      "floyd_warshall_apsp",
      [](const CsrGraph& g, std::size_t cap) {
        auto f = floyd_warshall_apsp(g, cap);
        py::array_t<Weight> matrix({static_cast<py::ssize_t>(f.n), static_cast<py::ssize_t>(f.n)});
        std::copy(f.matrix.begin(), f.matrix.end(), matrix.mutable_data());
        return py::make_tuple(matrix, f.negative_cycle);
      },
      py::arg("graph"), py::arg("cap") = kDefaultFloydCap, "Returns (n x n matrix, negative_cycle).");

  m.def(
      "run_mu_experiment",
      [](const CsrGraph& g, std::size_t num_sources, std::uint64_t seed, const std::string& graph_id,
         std::size_t workers) {
        MuReport r;
        {
          py::gil_scoped_release release;
          r = run_mu_experiment(g, num_sources, seed, graph_id,
                                workers == 0 ? default_workers() : workers);
        }
        return json_to_py(to_json(r));
      },
      py::arg("graph"), py::arg("num_sources") = kDefaultMuSources, py::arg("seed") = 0,
      py::arg("graph_id") = "graph", py::arg("workers") = 0);
  m.def(
      "run_benchmark",
      [](const CsrGraph& g, const std::string& algorithm, const std::string& task,
         const std::vector<NodeId>& sources, std::size_t workers, std::size_t repeats) {
        BenchOptions opts;
        opts.workers = workers;
        opts.repeats = repeats;
        BenchRecord r;
        {
          py::gil_scoped_release release;
          r = run_benchmark(g, parse_bench_algorithm(algorithm), parse_task(task), sources, opts);
        }
        return json_to_py(to_json(r));
      },
      py::arg("graph"), py::arg("algorithm") = "govm", py::arg("task") = "sssp",
      py::arg("sources") = std::vector<NodeId>{0}, py::arg("workers") = 1,
      py::arg("repeats") = 3);

  m.def(
      "cli_main",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::main_entry(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
