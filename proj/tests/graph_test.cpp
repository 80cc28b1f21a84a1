#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <sstream>

#include "dawn/errors.hpp"
#include "dawn/graph.hpp"
#include "dawn/oracles.hpp"
#include "dawn/solver.hpp"
#include "test_support.hpp"

namespace dawn {
namespace {

using testing::make_graph;

EdgeList parse_edges(const std::string& text, bool directed = true) {
  std::istringstream in(text);
  return load_edge_list(in, directed);
}

EdgeList parse_mtx(const std::string& text) {
  std::istringstream in(text);
  return load_matrix_market(in);
}

void expect_csr_invariants(const CsrGraph& g) {
  auto rp = g.row_ptr();
  ASSERT_EQ(rp.size(), g.num_nodes() + 1);
  EXPECT_EQ(rp.front(), 0u);
  EXPECT_EQ(rp.back(), g.num_edges());
  EXPECT_EQ(g.col().size(), g.val().size());
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    EXPECT_LE(rp[u], rp[u + 1]);
    auto t = g.targets(static_cast<NodeId>(u));
    EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
    for (NodeId v : t) EXPECT_LT(v, g.num_nodes());
  }
}

// ----------------------------------------------------------------------------
// load_edge_list
// ----------------------------------------------------------------------------

TEST(EdgeListLoader, WeightedDirected) {
  EdgeList el = parse_edges("0 1 2.5\n1 2 1.0\n");
  EXPECT_EQ(el.n, 3u);
  EXPECT_EQ(el.edges, (std::vector<Edge>{{0, 1, 2.5}, {1, 2, 1.0}}));
}

TEST(EdgeListLoader, EmptyStream) {
  EdgeList el = parse_edges("");
  EXPECT_EQ(el.n, 0u);
  EXPECT_TRUE(el.edges.empty());
}

TEST(EdgeListLoader, DefaultWeightIsOne) {
  EdgeList el = parse_edges("0 1\n");
  EXPECT_EQ(el.n, 2u);
  EXPECT_EQ(el.edges, (std::vector<Edge>{{0, 1, 1.0}}));
}

TEST(EdgeListLoader, CommentsAndBlankLines) {
  EdgeList el = parse_edges("% header\n# another\n\n0 1 2\n  \n");
  EXPECT_EQ(el.edges.size(), 1u);
}

TEST(EdgeListLoader, UndirectedEmitsBothDirections) {
  EdgeList el = parse_edges("0 1 2.0\n2 2 1.0\n", false);
  EXPECT_EQ(el.edges, (std::vector<Edge>{{0, 1, 2.0}, {1, 0, 2.0}, {2, 2, 1.0}}));
}

TEST(EdgeListLoader, HeaderSetsNodeCount) {
  EdgeList el = parse_edges("5 2\n0 1 1\n1 2 1\n");
  EXPECT_EQ(el.n, 5u);
  EXPECT_EQ(el.edges.size(), 2u);
}

TEST(EdgeListLoader, TwoIntegerLineIsAnEdgeWhenCountsDisagree) {
  EdgeList el = parse_edges("0 1\n");
  EXPECT_EQ(el.edges.size(), 1u);
  // "3 7" cannot be a header: 7 != 1 remaining line.
  el = parse_edges("3 7\n0 1\n");
  EXPECT_EQ(el.edges.size(), 2u);
  EXPECT_EQ(el.n, 8u);
}

TEST(EdgeListLoader, MalformedLineReportsLineNumber) {
  try {
    parse_edges("0 1 1\n# c\n0 x 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_edges("0 1 2 3\n"), ParseError);
  EXPECT_THROW(parse_edges("-1 2\n"), ParseError);
}

TEST(EdgeListLoader, RejectsNonFiniteWeights) {
  EXPECT_THROW(parse_edges("0 1 inf\n"), ParseError);
  EXPECT_THROW(parse_edges("0 1 nan\n"), ParseError);
  EXPECT_THROW(parse_edges("0 1 1e400\n"), ParseError);
}

// ----------------------------------------------------------------------------
// load_matrix_market
// ----------------------------------------------------------------------------

TEST(MatrixMarketLoader, PatternGeneral) {
  EdgeList el = parse_mtx("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 2\n");
  EXPECT_EQ(el.n, 2u);
  EXPECT_EQ(el.edges, (std::vector<Edge>{{0, 1, 1.0}}));
}

TEST(MatrixMarketLoader, RealSymmetricMirrorsEntries) {
  EdgeList el =
      parse_mtx("%%MatrixMarket matrix coordinate real symmetric\n% c\n2 2 1\n2 1 3.0\n");
  EXPECT_EQ(el.edges, (std::vector<Edge>{{1, 0, 3.0}, {0, 1, 3.0}}));
}

TEST(MatrixMarketLoader, NodeCountIsMaxDimension) {
  EdgeList el = parse_mtx("%%MatrixMarket matrix coordinate real general\n2 4 1\n1 4 0.5\n");
  EXPECT_EQ(el.n, 4u);
}

TEST(MatrixMarketLoader, UnsupportedQualifiers) {
  EXPECT_THROW(parse_mtx("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n"),
               UnsupportedFormatError);
  EXPECT_THROW(parse_mtx("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n"),
               UnsupportedFormatError);
  EXPECT_THROW(parse_mtx("%%MatrixMarket matrix coordinate real hermitian\n1 1 0\n"),
               UnsupportedFormatError);
}

TEST(MatrixMarketLoader, ParseErrors) {
  EXPECT_THROW(parse_mtx("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n"),
               ParseError);
  EXPECT_THROW(parse_mtx("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n"),
               ParseError);
  EXPECT_THROW(parse_mtx("not a banner\n"), ParseError);
  EXPECT_THROW(parse_mtx("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2\n"),
               ParseError);
}

// ----------------------------------------------------------------------------
// build_csr
// ----------------------------------------------------------------------------

TEST(BuildCsr, Definition) {
  CsrGraph g = make_graph(3, {{0, 1, 2.5}, {0, 2, 1.0}, {1, 2, 1.0}});
  EXPECT_EQ(std::vector<EdgeIndex>(g.row_ptr().begin(), g.row_ptr().end()),
            (std::vector<EdgeIndex>{0, 2, 3, 3}));
  EXPECT_EQ(std::vector<NodeId>(g.col().begin(), g.col().end()), (std::vector<NodeId>{1, 2, 2}));
  EXPECT_EQ(std::vector<Weight>(g.val().begin(), g.val().end()),
            (std::vector<Weight>{2.5, 1.0, 1.0}));
}

TEST(BuildCsr, EmptyGraph) {
  CsrGraph g = make_graph(2, {});
  EXPECT_EQ(std::vector<EdgeIndex>(g.row_ptr().begin(), g.row_ptr().end()),
            (std::vector<EdgeIndex>{0, 0, 0}));
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(BuildCsr, SortsRowsAndKeepsTiesInInputOrder) {
  CsrGraph g = make_graph(3, {{0, 2, 1.0}, {0, 1, 7.0}, {0, 1, 3.0}});
  EXPECT_EQ(std::vector<NodeId>(g.col().begin(), g.col().end()), (std::vector<NodeId>{1, 1, 2}));
  EXPECT_EQ(std::vector<Weight>(g.val().begin(), g.val().end()),
            (std::vector<Weight>{7.0, 3.0, 1.0}));
}

TEST(BuildCsr, ParallelEdgesKeepBothAndMinimumWins) {
  CsrGraph g = make_graph(2, {{0, 1, 5.0}, {0, 1, 2.0}});
  EXPECT_EQ(g.out_degree(0), 2u);
  // Brute-force minimum over the two parallel edges is 2.0.
  EXPECT_EQ(testing::enumerate_shortest(g, 0)[1], 2.0);
  EXPECT_EQ(govm_sssp(g, 0).distances.dist[1], 2.0);
  EXPECT_EQ(gsvm_sssp(g, 0).distances.dist[1], 2.0);
}

TEST(BuildCsr, RejectsInvalidEdgeLists) {
  EXPECT_THROW(build_csr(EdgeList{2, {{0, 2, 1.0}}}), std::invalid_argument);
  EXPECT_THROW(build_csr(EdgeList{2, {{0, 1, kInfinity}}}), std::invalid_argument);
}

TEST(CsrGraph, ConstructorValidates) {
  EXPECT_THROW(CsrGraph({1, 1}, {}, {}), std::invalid_argument);
  EXPECT_THROW(CsrGraph({0, 2}, {1}, {1.0}), std::invalid_argument);
  EXPECT_THROW(CsrGraph({0, 1}, {3}, {1.0}), std::invalid_argument);
  EXPECT_THROW(CsrGraph({0, 2, 2}, {1, 0}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_NO_THROW(CsrGraph({0, 2, 2}, {0, 1}, {1.0, 1.0}));
}

// Property: loaders + build_csr always produce a valid CSR, and writing the
// graph out and reading it back reproduces the same arrays.
TEST(BuildCsr, RandomEdgeListsRoundTrip) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    std::vector<Edge> edges = testing::random_edges(rng, n, 3.0, true);
    testing::assign_weights(rng, n, edges, testing::Regime::MixedFiltered);
    // Duplicates on purpose.
    if (!edges.empty()) edges.push_back(edges[rng() % edges.size()]);
    CsrGraph g = make_graph(n, edges);
    expect_csr_invariants(g);
    EXPECT_EQ(g.num_edges(), edges.size());

    std::stringstream text;
    write_edge_list(g, text);
    EXPECT_EQ(build_csr(load_edge_list(text)), g);

    std::stringstream mtx;
    write_matrix_market(g, mtx);
    EXPECT_EQ(build_csr(load_matrix_market(mtx)), g);

    EXPECT_EQ(build_csr(to_edge_list(g)), g);
  }
}

// ----------------------------------------------------------------------------
// apply_weight_mode
// ----------------------------------------------------------------------------

TEST(WeightMode, UnitSetsEveryWeightToOne) {
  CsrGraph g = generate_random_graph(50, 4, RandomUniformWeights{-1, 1, 3}, 3);
  CsrGraph u = apply_weight_mode(g, UnitWeights{});
  EXPECT_EQ(u.row_ptr().size(), g.row_ptr().size());
  EXPECT_TRUE(std::equal(u.col().begin(), u.col().end(), g.col().begin()));
  for (Weight w : u.val()) EXPECT_EQ(w, 1.0);
}

TEST(WeightMode, KeepIsBitwiseIdentity) {
  CsrGraph g = generate_random_graph(50, 4, RandomUniformWeights{-1, 1, 5}, 5);
  CsrGraph k = apply_weight_mode(g, KeepWeights{});
  ASSERT_EQ(k.num_edges(), g.num_edges());
  EXPECT_EQ(std::memcmp(k.val().data(), g.val().data(), g.num_edges() * sizeof(Weight)), 0);
  EXPECT_EQ(k, g);
}

TEST(WeightMode, RandomUniformIsSeededAndInRange) {
  CsrGraph g = make_graph(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {2, 0, 1}});
  CsrGraph a = apply_weight_mode(g, RandomUniformWeights{0.0, 2.0, 7});
  CsrGraph b = apply_weight_mode(g, RandomUniformWeights{0.0, 2.0, 7});
  EXPECT_EQ(a, b);
  for (Weight w : a.val()) {
    EXPECT_GE(w, 0.0);
    EXPECT_LT(w, 2.0);
  }
  EXPECT_NE(apply_weight_mode(g, RandomUniformWeights{0.0, 2.0, 8}), a);
}

TEST(WeightMode, InvalidRange) {
  CsrGraph g = testing::triangle();
  EXPECT_THROW(apply_weight_mode(g, RandomUniformWeights{1.0, 1.0, 0}), std::invalid_argument);
  EXPECT_THROW(apply_weight_mode(g, RandomUniformWeights{2.0, 1.0, 0}), std::invalid_argument);
}

TEST(WeightMode, Parse) {
  EXPECT_EQ(parse_weight_mode("keep", 0), WeightMode{KeepWeights{}});
  EXPECT_EQ(parse_weight_mode("unit", 0), WeightMode{UnitWeights{}});
  EXPECT_EQ(parse_weight_mode("random:-1:1", 4), WeightMode(RandomUniformWeights{-1, 1, 4}));
  EXPECT_THROW(parse_weight_mode("random:1:-1", 0), std::invalid_argument);
  EXPECT_THROW(parse_weight_mode("heavy", 0), std::invalid_argument);
}

// Unit weights turn every solver into a hop counter; the BFS-equivalent oracle
// here is Bellman-Ford on the same unit graph.
TEST(WeightMode, UnitDistancesAreHopCounts) {
  CsrGraph g = apply_weight_mode(generate_random_graph(120, 3, KeepWeights{}, 9), UnitWeights{});
  for (NodeId s : {0u, 17u, 80u}) {
    auto bf = bellman_ford_sssp(g, s).distances.dist;
    EXPECT_EQ(govm_sssp(g, s).distances.dist, bf);
    EXPECT_EQ(gsvm_sssp(g, s).distances.dist, bf);
    for (double d : bf) {
      if (std::isfinite(d)) {
        EXPECT_EQ(d, std::floor(d));
      }
    }
  }
}

// ----------------------------------------------------------------------------
// generate_random_graph
// ----------------------------------------------------------------------------

TEST(RandomGraph, EmptyAndDeterministic) {
  EXPECT_EQ(generate_random_graph(0, 4, UnitWeights{}, 1).num_nodes(), 0u);
  CsrGraph a = generate_random_graph(100, 8, UnitWeights{}, 1);
  CsrGraph b = generate_random_graph(100, 8, UnitWeights{}, 1);
  EXPECT_EQ(a, b);
  EXPECT_NE(generate_random_graph(100, 8, UnitWeights{}, 2), a);
}

TEST(RandomGraph, EdgeCountConcentrates) {
  // Expected m = n * avg_degree = 8000; sd ~ 89.
  CsrGraph g = generate_random_graph(1000, 8, UnitWeights{}, 3);
  EXPECT_GE(g.num_edges(), 6000u);
  EXPECT_LE(g.num_edges(), 10000u);
  expect_csr_invariants(g);
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (NodeId v : g.targets(u)) EXPECT_NE(u, v);
}

TEST(RandomGraph, ClampsExcessiveDegree) {
  std::vector<std::string> notes;
  CsrGraph g = generate_random_graph(5, 10, UnitWeights{}, 1, &notes);
  EXPECT_EQ(g.num_edges(), 20u);
  ASSERT_EQ(notes.size(), 1u);
  EXPECT_NE(notes[0].find("clamped"), std::string::npos);
}

}  // namespace
}  // namespace dawn
