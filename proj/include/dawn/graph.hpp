// Graph ingestion, CSR storage and synthetic graph generation.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace dawn {

using NodeId = std::uint32_t;
using EdgeIndex = std::uint64_t;
using Weight = double;

inline constexpr Weight kInfinity = std::numeric_limits<Weight>::infinity();

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Weight w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Raw ingestion result. Duplicates and self-loops are allowed here.
struct EdgeList {
  std::size_t n = 0;
  std::vector<Edge> edges;

  friend bool operator==(const EdgeList&, const EdgeList&) = default;
};

// Throws std::invalid_argument if an endpoint is out of range or a weight is
// not finite.
void validate(const EdgeList& el);

// Compressed sparse row adjacency. Immutable after construction; rows are
// sorted by destination, ties kept in input order.
class CsrGraph {
 public:
  CsrGraph() : row_ptr_{0} {}

  // Validates every CSR invariant, including the per-row column order.
  CsrGraph(std::vector<EdgeIndex> row_ptr, std::vector<NodeId> col,
           std::vector<Weight> val);

  std::size_t num_nodes() const { return row_ptr_.size() - 1; }
  std::size_t num_edges() const { return col_.size(); }

  std::span<const EdgeIndex> row_ptr() const { return row_ptr_; }
  std::span<const NodeId> col() const { return col_; }
  std::span<const Weight> val() const { return val_; }

  std::size_t out_degree(NodeId u) const {
    return static_cast<std::size_t>(row_ptr_[u + 1] - row_ptr_[u]);
  }
  std::span<const NodeId> targets(NodeId u) const {
    return std::span(col_).subspan(row_ptr_[u], out_degree(u));
  }
  std::span<const Weight> weights(NodeId u) const {
    return std::span(val_).subspan(row_ptr_[u], out_degree(u));
  }

  bool has_negative_weight() const;

  friend bool operator==(const CsrGraph&, const CsrGraph&) = default;

 private:
  std::vector<EdgeIndex> row_ptr_;
  std::vector<NodeId> col_;
  std::vector<Weight> val_;
};

struct KeepWeights {
  friend bool operator==(const KeepWeights&, const KeepWeights&) = default;
};
struct UnitWeights {
  friend bool operator==(const UnitWeights&, const UnitWeights&) = default;
};
// i.i.d. draws from [lo, hi).
struct RandomUniformWeights {
  double lo = 0.0;
  double hi = 2.0;
  std::uint64_t seed = 0;
  friend bool operator==(const RandomUniformWeights&,
                         const RandomUniformWeights&) = default;
};
using WeightMode = std::variant<KeepWeights, UnitWeights, RandomUniformWeights>;

// Parses "keep", "unit" or "random:LO:HI". Throws std::invalid_argument.
WeightMode parse_weight_mode(const std::string& text, std::uint64_t seed);
std::string to_string(const WeightMode& mode);

// Edge-list text: "u v [w]" per line, '%' or '#' comments, optional leading
// "n m" header. When `directed` is false each edge is emitted in both
// directions (self-loops once).
EdgeList load_edge_list(std::istream& in, bool directed = true);

// MatrixMarket coordinate files, real/integer/pattern x general/symmetric.
EdgeList load_matrix_market(std::istream& in);

CsrGraph build_csr(const EdgeList& el);

// Flattens back into edges in CSR order.
EdgeList to_edge_list(const CsrGraph& g);

// Writes an "n m" header followed by one "u v w" line per edge with
// round-trip precision.
void write_edge_list(const CsrGraph& g, std::ostream& out);
void write_matrix_market(const CsrGraph& g, std::ostream& out);

CsrGraph apply_weight_mode(const CsrGraph& g, const WeightMode& mode);

// Directed G(n, p) without self-loops, p = avg_degree / max(n - 1, 1).
// An avg_degree above n - 1 is clamped; a note is appended to `notes`.
CsrGraph generate_random_graph(std::size_t n, double avg_degree,
                               const WeightMode& mode, std::uint64_t seed,
                               std::vector<std::string>* notes = nullptr);

}  // namespace dawn
