#include "dawn/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "dawn/errors.hpp"
#include "dawn/format.hpp"

namespace dawn {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool is_comment_or_blank(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '%' || line[pos] == '#';
}

NodeId parse_node(std::string_view tok, std::size_t line_no) {
  auto id = parse_int<std::uint64_t>(tok);
  if (!id) throw ParseError(line_no, "invalid node id '" + std::string(tok) + "'");
  if (*id >= std::numeric_limits<NodeId>::max())
    throw ParseError(line_no, "node id too large '" + std::string(tok) + "'");
  return static_cast<NodeId>(*id);
}

Weight parse_edge_weight(std::string_view tok, std::size_t line_no) {
  auto w = parse_double(tok);
  if (!w) throw ParseError(line_no, "invalid weight '" + std::string(tok) + "'");
  if (!std::isfinite(*w))
    throw ParseError(line_no, "non-finite weight '" + std::string(tok) + "'");
  return *w;
}

void push_edge(EdgeList& el, NodeId u, NodeId v, Weight w, bool both) {
  el.edges.push_back({u, v, w});
  if (both && u != v) el.edges.push_back({v, u, w});
}

}  // namespace

void validate(const EdgeList& el) {
  for (const Edge& e : el.edges) {
    if (e.u >= el.n || e.v >= el.n)
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) +
                                  ") out of range for n = " +
                                  std::to_string(el.n));
    if (!std::isfinite(e.w))
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) +
                                  ") has a non-finite weight");
  }
}

CsrGraph::CsrGraph(std::vector<EdgeIndex> row_ptr, std::vector<NodeId> col,
                   std::vector<Weight> val)
    : row_ptr_(std::move(row_ptr)), col_(std::move(col)), val_(std::move(val)) {
  if (row_ptr_.empty() || row_ptr_.front() != 0)
    throw std::invalid_argument("row_ptr must start at 0");
  if (col_.size() != val_.size())
    throw std::invalid_argument("col and val lengths differ");
  if (row_ptr_.back() != col_.size())
    throw std::invalid_argument("row_ptr must end at the edge count");
  const std::size_t n = row_ptr_.size() - 1;
  for (std::size_t u = 0; u < n; ++u) {
    if (row_ptr_[u + 1] < row_ptr_[u])
      throw std::invalid_argument("row_ptr is not monotone");
    for (EdgeIndex k = row_ptr_[u]; k < row_ptr_[u + 1]; ++k) {
      if (col_[k] >= n) throw std::invalid_argument("column index out of range");
      if (k > row_ptr_[u] && col_[k] < col_[k - 1])
        throw std::invalid_argument("row " + std::to_string(u) +
                                    " is not sorted by column");
    }
  }
  for (Weight w : val_)
    if (!std::isfinite(w)) throw std::invalid_argument("non-finite weight");
}

bool CsrGraph::has_negative_weight() const {
  return std::any_of(val_.begin(), val_.end(), [](Weight w) { return w < 0; });
}

WeightMode parse_weight_mode(const std::string& text, std::uint64_t seed) {
  if (text == "keep") return KeepWeights{};
  if (text == "unit") return UnitWeights{};
  if (text.rfind("random:", 0) == 0) {
    std::string_view rest = std::string_view(text).substr(7);
    auto colon = rest.find(':');
    if (colon != std::string_view::npos) {
      auto lo = parse_double(rest.substr(0, colon));
      auto hi = parse_double(rest.substr(colon + 1));
      if (lo && hi) {
        if (!std::isfinite(*lo) || !std::isfinite(*hi) || !(*lo < *hi))
          throw std::invalid_argument("random weight range requires LO < HI");
        return RandomUniformWeights{*lo, *hi, seed};
      }
    }
  }
  throw std::invalid_argument("weight mode must be keep, unit or random:LO:HI, got '" +
                              text + "'");
}

std::string to_string(const WeightMode& mode) {
  if (std::holds_alternative<KeepWeights>(mode)) return "keep";
  if (std::holds_alternative<UnitWeights>(mode)) return "unit";
  const auto& r = std::get<RandomUniformWeights>(mode);
  return "random:" + format_weight(r.lo) + ":" + format_weight(r.hi);
}

EdgeList load_edge_list(std::istream& in, bool directed) {
  struct DataLine {
    std::size_t line_no;
    std::vector<std::string_view> tokens;
  };
  std::vector<std::string> storage;
  for (std::string line; std::getline(in, line);) {
    storage.push_back(std::move(line));
  }
  std::vector<DataLine> data;
  for (std::size_t i = 0; i < storage.size(); ++i) {
    if (is_comment_or_blank(storage[i])) continue;
    data.push_back({i + 1, split_ws(storage[i])});
  }

  EdgeList el;
  std::size_t first = 0;
  std::size_t header_n = 0;
  bool has_header = false;
  // A two-integer first line counts as an "n m" header only when m matches
  // the number of remaining data lines and every id fits under n.
  if (!data.empty() && data[0].tokens.size() == 2) {
    auto hn = parse_int<std::uint64_t>(data[0].tokens[0]);
    auto hm = parse_int<std::uint64_t>(data[0].tokens[1]);
    if (hn && hm && *hm == data.size() - 1) {
      bool fits = true;
      for (std::size_t i = 1; i < data.size() && fits; ++i) {
        for (std::size_t t = 0; t < 2 && t < data[i].tokens.size(); ++t) {
          auto id = parse_int<std::uint64_t>(data[i].tokens[t]);
          if (id && *id >= *hn) fits = false;
        }
      }
      if (fits) {
        has_header = true;
        header_n = static_cast<std::size_t>(*hn);
        first = 1;
      }
    }
  }

  std::size_t max_id_plus_one = 0;
  for (std::size_t i = first; i < data.size(); ++i) {
    const auto& [line_no, tok] = data[i];
    if (tok.size() < 2 || tok.size() > 3)
      throw ParseError(line_no, "expected 'u v [w]'");
    NodeId u = parse_node(tok[0], line_no);
    NodeId v = parse_node(tok[1], line_no);
    Weight w = tok.size() == 3 ? parse_edge_weight(tok[2], line_no) : 1.0;
    max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::max(u, v) + 1ULL);
    push_edge(el, u, v, w, !directed);
  }
  el.n = has_header ? header_n : max_id_plus_one;
  return el;
}

EdgeList load_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing MatrixMarket header");
  ++line_no;
  auto head = split_ws(line);
  if (head.empty() || lower(head[0]) != "%%matrixmarket")
    throw ParseError(line_no, "missing %%MatrixMarket banner");
  if (head.size() != 5)
    throw ParseError(line_no, "banner must read 'matrix coordinate FIELD SYMMETRY'");
  const std::string object = lower(head[1]);
  const std::string layout = lower(head[2]);
  const std::string field = lower(head[3]);
  const std::string symmetry = lower(head[4]);
  if (object != "matrix")
    throw UnsupportedFormatError("unsupported MatrixMarket object '" + object + "'");
  if (layout != "coordinate")
    throw UnsupportedFormatError("unsupported MatrixMarket layout '" + layout +
                                 "' (only coordinate)");
  if (field != "real" && field != "integer" && field != "pattern")
    throw UnsupportedFormatError("unsupported MatrixMarket field '" + field +
                                 "' (only real, integer, pattern)");
  if (symmetry != "general" && symmetry != "symmetric")
    throw UnsupportedFormatError("unsupported MatrixMarket symmetry '" + symmetry +
                                 "' (only general, symmetric)");
  const bool pattern = field == "pattern";
  const bool symmetric = symmetry == "symmetric";

  std::uint64_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  EdgeList el;
  std::uint64_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    auto tok = split_ws(line);
    if (!have_size) {
      if (tok.size() != 3) throw ParseError(line_no, "expected 'rows cols nnz'");
      auto r = parse_int<std::uint64_t>(tok[0]);
      auto c = parse_int<std::uint64_t>(tok[1]);
      auto z = parse_int<std::uint64_t>(tok[2]);
      if (!r || !c || !z) throw ParseError(line_no, "invalid size line");
      rows = *r;
      cols = *c;
      nnz = *z;
      if (std::max(rows, cols) >= std::numeric_limits<NodeId>::max())
        throw ParseError(line_no, "matrix too large");
      el.n = static_cast<std::size_t>(std::max(rows, cols));
      el.edges.reserve(symmetric ? 2 * nnz : nnz);
      have_size = true;
      continue;
    }
    const std::size_t expected = pattern ? 2 : 3;
    if (tok.size() != expected)
      throw ParseError(line_no, pattern ? "expected 'row col'" : "expected 'row col value'");
    auto r = parse_int<std::uint64_t>(tok[0]);
    auto c = parse_int<std::uint64_t>(tok[1]);
    if (!r || !c) throw ParseError(line_no, "invalid index");
    if (*r < 1 || *r > rows || *c < 1 || *c > cols)
      throw ParseError(line_no, "index out of declared bounds");
    Weight w = pattern ? 1.0 : parse_edge_weight(tok[2], line_no);
    if (++seen > nnz) throw ParseError(line_no, "more entries than declared");
    push_edge(el, static_cast<NodeId>(*r - 1), static_cast<NodeId>(*c - 1), w,
              symmetric);
  }
  if (!have_size) throw ParseError(line_no, "missing size line");
  if (seen != nnz)
    throw ParseError(line_no, "expected " + std::to_string(nnz) + " entries, found " +
                                  std::to_string(seen));
  return el;
}

CsrGraph build_csr(const EdgeList& el) {
  validate(el);
  std::vector<std::size_t> order(el.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Edge& x = el.edges[a];
    const Edge& y = el.edges[b];
    return x.u != y.u ? x.u < y.u : x.v < y.v;
  });
  std::vector<EdgeIndex> row_ptr(el.n + 1, 0);
  std::vector<NodeId> col;
  std::vector<Weight> val;
  col.reserve(order.size());
  val.reserve(order.size());
  for (std::size_t idx : order) {
    const Edge& e = el.edges[idx];
    ++row_ptr[e.u + 1];
    col.push_back(e.v);
    val.push_back(e.w);
  }
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
  return CsrGraph(std::move(row_ptr), std::move(col), std::move(val));
}

EdgeList to_edge_list(const CsrGraph& g) {
  EdgeList el;
  el.n = g.num_nodes();
  el.edges.reserve(g.num_edges());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    auto t = g.targets(u);
    auto w = g.weights(u);
    for (std::size_t k = 0; k < t.size(); ++k) el.edges.push_back({u, t[k], w[k]});
  }
  return el;
}

void write_edge_list(const CsrGraph& g, std::ostream& out) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : to_edge_list(g).edges)
    out << e.u << ' ' << e.v << ' ' << format_weight(e.w) << '\n';
  if (!out) throw std::runtime_error("failed to write edge list");
}

void write_matrix_market(const CsrGraph& g, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << g.num_nodes() << ' ' << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : to_edge_list(g).edges)
    out << e.u + 1 << ' ' << e.v + 1 << ' ' << format_weight(e.w) << '\n';
  if (!out) throw std::runtime_error("failed to write MatrixMarket file");
}

CsrGraph apply_weight_mode(const CsrGraph& g, const WeightMode& mode) {
  if (std::holds_alternative<KeepWeights>(mode)) return g;
  std::vector<Weight> val(g.num_edges());
  if (std::holds_alternative<UnitWeights>(mode)) {
    std::fill(val.begin(), val.end(), 1.0);
  } else {
    const auto& r = std::get<RandomUniformWeights>(mode);
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi))
      throw std::invalid_argument("random weight range requires finite LO < HI");
    std::mt19937_64 rng(r.seed);
    std::uniform_real_distribution<double> dist(r.lo, r.hi);
    for (Weight& w : val) {
      // uniform_real_distribution may round up to hi on some platforms.
      do {
        w = dist(rng);
      } while (w >= r.hi);
    }
  }
  return CsrGraph({g.row_ptr().begin(), g.row_ptr().end()},
                  {g.col().begin(), g.col().end()}, std::move(val));
}

CsrGraph generate_random_graph(std::size_t n, double avg_degree,
                               const WeightMode& mode, std::uint64_t seed,
                               std::vector<std::string>* notes) {
  if (!(avg_degree >= 0.0) || !std::isfinite(avg_degree))
    throw std::invalid_argument("avg_degree must be a finite non-negative number");
  const double candidates = n > 1 ? static_cast<double>(n - 1) : 1.0;
  double p = avg_degree / candidates;
  if (n > 0 && avg_degree > static_cast<double>(n - 1)) {
    if (notes)
      notes->push_back("avg_degree " + format_weight(avg_degree) +
                       " clamped to n-1 = " + std::to_string(n - 1));
    p = 1.0;
  }
  EdgeList el;
  el.n = n;
  if (n > 1 && p > 0.0) {
    std::mt19937_64 rng(seed);
    // Geometric skipping over the n-1 non-self targets of each row.
    std::geometric_distribution<std::uint64_t> skip(p < 1.0 ? p : 0.5);
    const std::uint64_t slots = n - 1;
    for (std::size_t u = 0; u < n; ++u) {
      std::uint64_t pos = p >= 1.0 ? 0 : skip(rng);
      while (pos < slots) {
        NodeId v = static_cast<NodeId>(pos < u ? pos : pos + 1);
        el.edges.push_back({static_cast<NodeId>(u), v, 1.0});
        pos += 1 + (p >= 1.0 ? 0 : skip(rng));
      }
    }
  }
  return apply_weight_mode(build_csr(el), mode);
}

}  // namespace dawn
