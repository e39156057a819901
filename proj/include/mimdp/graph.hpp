#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mimdp/error.hpp"
#include "mimdp/vertex_set.hpp"

namespace mimdp {

/// Marker returned by distance() for vertices in different components.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n, VertexSet(n)), lists_(n) {}

  /// Builds a graph from an edge list. Duplicates collapse; self-loops and
  /// out-of-range endpoints throw InvalidArgument.
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
        throw InvalidArgument("edge endpoint out of range");
      if (u == v) throw InvalidArgument("self-loop on vertex " + std::to_string(u));
      g.adj_[u].insert(v);
      g.adj_[v].insert(u);
    }
    g.finish();
    return g;
  }

  /// Builds a graph from symmetric adjacency rows (diagonal must be clear).
  static Graph from_rows(std::vector<VertexSet> rows) {
    Graph g;
    g.adj_ = std::move(rows);
    g.lists_.resize(g.adj_.size());
    for (std::size_t v = 0; v < g.adj_.size(); ++v) {
      if (g.adj_[v].universe() != g.adj_.size()) throw InvalidArgument("adjacency row has wrong universe");
      if (g.adj_[v].contains(static_cast<Vertex>(v))) throw InvalidArgument("self-loop in adjacency row");
    }
    for (std::size_t v = 0; v < g.adj_.size(); ++v)
      g.adj_[v].for_each([&](Vertex u) {
        if (!g.adj_[u].contains(static_cast<Vertex>(v))) throw InvalidArgument("adjacency rows not symmetric");
      });
    g.finish();
    return g;
  }

  std::size_t n() const noexcept { return adj_.size(); }
  std::size_t m() const noexcept { return m_; }

  bool adjacent(Vertex u, Vertex v) const noexcept { return adj_[u].contains(v); }
  const VertexSet& neighbors(Vertex v) const noexcept { return adj_[v]; }
  const std::vector<Vertex>& neighbor_list(Vertex v) const noexcept { return lists_[v]; }
  std::size_t degree(Vertex v) const noexcept { return lists_[v].size(); }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (std::size_t u = 0; u < n(); ++u)
      for (Vertex v : lists_[u])
        if (static_cast<std::size_t>(v) > u) out.emplace_back(static_cast<Vertex>(u), v);
    return out;
  }

  void check_vertex(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= n())
      throw InvalidArgument("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n()));
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void finish() {
    m_ = 0;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      lists_[v] = adj_[v].members();
      m_ += lists_[v].size();
    }
    m_ /= 2;
  }

  std::vector<VertexSet> adj_;
  std::vector<std::vector<Vertex>> lists_;
  std::size_t m_ = 0;
};

/// BFS distances from `source`; unreachable vertices get kUnreachable.
inline std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  g.check_vertex(source);
  std::vector<int> dist(g.n(), kUnreachable);
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (Vertex w : g.neighbor_list(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

/// n BFS runs; row u holds distances from u.
inline std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
  std::vector<std::vector<int>> d;
  d.reserve(g.n());
  for (std::size_t u = 0; u < g.n(); ++u) d.push_back(bfs_distances(g, static_cast<Vertex>(u)));
  return d;
}

inline int distance(const Graph& g, Vertex u, Vertex v) {
  g.check_vertex(v);
  return bfs_distances(g, u)[v];
}

/// G^k: uv is an edge iff 1 <= dist(u, v) <= k.
inline Graph graph_power(const Graph& g, int k) {
  if (k < 1) throw InvalidArgument("graph power exponent must be >= 1, got " + std::to_string(k));
  if (k == 1) return g;
  std::vector<VertexSet> rows(g.n(), VertexSet(g.n()));
  for (std::size_t u = 0; u < g.n(); ++u) {
    auto dist = bfs_distances(g, static_cast<Vertex>(u));
    for (std::size_t v = 0; v < g.n(); ++v)
      if (v != u && dist[v] != kUnreachable && dist[v] <= k) rows[u].insert(static_cast<Vertex>(v));
  }
  return Graph::from_rows(std::move(rows));
}

/// N^r(u) = {v != u : dist(u, v) <= r}, computed by a truncated BFS.
inline VertexSet r_neighborhood(const Graph& g, Vertex u, int r) {
  g.check_vertex(u);
  if (r < 1) throw InvalidArgument("neighborhood radius must be >= 1");
  VertexSet out(g.n());
  std::vector<int> dist(g.n(), -1);
  std::queue<Vertex> q;
  dist[u] = 0;
  q.push(u);
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    if (dist[x] == r) continue;
    for (Vertex w : g.neighbor_list(x)) {
      if (dist[w] < 0) {
        dist[w] = dist[x] + 1;
        out.insert(w);
        q.push(w);
      }
    }
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline long long parse_int(std::string_view tok, std::size_t line_no, const char* what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line_no, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
  return value;
}

/// Splits text into (line number, tokens) pairs, skipping blanks and '#' comments.
inline std::vector<std::pair<std::size_t, std::vector<std::string_view>>> tokenize_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> out;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (!tokens.empty()) out.emplace_back(line_no, std::move(tokens));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace detail

/// Parses the line-oriented graph format: `p edge <n> <m>` then `e <u> <v>`
/// lines with 1-based endpoints. `#` starts a comment; DIMACS `c` lines are
/// skipped too. The declared edge count is informational only.
inline Graph parse_graph(std::string_view text) {
  bool have_header = false;
  std::size_t n = 0;
  std::vector<Edge> edges;
  for (auto& [line_no, tok] : detail::tokenize_lines(text)) {
    if (tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 4 || tok[1] != "edge") throw ParseError(line_no, "malformed header, expected 'p edge <n> <m>'");
      long long nn = detail::parse_int(tok[2], line_no, "vertex count");
      long long mm = detail::parse_int(tok[3], line_no, "edge count");
      if (nn < 0 || mm < 0) throw ParseError(line_no, "negative count in header");
      n = static_cast<std::size_t>(nn);
      have_header = true;
    } else if (tok[0] == "e") {
      if (!have_header) throw ParseError(line_no, "edge line before header");
      if (tok.size() != 3) throw ParseError(line_no, "malformed edge line, expected 'e <u> <v>'");
      long long u = detail::parse_int(tok[1], line_no, "endpoint");
      long long v = detail::parse_int(tok[2], line_no, "endpoint");
      if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n)
        throw ParseError(line_no, "vertex index out of range 1.." + std::to_string(n));
      if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u));
      edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(0, "missing 'p edge' header");
  return Graph::from_edges(n, edges);
}

inline std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

/// Induced subgraph on `keep` (ascending), relabelled 0..|keep|-1.
inline Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep) {
  std::vector<int> index(g.n(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (index[u] >= 0 && index[v] >= 0) edges.emplace_back(index[u], index[v]);
  return Graph::from_edges(keep.size(), edges);
}

}  // namespace mimdp
