#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mimdp/error.hpp"
#include "mimdp/graph.hpp"
#include "mimdp/vertex_set.hpp"

namespace mimdp {

using TreeNode = int;
using TreeEdge = std::pair<TreeNode, TreeNode>;

/// A subcubic tree whose leaves are in bijection with the graph's vertices.
///
/// Tree edges are stored normalized as (a, b) with a < b. The cut of an edge
/// puts on side A the graph vertices whose leaves lie in the component of
/// T - e that contains the smaller endpoint a.
struct DecompositionTree {
  std::size_t num_nodes = 0;
  std::vector<TreeEdge> edges;
  /// leaf_vertex[node] is the graph vertex at that leaf, or -1.
  std::vector<Vertex> leaf_vertex;

  std::vector<std::vector<TreeNode>> adjacency() const {
    std::vector<std::vector<TreeNode>> adj(num_nodes);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
  }

  /// vertex -> leaf node
  std::vector<TreeNode> vertex_leaf(std::size_t n) const {
    std::vector<TreeNode> out(n, -1);
    for (std::size_t node = 0; node < leaf_vertex.size(); ++node)
      if (leaf_vertex[node] >= 0 && static_cast<std::size_t>(leaf_vertex[node]) < n) out[leaf_vertex[node]] = static_cast<TreeNode>(node);
    return out;
  }
};

/// Throws InvalidArgument naming the first violated tree invariant.
inline void validate(const DecompositionTree& dec, const Graph& g) {
  const std::size_t n = g.n();
  if (n == 0) throw InvalidArgument("decomposition of an empty graph");
  if (dec.num_nodes == 0) throw InvalidArgument("decomposition tree has no nodes");
  if (dec.leaf_vertex.size() != dec.num_nodes) throw InvalidArgument("leaf map size does not match node count");
  for (auto [a, b] : dec.edges) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= dec.num_nodes || static_cast<std::size_t>(b) >= dec.num_nodes)
      throw InvalidArgument("tree edge endpoint out of range");
    if (a == b) throw InvalidArgument("not a tree: self-loop at node " + std::to_string(a));
  }
  if (dec.edges.size() + 1 != dec.num_nodes)
    throw InvalidArgument(dec.edges.size() + 1 > dec.num_nodes ? "not a tree: contains a cycle" : "not a tree: disconnected");
  auto adj = dec.adjacency();
  for (std::size_t v = 0; v < dec.num_nodes; ++v) {
    if (adj[v].size() > 3) throw InvalidArgument("not subcubic: node " + std::to_string(v) + " has degree " + std::to_string(adj[v].size()));
    if (std::adjacent_find(adj[v].begin(), adj[v].end()) != adj[v].end())
      throw InvalidArgument("not a tree: parallel edges at node " + std::to_string(v));
  }
  std::vector<char> seen(dec.num_nodes, 0);
  std::vector<TreeNode> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    TreeNode x = stack.back();
    stack.pop_back();
    for (TreeNode y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  if (reached != dec.num_nodes) throw InvalidArgument("not a tree: disconnected");

  std::vector<int> hits(n, 0);
  for (std::size_t node = 0; node < dec.num_nodes; ++node) {
    bool is_leaf = adj[node].size() <= 1;
    Vertex v = dec.leaf_vertex[node];
    if (v >= 0) {
      if (static_cast<std::size_t>(v) >= n) throw InvalidArgument("not a bijection: leaf mapped to unknown vertex " + std::to_string(v + 1));
      if (!is_leaf) throw InvalidArgument("not a bijection: internal node " + std::to_string(node) + " carries a vertex");
      if (++hits[v] > 1) throw InvalidArgument("not a bijection: vertex " + std::to_string(v + 1) + " mapped twice");
    } else if (is_leaf) {
      throw InvalidArgument("not a bijection: leaf " + std::to_string(node) + " carries no vertex");
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (hits[v] == 0) throw InvalidArgument("not a bijection: vertex " + std::to_string(v + 1) + " has no leaf");
}

/// Graph vertices on each side of tree edge (a, b). A is the side containing
/// node a; swapping the endpoints swaps the pair.
inline std::pair<VertexSet, VertexSet> cut_of_edge(const DecompositionTree& dec, std::size_t n, TreeEdge e) {
  auto [a, b] = e;
  auto adj = dec.adjacency();
  if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= dec.num_nodes || static_cast<std::size_t>(b) >= dec.num_nodes ||
      !std::binary_search(adj[a].begin(), adj[a].end(), b))
    throw InvalidArgument("(" + std::to_string(a) + ", " + std::to_string(b) + ") is not a tree edge");
  VertexSet side(n);
  std::vector<char> seen(dec.num_nodes, 0);
  std::vector<TreeNode> stack{a};
  seen[a] = seen[b] = 1;
  while (!stack.empty()) {
    TreeNode x = stack.back();
    stack.pop_back();
    if (dec.leaf_vertex[x] >= 0) side.insert(dec.leaf_vertex[x]);
    for (TreeNode y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
  }
  return {side, side.complement()};
}

/// Caterpillar whose leaves, read along the spine, give `order`.
///
/// Leaf i (tree node i) carries order[i]; spine nodes are n..2n-3. With this
/// numbering every spine edge cuts off a prefix of `order` as side A and every
/// pendant edge has the single leaf vertex as side A.
inline DecompositionTree caterpillar_from_order(const std::vector<Vertex>& order) {
  const std::size_t n = order.size();
  std::vector<char> seen(n, 0);
  for (Vertex v : order) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]) throw InvalidArgument("vertex order is not a permutation");
    seen[v] = 1;
  }
  if (n == 0) throw InvalidArgument("empty vertex order");
  DecompositionTree dec;
  if (n == 1) {
    dec.num_nodes = 1;
    dec.leaf_vertex = {order[0]};
    return dec;
  }
  if (n == 2) {
    dec.num_nodes = 2;
    dec.edges = {{0, 1}};
    dec.leaf_vertex = {order[0], order[1]};
    return dec;
  }
  dec.num_nodes = 2 * n - 2;
  dec.leaf_vertex.assign(dec.num_nodes, -1);
  for (std::size_t i = 0; i < n; ++i) dec.leaf_vertex[i] = order[i];
  auto spine = [n](std::size_t i) { return static_cast<TreeNode>(n + i); };
  const std::size_t spine_len = n - 2;
  for (std::size_t i = 0; i + 1 < spine_len; ++i) dec.edges.emplace_back(spine(i), spine(i + 1));
  dec.edges.emplace_back(0, spine(0));
  for (std::size_t i = 1; i + 1 < n; ++i) dec.edges.emplace_back(static_cast<TreeNode>(i), spine(std::min(i - 1, spine_len - 1)));
  dec.edges.emplace_back(static_cast<TreeNode>(n - 1), spine(spine_len - 1));
  std::sort(dec.edges.begin(), dec.edges.end());
  return dec;
}

/// Closed interval [left, right] of an interval model.
struct Interval {
  long long left = 0;
  long long right = 0;
};

inline bool intervals_intersect(const Interval& a, const Interval& b) noexcept {
  return a.left <= b.right && b.left <= a.right;
}

/// Checks that `g` is exactly the intersection graph of `intervals`.
inline void check_interval_model(const Graph& g, const std::vector<Interval>& intervals) {
  if (intervals.size() != g.n())
    throw InvalidArgument("interval model has " + std::to_string(intervals.size()) + " intervals for " + std::to_string(g.n()) + " vertices");
  for (std::size_t v = 0; v < intervals.size(); ++v)
    if (intervals[v].left > intervals[v].right) throw InvalidArgument("interval of vertex " + std::to_string(v + 1) + " has left > right");
  for (std::size_t u = 0; u < g.n(); ++u)
    for (std::size_t v = u + 1; v < g.n(); ++v)
      if (intervals_intersect(intervals[u], intervals[v]) != g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v)))
        throw InvalidArgument("interval model inconsistent with graph at vertices " + std::to_string(u + 1) + ", " + std::to_string(v + 1));
}

/// Vertex order by (left, right, index).
inline std::vector<Vertex> interval_order(const std::vector<Interval>& intervals) {
  std::vector<Vertex> order(intervals.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    const auto &x = intervals[a], &y = intervals[b];
    if (x.left != y.left) return x.left < y.left;
    if (x.right != y.right) return x.right < y.right;
    return a < b;
  });
  return order;
}

/// Linear decomposition of an interval graph from its interval model.
inline DecompositionTree interval_decomposition(const Graph& g, const std::vector<Interval>& intervals) {
  check_interval_model(g, intervals);
  return caterpillar_from_order(interval_order(intervals));
}

/// Decomposition file: `dec <num_nodes>`, `te <a> <b>` (0-based tree nodes),
/// `leaf <tree_node> <graph_vertex>` (1-based graph vertex).
inline DecompositionTree parse_decomposition(std::string_view text) {
  DecompositionTree dec;
  bool have_header = false;
  for (auto& [line_no, tok] : detail::tokenize_lines(text)) {
    if (tok[0] == "dec") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 2) throw ParseError(line_no, "malformed header, expected 'dec <num_nodes>'");
      long long nodes = detail::parse_int(tok[1], line_no, "node count");
      if (nodes < 1) throw ParseError(line_no, "node count must be >= 1");
      dec.num_nodes = static_cast<std::size_t>(nodes);
      dec.leaf_vertex.assign(dec.num_nodes, -1);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "line before 'dec' header");
    auto node = [&](std::string_view t) {
      long long x = detail::parse_int(t, line_no, "tree node");
      if (x < 0 || static_cast<std::size_t>(x) >= dec.num_nodes) throw ParseError(line_no, "tree node out of range 0.." + std::to_string(dec.num_nodes - 1));
      return static_cast<TreeNode>(x);
    };
    if (tok[0] == "te") {
      if (tok.size() != 3) throw ParseError(line_no, "malformed tree edge, expected 'te <a> <b>'");
      TreeNode a = node(tok[1]), b = node(tok[2]);
      dec.edges.emplace_back(std::min(a, b), std::max(a, b));
    } else if (tok[0] == "leaf") {
      if (tok.size() != 3) throw ParseError(line_no, "malformed leaf line, expected 'leaf <node> <vertex>'");
      TreeNode a = node(tok[1]);
      long long v = detail::parse_int(tok[2], line_no, "graph vertex");
      if (v < 1) throw ParseError(line_no, "graph vertex must be >= 1");
      if (dec.leaf_vertex[a] >= 0) throw ParseError(line_no, "tree node " + std::to_string(a) + " assigned twice");
      dec.leaf_vertex[a] = static_cast<Vertex>(v - 1);
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(0, "missing 'dec' header");
  std::sort(dec.edges.begin(), dec.edges.end());
  return dec;
}

inline std::string write_decomposition(const DecompositionTree& dec) {
  std::ostringstream out;
  out << "dec " << dec.num_nodes << '\n';
  for (auto [a, b] : dec.edges) out << "te " << a << ' ' << b << '\n';
  for (std::size_t node = 0; node < dec.leaf_vertex.size(); ++node)
    if (dec.leaf_vertex[node] >= 0) out << "leaf " << node << ' ' << dec.leaf_vertex[node] + 1 << '\n';
  return out.str();
}

/// Interval file: `intervals <n>` then `iv <vertex> <left> <right>` (1-based vertex).
inline std::vector<Interval> parse_intervals(std::string_view text) {
  std::vector<Interval> out;
  std::vector<char> assigned;
  bool have_header = false;
  for (auto& [line_no, tok] : detail::tokenize_lines(text)) {
    if (tok[0] == "intervals") {
      if (have_header || tok.size() != 2) throw ParseError(line_no, "malformed header, expected 'intervals <n>'");
      long long n = detail::parse_int(tok[1], line_no, "interval count");
      if (n < 0) throw ParseError(line_no, "negative interval count");
      out.assign(static_cast<std::size_t>(n), Interval{});
      assigned.assign(out.size(), 0);
      have_header = true;
    } else if (tok[0] == "iv") {
      if (!have_header) throw ParseError(line_no, "interval before header");
      if (tok.size() != 4) throw ParseError(line_no, "malformed interval, expected 'iv <vertex> <left> <right>'");
      long long v = detail::parse_int(tok[1], line_no, "vertex");
      if (v < 1 || static_cast<std::size_t>(v) > out.size()) throw ParseError(line_no, "vertex out of range");
      if (assigned[v - 1]) throw ParseError(line_no, "vertex " + std::to_string(v) + " given twice");
      assigned[v - 1] = 1;
      out[v - 1] = Interval{detail::parse_int(tok[2], line_no, "left end"), detail::parse_int(tok[3], line_no, "right end")};
      if (out[v - 1].left > out[v - 1].right) throw ParseError(line_no, "left end exceeds right end");
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(0, "missing 'intervals' header");
  for (std::size_t v = 0; v < assigned.size(); ++v)
    if (!assigned[v]) throw ParseError(0, "no interval for vertex " + std::to_string(v + 1));
  return out;
}

inline std::string write_intervals(const std::vector<Interval>& intervals) {
  std::ostringstream out;
  out << "intervals " << intervals.size() << '\n';
  for (std::size_t v = 0; v < intervals.size(); ++v)
    out << "iv " << v + 1 << ' ' << intervals[v].left << ' ' << intervals[v].right << '\n';
  return out.str();
}

}  // namespace mimdp
