#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "mimdp/decomposition.hpp"
#include "mimdp/equivalence.hpp"
#include "mimdp/error.hpp"
#include "mimdp/graph.hpp"
#include "mimdp/problem.hpp"
#include "mimdp/vertex_set.hpp"

namespace mimdp {

/// Decomposition tree rooted at a node subdividing its first edge.
struct RootedTree {
  struct Node {
    int parent = -1;
    std::vector<int> children;
    /// Graph vertex for leaves, -1 otherwise.
    Vertex vertex = -1;
    /// Graph vertices below this node (the cut side A_w).
    VertexSet inside;
  };
  std::vector<Node> nodes;
  int root = -1;

  /// Nodes in post-order (children before parents).
  std::vector<int> post_order() const {
    std::vector<int> order, stack{root};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (int c : nodes[x].children) stack.push_back(c);
    }
    std::reverse(order.begin(), order.end());
    return order;
  }
};

/// Roots the tree by subdividing its lexicographically smallest edge with a
/// new node (id num_nodes). Needs at least two graph vertices.
inline RootedTree root_decomposition(const DecompositionTree& dec, std::size_t n) {
  if (dec.edges.empty()) throw InvalidArgument("cannot root a decomposition without edges");
  auto adj = dec.adjacency();
  RootedTree t;
  t.nodes.resize(dec.num_nodes + 1);
  t.root = static_cast<int>(dec.num_nodes);
  auto [a, b] = *std::min_element(dec.edges.begin(), dec.edges.end());
  t.nodes[t.root].children = {a, b};
  t.nodes[a].parent = t.nodes[b].parent = t.root;
  std::vector<int> stack{a, b};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x]) {
      if (y == t.nodes[x].parent || (x == a && y == b) || (x == b && y == a)) continue;
      t.nodes[y].parent = x;
      t.nodes[x].children.push_back(y);
      stack.push_back(y);
    }
  }
  for (std::size_t x = 0; x < dec.num_nodes; ++x) t.nodes[x].vertex = dec.leaf_vertex[x];
  for (int x : t.post_order()) {
    auto& node = t.nodes[x];
    node.inside = VertexSet(n);
    if (node.vertex >= 0) node.inside.insert(node.vertex);
    for (int c : node.children) node.inside |= t.nodes[c].inside;
  }
  return t;
}

struct SolverOptions {
  std::size_t class_cap = kDefaultClassCap;
  unsigned threads = 1;
};

struct NodeStats {
  int node = -1;
  std::size_t side_size = 0;
  std::size_t inner_classes = 0;
  std::size_t outer_classes = 0;
  std::size_t feasible_entries = 0;
};

struct SolveStats {
  std::vector<NodeStats> nodes;
  std::size_t max_classes = 0;
  double elapsed_ms = 0.0;
};

struct Solution {
  bool feasible = false;
  std::optional<std::size_t> value;
  std::optional<VertexSet> witness;
  /// Class index per vertex (0-based) for partition problems.
  std::optional<std::vector<int>> labels;
  SolveStats stats;
};

/// Direct untruncated check of a (sigma, rho) set on G^r.
inline bool verify_witness(const Graph& g, const Problem& prob, int r, const VertexSet& s) {
  if (s.universe() != g.n()) return false;
  const Graph h = graph_power(g, r);
  for (std::size_t v = 0; v < h.n(); ++v) {
    std::size_t count = h.neighbors(static_cast<Vertex>(v)).intersection_size(s);
    const SetSpec& allowed = s.contains(static_cast<Vertex>(v)) ? prob.sigma : prob.rho;
    if (!allowed.contains(static_cast<long long>(count))) return false;
  }
  return true;
}

/// Direct untruncated check of a distance-r partition (labels 0..q-1).
inline bool verify_witness(const Graph& g, const ConstraintMatrix& mat, const std::vector<int>& labels) {
  if (labels.size() != g.n()) return false;
  const Graph h = graph_power(g, mat.r);
  const std::size_t q = mat.q();
  for (int label : labels)
    if (label < 0 || static_cast<std::size_t>(label) >= q) return false;
  for (std::size_t v = 0; v < h.n(); ++v) {
    std::vector<long long> count(q, 0);
    for (Vertex u : h.neighbor_list(static_cast<Vertex>(v))) ++count[labels[u]];
    for (std::size_t j = 0; j < q; ++j)
      if (!mat.at(labels[v], j).contains(count[j])) return false;
  }
  return true;
}

namespace detail {

struct NodeTables {
  EquivClassTable inner;
  EquivClassTable outer;
};

/// Inner/outer class tables for every node that is not a pass-through.
inline std::vector<std::optional<NodeTables>> build_tables(const Graph& g, const RootedTree& t, int d, const SolverOptions& opt) {
  std::vector<int> work;
  for (std::size_t x = 0; x < t.nodes.size(); ++x)
    if (t.nodes[x].children.size() != 1) work.push_back(static_cast<int>(x));
  std::vector<std::optional<NodeTables>> tables(t.nodes.size());
  auto job = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < work.size(); i += stride) {
      const VertexSet& side = t.nodes[work[i]].inside;
      tables[work[i]] = NodeTables{enumerate_classes(g, side, d, opt.class_cap), enumerate_classes(g, side.complement(), d, opt.class_cap)};
    }
  };
  unsigned threads = std::max(1u, opt.threads);
  if (threads == 1) {
    job(0, 1);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned i = 0; i < threads; ++i) jobs.push_back(std::async(std::launch::async, job, i, threads));
    for (auto& j : jobs) j.get();
  }
  return tables;
}

/// Follows pass-through (single-child) nodes down to a node with tables.
inline int effective(const RootedTree& t, int x) {
  while (t.nodes[x].children.size() == 1) x = t.nodes[x].children[0];
  return x;
}

inline bool better(Objective obj, std::size_t candidate, std::size_t incumbent) {
  return obj == Objective::max ? candidate > incumbent : candidate < incumbent;
}

struct Cell {
  bool feasible = false;
  std::size_t value = 0;
  // Leaves: left_inner is 1 when the vertex is taken. Internal nodes: the
  // child entries this value was combined from.
  std::size_t left_inner = 0, left_outer = 0, right_inner = 0, right_outer = 0;
};

struct Table {
  std::size_t outer_size = 0;
  std::vector<Cell> cells;
  Cell& at(std::size_t inner, std::size_t outer) { return cells[inner * outer_size + outer]; }
  const Cell& at(std::size_t inner, std::size_t outer) const { return cells[inner * outer_size + outer]; }
};

inline void fold(Cell& cell, Objective obj, std::size_t value, std::size_t li, std::size_t lo, std::size_t ri, std::size_t ro) {
  if (cell.feasible && !better(obj, value, cell.value)) return;
  cell = Cell{true, value, li, lo, ri, ro};
}

}  // namespace detail

/// Exact (sigma, rho) optimisation over a decomposition tree. Table entries at
/// node w are indexed by (class of S inside A_w, class of the outside
/// contribution); every vertex of A_w is checked once, at its leaf, against
/// the truncated count its outside class promises.
inline Solution solve_sigma_rho(const Graph& g, const DecompositionTree& dec, const Problem& prob, const SolverOptions& opt = {}) {
  auto started = std::chrono::steady_clock::now();
  validate(dec, g);
  const int d = prob.d_value();
  const Objective obj = prob.objective;
  Solution sol;
  const std::size_t n = g.n();

  if (n == 1) {
    for (int take = 0; take < 2; ++take) {
      const SetSpec& allowed = take ? prob.sigma : prob.rho;
      if (!allowed.truncated_member(0, d)) continue;
      if (!sol.feasible || detail::better(obj, static_cast<std::size_t>(take), *sol.value)) {
        sol.feasible = true;
        sol.value = static_cast<std::size_t>(take);
        sol.witness = VertexSet(1);
        if (take) sol.witness->insert(0);
      }
    }
    if (obj == Objective::exists) sol.value.reset();
    return sol;
  }

  const RootedTree t = root_decomposition(dec, n);
  auto tables = detail::build_tables(g, t, d, opt);
  std::vector<detail::Table> dp(t.nodes.size());

  for (int x : t.post_order()) {
    const auto& node = t.nodes[x];
    if (node.children.size() == 1) continue;
    const auto& tab = *tables[x];
    detail::Table& out = dp[x];
    out.outer_size = tab.outer.size();
    out.cells.assign(tab.inner.size() * tab.outer.size(), {});

    if (node.children.empty()) {
      const Vertex v = node.vertex;
      VertexSet single(n);
      single.insert(v);
      const std::size_t with_v = tab.inner.class_of(single);
      for (std::size_t o = 0; o < tab.outer.size(); ++o) {
        // The leaf's outer vectors have a single entry: v's truncated count.
        int count = static_cast<unsigned char>(tab.outer.vector_of(o)[0]);
        if (prob.rho.truncated_member(count, d)) detail::fold(out.at(0, o), obj, 0, 0, 0, 0, 0);
        if (prob.sigma.truncated_member(count, d)) detail::fold(out.at(with_v, o), obj, 1, 1, 0, 0, 0);
      }
      continue;
    }

    const int a = detail::effective(t, node.children[0]);
    const int b = detail::effective(t, node.children[1]);
    const auto &ta = *tables[a], &tb = *tables[b];
    const detail::Table &da = dp[a], &db = dp[b];
    const std::size_t na = ta.inner.size(), nb = tb.inner.size(), no = tab.outer.size();

    std::vector<char> live_a(na, 0), live_b(nb, 0);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t o = 0; o < da.outer_size && !live_a[i]; ++o) live_a[i] = da.at(i, o).feasible;
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t o = 0; o < db.outer_size && !live_b[i]; ++o) live_b[i] = db.at(i, o).feasible;

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> joint(na * nb, none), outer_a(nb * no, none), outer_b(na * no, none);
    for (std::size_t i = 0; i < na; ++i) {
      if (!live_a[i]) continue;
      for (std::size_t j = 0; j < nb; ++j)
        if (live_b[j]) joint[i * nb + j] = tab.inner.class_of(ta.inner.representative(i) | tb.inner.representative(j));
      for (std::size_t o = 0; o < no; ++o) outer_b[i * no + o] = tb.outer.class_of(ta.inner.representative(i) | tab.outer.representative(o));
    }
    for (std::size_t j = 0; j < nb; ++j) {
      if (!live_b[j]) continue;
      for (std::size_t o = 0; o < no; ++o) outer_a[j * no + o] = ta.outer.class_of(tb.inner.representative(j) | tab.outer.representative(o));
    }

    for (std::size_t o = 0; o < no; ++o)
      for (std::size_t i = 0; i < na; ++i) {
        if (!live_a[i]) continue;
        const std::size_t ob = outer_b[i * no + o];
        for (std::size_t j = 0; j < nb; ++j) {
          if (!live_b[j]) continue;
          const detail::Cell& cb = db.at(j, ob);
          if (!cb.feasible) continue;
          const std::size_t oa = outer_a[j * no + o];
          const detail::Cell& ca = da.at(i, oa);
          if (!ca.feasible) continue;
          detail::fold(out.at(joint[i * nb + j], o), obj, ca.value + cb.value, i, oa, j, ob);
        }
      }
  }

  for (std::size_t x = 0; x < t.nodes.size(); ++x) {
    if (!tables[x]) continue;
    NodeStats s{static_cast<int>(x), t.nodes[x].inside.size(), tables[x]->inner.size(), tables[x]->outer.size(), 0};
    for (const auto& c : dp[x].cells) s.feasible_entries += c.feasible;
    sol.stats.max_classes = std::max({sol.stats.max_classes, s.inner_classes, s.outer_classes});
    sol.stats.nodes.push_back(s);
  }

  const detail::Cell& answer = dp[t.root].at(0, 0);
  if (answer.feasible) {
    sol.feasible = true;
    VertexSet witness(n);
    std::vector<std::tuple<int, std::size_t, std::size_t>> stack{{t.root, 0, 0}};
    while (!stack.empty()) {
      auto [x, i, o] = stack.back();
      stack.pop_back();
      const auto& node = t.nodes[x];
      const detail::Cell& c = dp[x].at(i, o);
      if (node.children.empty()) {
        if (c.left_inner) witness.insert(node.vertex);
        continue;
      }
      stack.emplace_back(detail::effective(t, node.children[0]), c.left_inner, c.left_outer);
      stack.emplace_back(detail::effective(t, node.children[1]), c.right_inner, c.right_outer);
    }
    if (witness.size() != answer.value) throw Error("internal error: reconstructed witness has wrong size");
    if (!verify_witness(g, prob, 1, witness)) throw Error("internal error: reconstructed witness fails verification");
    if (obj != Objective::exists) sol.value = answer.value;
    sol.witness = std::move(witness);
  }
  sol.stats.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return sol;
}

/// Distance-r version: solve the plain problem on G^r with the same tree and
/// return that answer unchanged.
inline Solution solve_distance_r(const Graph& g, const DecompositionTree& dec, const Problem& prob, int r, const SolverOptions& opt = {}) {
  if (r < 1) throw InvalidArgument("distance must be >= 1");
  return solve_sigma_rho(graph_power(g, r), dec, prob, opt);
}

enum class PartitionObjective { exists, min_class_one, max_class_one };

inline std::string to_string(PartitionObjective o) {
  switch (o) {
    case PartitionObjective::exists: return "exists";
    case PartitionObjective::min_class_one: return "min-class-1";
    case PartitionObjective::max_class_one: return "max-class-1";
  }
  return "?";
}

inline PartitionObjective parse_partition_objective(std::string_view s) {
  if (s == "exists") return PartitionObjective::exists;
  if (s == "min-class-1" || s == "min") return PartitionObjective::min_class_one;
  if (s == "max-class-1" || s == "max") return PartitionObjective::max_class_one;
  throw InvalidArgument("unknown partition objective '" + std::string(s) + "' (expected exists, min-class-1 or max-class-1)");
}

namespace detail {

using ClassTuple = std::vector<std::uint32_t>;
using TupleKey = std::pair<ClassTuple, ClassTuple>;

struct PartitionCell {
  std::size_t value = 0;
  TupleKey left, right;
  int label = -1;
};

using PartitionTable = std::map<TupleKey, PartitionCell>;

/// All q-tuples of outer classes realised by some partition of the outside.
inline std::vector<ClassTuple> realizable_tuples(const EquivClassTable& outer, std::size_t q, std::size_t cap) {
  std::set<ClassTuple> current{ClassTuple(q, 0)};
  for (Vertex v : outer.side().members()) {
    std::set<ClassTuple> next;
    for (const auto& tuple : current)
      for (std::size_t j = 0; j < q; ++j) {
        ClassTuple ext = tuple;
        ext[j] = static_cast<std::uint32_t>(outer.extend(tuple[j], v));
        next.insert(std::move(ext));
        if (next.size() > cap) throw BudgetExceeded("partition state count exceeded cap of " + std::to_string(cap));
      }
    current = std::move(next);
  }
  return {current.begin(), current.end()};
}

/// Memoised class_of(rep_x(i) ∪ rep_y(j)) in `target`.
class UnionMemo {
 public:
  UnionMemo(const EquivClassTable& x, const EquivClassTable& y, const EquivClassTable& target)
      : x_(x), y_(y), target_(target), memo_(x.size() * y.size(), -1) {}
  std::uint32_t operator()(std::uint32_t i, std::uint32_t j) {
    long long& slot = memo_[static_cast<std::size_t>(i) * y_.size() + j];
    if (slot < 0) slot = static_cast<long long>(target_.class_of(x_.representative(i) | y_.representative(j)));
    return static_cast<std::uint32_t>(slot);
  }

 private:
  const EquivClassTable &x_, &y_, &target_;
  std::vector<long long> memo_;
};

}  // namespace detail

/// Distance-r vertex partitioning: the same tree DP with q-tuples of class
/// ids as states. Class 1 of the result is label 0.
inline Solution solve_lcvp(const Graph& input, const DecompositionTree& dec, const ConstraintMatrix& mat, PartitionObjective objective,
                           const SolverOptions& opt = {}) {
  auto started = std::chrono::steady_clock::now();
  mat.validate();
  validate(dec, input);
  const Graph g = graph_power(input, mat.r);
  const std::size_t n = g.n(), q = mat.q();
  const int d = mat.d_value();
  const Objective obj = objective == PartitionObjective::max_class_one ? Objective::max : Objective::min;
  Solution sol;

  auto finish = [&](const std::vector<int>& labels, std::size_t value) {
    if (!verify_witness(input, mat, labels)) throw Error("internal error: reconstructed partition fails verification");
    sol.feasible = true;
    if (objective != PartitionObjective::exists) sol.value = value;
    sol.labels = labels;
    sol.witness = VertexSet(n);
    for (std::size_t v = 0; v < n; ++v)
      if (labels[v] == 0) sol.witness->insert(static_cast<Vertex>(v));
  };

  if (n == 1) {
    std::optional<std::pair<int, std::size_t>> best;
    for (std::size_t i = 0; i < q; ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < q && ok; ++j) ok = mat.at(i, j).truncated_member(0, d);
      std::size_t value = i == 0 ? 1 : 0;
      if (ok && (!best || detail::better(obj, value, best->second))) best = {static_cast<int>(i), value};
    }
    if (best) finish({best->first}, best->second);
    return sol;
  }

  const RootedTree t = root_decomposition(dec, n);
  auto tables = detail::build_tables(g, t, d, opt);
  std::vector<detail::PartitionTable> dp(t.nodes.size());
  auto fold = [&](detail::PartitionTable& table, detail::TupleKey key, detail::PartitionCell cell) {
    auto [it, inserted] = table.try_emplace(std::move(key), cell);
    if (!inserted && detail::better(obj, cell.value, it->second.value)) it->second = std::move(cell);
  };

  for (int x : t.post_order()) {
    const auto& node = t.nodes[x];
    if (node.children.size() == 1) continue;
    const auto& tab = *tables[x];
    const auto outer_tuples = detail::realizable_tuples(tab.outer, q, opt.class_cap);
    auto& out = dp[x];

    if (node.children.empty()) {
      VertexSet single(n);
      single.insert(node.vertex);
      const auto with_v = static_cast<std::uint32_t>(tab.inner.class_of(single));
      for (const auto& o : outer_tuples)
        for (std::size_t i = 0; i < q; ++i) {
          bool ok = true;
          for (std::size_t j = 0; j < q && ok; ++j) {
            int count = static_cast<unsigned char>(tab.outer.vector_of(o[j])[0]);
            ok = mat.at(i, j).truncated_member(count, d);
          }
          if (!ok) continue;
          detail::ClassTuple inner(q, 0);
          inner[i] = with_v;
          fold(out, {inner, o}, detail::PartitionCell{i == 0 ? 1u : 0u, {}, {}, static_cast<int>(i)});
        }
      continue;
    }

    const int a = detail::effective(t, node.children[0]);
    const int b = detail::effective(t, node.children[1]);
    const auto &ta = *tables[a], &tb = *tables[b];
    detail::UnionMemo joint(ta.inner, tb.inner, tab.inner);
    detail::UnionMemo to_outer_a(tb.inner, tab.outer, ta.outer);
    detail::UnionMemo to_outer_b(ta.inner, tab.outer, tb.outer);

    std::set<detail::ClassTuple> inner_a;
    for (const auto& [key, cell] : dp[a]) inner_a.insert(key.first);
    std::map<detail::ClassTuple, std::vector<const std::pair<const detail::TupleKey, detail::PartitionCell>*>> b_by_outer;
    for (const auto& entry : dp[b]) b_by_outer[entry.first.second].push_back(&entry);

    for (const auto& o : outer_tuples)
      for (const auto& ia : inner_a) {
        detail::ClassTuple ob(q);
        for (std::size_t j = 0; j < q; ++j) ob[j] = to_outer_b(ia[j], o[j]);
        auto hit = b_by_outer.find(ob);
        if (hit == b_by_outer.end()) continue;
        for (const auto* eb : hit->second) {
          const auto& ib = eb->first.first;
          detail::ClassTuple oa(q);
          for (std::size_t j = 0; j < q; ++j) oa[j] = to_outer_a(ib[j], o[j]);
          auto ea = dp[a].find({ia, oa});
          if (ea == dp[a].end()) continue;
          detail::ClassTuple inner(q);
          for (std::size_t j = 0; j < q; ++j) inner[j] = joint(ia[j], ib[j]);
          fold(out, {inner, o}, detail::PartitionCell{ea->second.value + eb->second.value, ea->first, eb->first, -1});
        }
      }
    if (out.size() > opt.class_cap) throw BudgetExceeded("partition table size exceeded cap of " + std::to_string(opt.class_cap));
  }

  for (std::size_t x = 0; x < t.nodes.size(); ++x) {
    if (!tables[x]) continue;
    NodeStats s{static_cast<int>(x), t.nodes[x].inside.size(), tables[x]->inner.size(), tables[x]->outer.size(), dp[x].size()};
    sol.stats.max_classes = std::max({sol.stats.max_classes, s.inner_classes, s.outer_classes});
    sol.stats.nodes.push_back(s);
  }

  const detail::TupleKey root_key{detail::ClassTuple(q, 0), detail::ClassTuple(q, 0)};
  auto root = dp[t.root].find(root_key);
  if (root != dp[t.root].end()) {
    std::vector<int> labels(n, -1);
    std::vector<std::pair<int, detail::TupleKey>> stack{{t.root, root_key}};
    while (!stack.empty()) {
      auto [x, key] = stack.back();
      stack.pop_back();
      const auto& node = t.nodes[x];
      const auto& cell = dp[x].at(key);
      if (node.children.empty()) {
        labels[node.vertex] = cell.label;
        continue;
      }
      stack.emplace_back(detail::effective(t, node.children[0]), cell.left);
      stack.emplace_back(detail::effective(t, node.children[1]), cell.right);
    }
    finish(labels, root->second.value);
  }
  sol.stats.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return sol;
}

}  // namespace mimdp
