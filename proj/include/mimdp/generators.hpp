#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mimdp/decomposition.hpp"
#include "mimdp/error.hpp"
#include "mimdp/graph.hpp"
#include "mimdp/problem.hpp"
#include "mimdp/vertex_set.hpp"

namespace mimdp {

/// A graph with a partition V_1..V_k of its vertices.
struct PartitionedGraph {
  Graph graph;
  std::vector<std::vector<Vertex>> classes;

  std::size_t k() const noexcept { return classes.size(); }
  std::size_t p() const noexcept {
    std::size_t p = 0;
    for (const auto& c : classes) p = std::max(p, c.size());
    return p;
  }

  void validate() const {
    std::vector<char> seen(graph.n(), 0);
    for (const auto& c : classes)
      for (Vertex v : c) {
        graph.check_vertex(v);
        if (seen[v]) throw InvalidArgument("partition classes overlap at vertex " + std::to_string(v + 1));
        seen[v] = 1;
      }
    for (std::size_t v = 0; v < graph.n(); ++v)
      if (!seen[v]) throw InvalidArgument("vertex " + std::to_string(v + 1) + " is in no partition class");
  }
};

enum class PadMode { clique, independent_set };

/// Brings every class up to p = max class size. Clique mode adds isolated
/// vertices; IS mode adds vertices adjacent to everything outside their class,
/// including pads of other classes.
inline PartitionedGraph pad_partition(const PartitionedGraph& pg, PadMode mode) {
  pg.validate();
  const std::size_t p = pg.p();
  std::size_t extra = 0;
  for (const auto& c : pg.classes) extra += p - c.size();
  if (extra == 0) return pg;
  const std::size_t n = pg.graph.n() + extra;
  std::vector<Edge> edges = pg.graph.edges();
  PartitionedGraph out;
  out.classes = pg.classes;
  std::vector<int> class_of(n, -1);
  Vertex next = static_cast<Vertex>(pg.graph.n());
  std::vector<Vertex> pads;
  for (std::size_t i = 0; i < out.classes.size(); ++i) {
    while (out.classes[i].size() < p) {
      out.classes[i].push_back(next);
      pads.push_back(next++);
    }
    for (Vertex v : out.classes[i]) class_of[v] = static_cast<int>(i);
  }
  if (mode == PadMode::independent_set) {
    for (Vertex pad : pads)
      for (std::size_t u = 0; u < n; ++u) {
        auto v = static_cast<Vertex>(u);
        if (class_of[v] == class_of[pad]) continue;
        // Pad-pad pairs are emitted once, from the smaller pad.
        if (v >= static_cast<Vertex>(pg.graph.n()) && v < pad) continue;
        edges.emplace_back(std::min(pad, v), std::max(pad, v));
      }
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

/// Generated reduction instance. roles[v] names the part vertex v belongs to,
/// with 1-based indices: "z:i:s", "r:i,j:s,t", "b1:i:h", "b2:i:h",
/// "b1:i,j:h", "b2:i,j:h", "b:i", "c:i", "c1:i:h", "c2:i:h", "s:i".
struct GadgetInstance {
  Graph graph;
  std::string construction;
  std::size_t k = 0;
  std::size_t p = 0;
  int d = 0;
  std::size_t target = 0;
  std::vector<std::string> roles;
  std::optional<bool> expected;
  /// Vertices in B- or C-gadgets.
  std::size_t gadget_size = 0;

  std::vector<Vertex> with_prefix(const std::string& prefix) const {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < roles.size(); ++v)
      if (roles[v].rfind(prefix, 0) == 0) out.push_back(static_cast<Vertex>(v));
    return out;
  }
};

inline std::string write_metadata(const GadgetInstance& inst) {
  std::ostringstream out;
  out << "construction " << inst.construction << "\n";
  out << "params k " << inst.k << " p " << inst.p << " d " << inst.d << "\n";
  out << "target " << inst.target << "\n";
  out << "expected " << (inst.expected ? (*inst.expected ? "yes" : "no") : "unknown") << "\n";
  for (std::size_t v = 0; v < inst.roles.size(); ++v) out << "role " << v + 1 << " " << inst.roles[v] << "\n";
  return out.str();
}

namespace detail {

inline std::string idx(std::size_t a) { return std::to_string(a + 1); }
inline std::string idx(std::size_t a, std::size_t b) { return idx(a) + "," + idx(b); }

/// Incrementally built labelled graph.
struct Builder {
  std::vector<std::string> roles;
  std::vector<Edge> edges;

  Vertex add(std::string role) {
    roles.push_back(std::move(role));
    return static_cast<Vertex>(roles.size() - 1);
  }
  void link(Vertex u, Vertex v) { edges.emplace_back(std::min(u, v), std::max(u, v)); }
  void link_all(Vertex u, const std::vector<Vertex>& vs) {
    for (Vertex v : vs) link(u, v);
  }
  void clique(const std::vector<Vertex>& vs) {
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) link(vs[a], vs[b]);
  }
  Graph graph() const { return Graph::from_edges(roles.size(), edges); }
};

struct Core {
  Builder b;
  std::vector<std::vector<Vertex>> z;                // z[i][s]
  std::vector<std::vector<std::vector<Vertex>>> r;   // r[i][j], i < j
};

inline Core build_core(const PartitionedGraph& pg) {
  pg.validate();
  const std::size_t k = pg.k(), p = pg.p();
  for (const auto& c : pg.classes)
    if (c.size() != p) throw InvalidArgument("partition classes must all have size p; pad first");
  Core core;
  core.z.assign(k, {});
  core.r.assign(k, std::vector<std::vector<Vertex>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t s = 0; s < p; ++s) core.z[i].push_back(core.b.add("z:" + idx(i) + ":" + idx(s)));
  for (std::size_t i = 0; i < k; ++i) core.b.clique(core.z[i]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::size_t s = 0; s < p; ++s)
        for (std::size_t t = 0; t < p; ++t) {
          if (!pg.graph.adjacent(pg.classes[i][s], pg.classes[j][t])) continue;
          Vertex r = core.b.add("r:" + idx(i, j) + ":" + idx(s, t));
          core.r[i][j].push_back(r);
          for (std::size_t h = 0; h < p; ++h) {
            if (h != s) core.b.link(r, core.z[i][h]);
            if (h != t) core.b.link(r, core.z[j][h]);
          }
        }
      core.b.clique(core.r[i][j]);
    }
  return core;
}

inline GadgetInstance finish(const Core& core, const PartitionedGraph& pg, std::string construction, int d, std::size_t target,
                             std::size_t gadget_size, std::optional<bool> expected) {
  GadgetInstance inst;
  inst.graph = core.b.graph();
  inst.construction = std::move(construction);
  inst.k = pg.k();
  inst.p = pg.p();
  inst.d = d;
  inst.target = target;
  inst.roles = core.b.roles;
  inst.expected = expected;
  inst.gadget_size = gadget_size;
  return inst;
}

}  // namespace detail

/// The graph G'' on Z(i) and R(i,j). Classes must already be padded.
inline GadgetInstance gen_core(const PartitionedGraph& pg) {
  auto core = detail::build_core(pg);
  return detail::finish(core, pg, "core", 0, 0, 0, std::nullopt);
}

/// G'' plus a B-gadget on every Z(i) and every R(i,j). B(i,j) is built even
/// when R(i,j) is empty. target = 2d(k + C(k,2)).
inline GadgetInstance gen_clique_gadget(const PartitionedGraph& pg, int d, std::optional<bool> expected = std::nullopt) {
  if (d < 1) throw InvalidArgument("clique gadget needs d >= 1");
  if (pg.k() < 3) throw InvalidArgument("clique gadget needs k >= 3");
  auto core = detail::build_core(pg);
  const std::size_t k = pg.k();
  std::size_t gadget = 0;
  auto attach = [&](const std::string& tag, const std::vector<Vertex>& x) {
    std::vector<Vertex> b1, b2;
    for (int h = 0; h < d; ++h) b1.push_back(core.b.add("b1:" + tag + ":" + detail::idx(static_cast<std::size_t>(h))));
    for (int h = 0; h + 1 < d; ++h) b2.push_back(core.b.add("b2:" + tag + ":" + detail::idx(static_cast<std::size_t>(h))));
    for (Vertex u : b1) {
      core.b.link_all(u, b2);
      core.b.link_all(u, x);
    }
    gadget += b1.size() + b2.size();
  };
  for (std::size_t i = 0; i < k; ++i) attach(detail::idx(i), core.z[i]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) attach(detail::idx(i, j), core.r[i][j]);
  const std::size_t groups = k + k * (k - 1) / 2;
  return detail::finish(core, pg, "clique-gadget", d, 2 * static_cast<std::size_t>(d) * groups, gadget, expected);
}

namespace detail {

inline Core core_with_b(const PartitionedGraph& pg, std::vector<Vertex>& b) {
  if (pg.k() < 2) throw InvalidArgument("domination gadgets need k >= 2");
  auto core = build_core(pg);
  for (std::size_t i = 0; i < pg.k(); ++i) {
    b.push_back(core.b.add("b:" + idx(i)));
    core.b.link_all(b.back(), core.z[i]);
  }
  return core;
}

}  // namespace detail

/// G'' plus b_i adjacent to exactly Z(i). target = k.
inline GadgetInstance gen_domset_gadget(const PartitionedGraph& pg, std::optional<bool> expected = std::nullopt) {
  std::vector<Vertex> b;
  auto core = detail::core_with_b(pg, b);
  return detail::finish(core, pg, "domset-gadget", 1, pg.k(), 0, expected);
}

/// Dominating-set gadget plus a pendant c_i on each b_i. target = 2k.
inline GadgetInstance gen_total_dom_gadget(const PartitionedGraph& pg, std::optional<bool> expected = std::nullopt) {
  std::vector<Vertex> b;
  auto core = detail::core_with_b(pg, b);
  for (std::size_t i = 0; i < pg.k(); ++i) core.b.link(b[i], core.b.add("c:" + detail::idx(i)));
  return detail::finish(core, pg, "total-dom-gadget", 1, 2 * pg.k(), 0, expected);
}

/// G'' plus, per class, C(i) = K_{d,d} whose first d-1 vertices of C_1(i)
/// also see Z(i) and every R(i,j) with j > i, and a satellite s_i on Z(i)
/// and those same d-1 vertices. c1:i:d touches only C_2(i). target = k(d+1).
inline GadgetInstance gen_d_dom_gadget(const PartitionedGraph& pg, int d, std::optional<bool> expected = std::nullopt) {
  if (d < 2) throw InvalidArgument("d-domination gadget needs d >= 2");
  if (pg.k() < 2) throw InvalidArgument("domination gadgets need k >= 2");
  auto core = detail::build_core(pg);
  const std::size_t k = pg.k();
  std::size_t gadget = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Vertex> c1, c2;
    for (int h = 0; h < d; ++h) c1.push_back(core.b.add("c1:" + detail::idx(i) + ":" + detail::idx(static_cast<std::size_t>(h))));
    for (int h = 0; h < d; ++h) c2.push_back(core.b.add("c2:" + detail::idx(i) + ":" + detail::idx(static_cast<std::size_t>(h))));
    for (Vertex u : c1) core.b.link_all(u, c2);
    for (int h = 0; h + 1 < d; ++h) {
      core.b.link_all(c1[h], core.z[i]);
      for (std::size_t j = i + 1; j < k; ++j) core.b.link_all(c1[h], core.r[i][j]);
    }
    Vertex s = core.b.add("s:" + detail::idx(i));
    core.b.link_all(s, core.z[i]);
    core.b.link_all(s, std::vector<Vertex>(c1.begin(), c1.end() - 1));
    gadget += c1.size() + c2.size();
  }
  return detail::finish(core, pg, "d-dom-gadget", d, k * static_cast<std::size_t>(d + 1), gadget, expected);
}

/// The (sigma, rho) problem each construction's target refers to, and how
/// feasibility at the target size maps to a yes answer.
inline Problem certification_problem(const GadgetInstance& inst) {
  const int d = inst.d;
  if (inst.construction == "clique-gadget")
    return Problem{SetSpec::finite({d}), SetSpec::at_least(d + 1), Objective::max, "clique-gadget"};
  if (inst.construction == "domset-gadget") return Problem{SetSpec::naturals(), SetSpec::positive(), Objective::min, "domset-gadget"};
  if (inst.construction == "total-dom-gadget")
    return Problem{SetSpec::positive(), SetSpec::positive(), Objective::min, "total-dom-gadget"};
  if (inst.construction == "d-dom-gadget") return Problem{SetSpec::naturals(), SetSpec::at_least(d), Objective::min, "d-dom-gadget"};
  throw InvalidArgument("no certification problem for construction " + inst.construction);
}

// ---- random instances -----------------------------------------------------

/// Bernoulli trial with probability num/den using integer arithmetic only.
inline bool coin(std::mt19937_64& rng, std::uint64_t num, std::uint64_t den) {
  return std::uniform_int_distribution<std::uint64_t>(0, den - 1)(rng) < num;
}

/// G(n, p) with p = percent/100.
inline Graph random_graph(std::size_t n, unsigned percent, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng, percent, 100)) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return Graph::from_edges(n, edges);
}

/// Random subcubic tree with n leaves: start from one edge, then repeatedly
/// subdivide a random edge and hang a new leaf off the subdivision node.
/// Vertices are assigned to leaves by a random permutation.
inline DecompositionTree random_decomposition(std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw InvalidArgument("empty graph");
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  DecompositionTree dec;
  if (n == 1) {
    dec.num_nodes = 1;
    dec.leaf_vertex = {perm[0]};
    return dec;
  }
  std::vector<TreeEdge> edges = {{0, 1}};
  std::vector<Vertex> label = {perm[0], perm[1]};
  for (std::size_t i = 2; i < n; ++i) {
    auto e = std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng);
    auto [a, b] = edges[e];
    auto mid = static_cast<TreeNode>(label.size());
    label.push_back(-1);
    auto leaf = static_cast<TreeNode>(label.size());
    label.push_back(perm[i]);
    edges[e] = {a, mid};
    edges.push_back({mid, b});
    edges.push_back({mid, leaf});
  }
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
  dec.num_nodes = label.size();
  dec.edges = std::move(edges);
  dec.leaf_vertex = std::move(label);
  return dec;
}

struct IntervalGraph {
  Graph graph;
  std::vector<Interval> intervals;
};

/// n intervals whose 2n endpoints are a random permutation of 1..2n, paired
/// up in order; the graph is their intersection graph.
inline IntervalGraph gen_random_interval(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<int> points(2 * n);
  std::iota(points.begin(), points.end(), 1);
  std::shuffle(points.begin(), points.end(), rng);
  IntervalGraph out;
  for (std::size_t v = 0; v < n; ++v) {
    int a = points[2 * v], b = points[2 * v + 1];
    out.intervals.push_back(Interval{std::min(a, b), std::max(a, b)});
  }
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (intervals_intersect(out.intervals[u], out.intervals[v])) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  out.graph = Graph::from_edges(n, edges);
  return out;
}

/// k classes of size p and independent edges between classes with
/// probability percent/100. No edges inside a class.
inline PartitionedGraph random_partitioned(std::size_t k, std::size_t p, unsigned percent, std::mt19937_64& rng) {
  PartitionedGraph pg;
  const std::size_t n = k * p;
  pg.classes.assign(k, {});
  for (std::size_t v = 0; v < n; ++v) pg.classes[v / p].push_back(static_cast<Vertex>(v));
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (u / p != v / p && coin(rng, percent, 100)) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  pg.graph = Graph::from_edges(n, edges);
  return pg;
}

}  // namespace mimdp
