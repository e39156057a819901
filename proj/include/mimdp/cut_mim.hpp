#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mimdp/decomposition.hpp"
#include "mimdp/error.hpp"
#include "mimdp/graph.hpp"
#include "mimdp/vertex_set.hpp"

namespace mimdp {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Crossing edges (a, b) with a in A and b outside A, in lexicographic order.
inline std::vector<Edge> crossing_edges(const Graph& g, const VertexSet& side) {
  std::vector<Edge> out;
  side.for_each([&](Vertex a) {
    for (Vertex b : g.neighbor_list(a))
      if (!side.contains(b)) out.emplace_back(a, b);
  });
  return out;
}

/// Two crossing edges can share an induced matching across the cut iff they
/// are disjoint and neither of the two "diagonal" pairs is a graph edge.
inline bool induced_compatible(const Graph& g, Edge e, Edge f) {
  return e.first != f.first && e.second != f.second && !g.adjacent(e.first, f.second) && !g.adjacent(f.first, e.second);
}

namespace detail {

/// Maximum clique in the compatibility graph of crossing edges, with greedy
/// colouring bounds. Counts expanded nodes against `budget`.
class InducedMatchingSearch {
 public:
  InducedMatchingSearch(const Graph& g, std::vector<Edge> edges, std::uint64_t budget) : budget_(budget) {
    const std::size_t k = edges.size();
    // Sort by compatibility degree, densest first.
    std::vector<std::vector<char>> compat(k, std::vector<char>(k, 0));
    std::vector<std::size_t> degree(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (induced_compatible(g, edges[i], edges[j])) {
          compat[i][j] = compat[j][i] = 1;
          ++degree[i];
          ++degree[j];
        }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
    rows_.assign(k, VertexSet(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (compat[order[i]][order[j]]) rows_[i].insert(static_cast<Vertex>(j));
    k_ = k;
  }

  std::size_t run() {
    if (k_ == 0) return 0;
    best_ = greedy_lower_bound();
    expand(0, VertexSet::full(k_));
    return best_;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::size_t greedy_lower_bound() const {
    VertexSet cand = VertexSet::full(k_);
    std::size_t size = 0;
    while (!cand.empty()) {
      Vertex pick = cand.first();
      ++size;
      cand &= rows_[pick];
    }
    return size;
  }

  void expand(std::size_t depth, VertexSet cand) {
    if (++nodes_ > budget_)
      throw BudgetExceeded("cut-mim search exceeded node budget of " + std::to_string(budget_));
    if (depth + cand.size() <= best_) return;
    std::vector<Vertex> order;
    std::vector<std::size_t> colour;
    colour_sort(cand, order, colour);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (depth + colour[i] <= best_) return;
      Vertex v = order[i];
      VertexSet next = cand & rows_[v];
      if (next.empty()) {
        best_ = std::max(best_, depth + 1);
      } else {
        expand(depth + 1, std::move(next));
      }
      cand.erase(v);
    }
  }

  // Greedy sequential colouring; colour[i] bounds the clique size within order[0..i].
  void colour_sort(const VertexSet& cand, std::vector<Vertex>& order, std::vector<std::size_t>& colour) const {
    VertexSet uncoloured = cand;
    std::size_t c = 0;
    while (!uncoloured.empty()) {
      ++c;
      VertexSet q = uncoloured;
      while (!q.empty()) {
        Vertex v = q.first();
        q.erase(v);
        q -= rows_[v];
        uncoloured.erase(v);
        order.push_back(v);
        colour.push_back(c);
      }
    }
  }

  std::vector<VertexSet> rows_;
  std::size_t k_ = 0;
  std::size_t best_ = 0;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Exact maximum induced matching across the cut (A, V \ A), counting only
/// edges that cross. Throws BudgetExceeded instead of returning a guess.
inline std::size_t cut_mim(const Graph& g, const VertexSet& side, std::uint64_t node_budget = kDefaultNodeBudget) {
  if (side.universe() != g.n()) throw InvalidArgument("cut side has wrong universe");
  detail::InducedMatchingSearch search(g, crossing_edges(g, side), node_budget);
  return search.run();
}

struct CutEntry {
  TreeEdge edge;
  VertexSet side;
  std::size_t cutmim = 0;
};

struct CutReport {
  std::vector<CutEntry> cuts;
  std::size_t mimw = 0;
};

/// cutmim of every tree edge and their maximum. Cuts are evaluated on up to
/// `threads` workers; the report does not depend on scheduling.
inline CutReport mimw_of_dec(const Graph& g, const DecompositionTree& dec, std::uint64_t node_budget = kDefaultNodeBudget,
                             unsigned threads = 1) {
  validate(dec, g);
  CutReport report;
  for (const auto& e : dec.edges) report.cuts.push_back(CutEntry{e, cut_of_edge(dec, g.n(), e).first, 0});
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < report.cuts.size(); i += stride) report.cuts[i].cutmim = cut_mim(g, report.cuts[i].side, node_budget);
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < threads; ++t) jobs.push_back(std::async(std::launch::async, work, t, threads));
    for (auto& j : jobs) j.get();
  }
  for (const auto& c : report.cuts) report.mimw = std::max(report.mimw, c.cutmim);
  return report;
}

struct LinearWidth {
  std::size_t width = 0;
  std::vector<Vertex> order;
  DecompositionTree dec;
};

inline constexpr std::size_t kMaxOptimalLinearVertices = 9;

/// Exact linear mim-width by searching all vertex orders, pruning any prefix
/// whose running maximum already reaches the incumbent.
inline LinearWidth optimal_linear_mimw(const Graph& g, std::uint64_t node_budget = kDefaultNodeBudget) {
  const std::size_t n = g.n();
  if (n == 0) throw InvalidArgument("empty graph");
  if (n > kMaxOptimalLinearVertices)
    throw InvalidArgument("optimal linear mim-width search supports n <= " + std::to_string(kMaxOptimalLinearVertices));
  // Pendant edges of a caterpillar cut off single vertices.
  std::size_t floor = 0;
  if (n >= 2)
    for (std::size_t v = 0; v < n; ++v)
      if (g.degree(static_cast<Vertex>(v)) > 0) floor = 1;

  std::unordered_map<std::uint32_t, std::size_t> memo;
  auto prefix_value = [&](std::uint32_t mask) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    VertexSet side(n);
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1u) side.insert(static_cast<Vertex>(v));
    return memo[mask] = cut_mim(g, side, node_budget);
  };

  LinearWidth best;
  best.width = n + 1;
  std::vector<Vertex> current;
  std::vector<char> used(n, 0);
  auto dfs = [&](auto&& self, std::uint32_t mask, std::size_t running) -> void {
    if (running >= best.width) return;
    if (current.size() == n) {
      best.width = running;
      best.order = current;
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      std::uint32_t next = mask | (1u << v);
      std::size_t value = current.size() + 1 < n ? prefix_value(next) : 0;
      used[v] = 1;
      current.push_back(static_cast<Vertex>(v));
      self(self, next, std::max(running, value));
      current.pop_back();
      used[v] = 0;
      if (best.width == floor) return;
    }
  };
  dfs(dfs, 0u, floor);
  best.dec = caterpillar_from_order(best.order);
  return best;
}

}  // namespace mimdp
