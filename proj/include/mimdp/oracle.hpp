#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mimdp/error.hpp"
#include "mimdp/graph.hpp"
#include "mimdp/problem.hpp"
#include "mimdp/vertex_set.hpp"

// Brute-force references. Nothing here calls into the solver or the
// equivalence tables; set membership is re-derived from the raw SetSpec data.

namespace mimdp::oracle {

inline constexpr std::size_t kMaxSubsetVertices = 22;
inline constexpr std::uint64_t kMaxLabelings = 10'000'000;
inline constexpr std::size_t kMaxEdgeSubsetEdges = 24;

/// Exhaustive optimum over all vertex subsets or labelings.
struct OracleResult {
  bool feasible = false;
  std::size_t min_value = 0;
  std::size_t max_value = 0;
  /// Lowest-code witnesses attaining the minimum and maximum.
  std::uint64_t min_code = 0;
  std::uint64_t max_code = 0;
  std::uint64_t min_count = 0;
  std::uint64_t max_count = 0;
  /// size_feasible[k]: some feasible solution has objective value k.
  std::vector<bool> size_feasible;
};

/// Membership table for counts 0..limit, read straight off the element list.
inline std::vector<char> membership_table(const SetSpec& spec, std::size_t limit) {
  std::vector<char> in(limit + 1, spec.is_cofinite() ? 1 : 0);
  for (int e : spec.elems())
    if (static_cast<std::size_t>(e) <= limit) in[e] = spec.is_cofinite() ? 0 : 1;
  return in;
}

inline std::vector<std::uint32_t> adjacency_masks(const Graph& h) {
  std::vector<std::uint32_t> adj(h.n(), 0);
  for (auto [u, v] : h.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  return adj;
}

inline void record(OracleResult& res, std::size_t value, std::uint64_t code) {
  if (!res.feasible) {
    res.feasible = true;
    res.min_value = res.max_value = value;
    res.min_code = res.max_code = code;
    res.min_count = res.max_count = 1;
  } else {
    if (value < res.min_value) {
      res.min_value = value;
      res.min_code = code;
      res.min_count = 1;
    } else if (value == res.min_value) {
      ++res.min_count;
    }
    if (value > res.max_value) {
      res.max_value = value;
      res.max_code = code;
      res.max_count = 1;
    } else if (value == res.max_value) {
      ++res.max_count;
    }
  }
  res.size_feasible[value] = true;
}

/// All subsets of V(G^r) in increasing bitmask order, each checked with
/// exact neighbour counts.
inline OracleResult brute_sigma_rho(const Graph& g, const Problem& prob, int r = 1) {
  if (g.n() > kMaxSubsetVertices)
    throw InvalidArgument("subset oracle supports n <= " + std::to_string(kMaxSubsetVertices));
  const Graph h = graph_power(g, r);
  const std::size_t n = h.n();
  const auto adj = adjacency_masks(h);
  const auto in_sigma = membership_table(prob.sigma, n);
  const auto in_rho = membership_table(prob.rho, n);
  OracleResult res;
  res.size_feasible.assign(n + 1, false);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto s = static_cast<std::uint32_t>(mask);
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      auto count = static_cast<std::size_t>(std::popcount(adj[v] & s));
      ok = (s >> v & 1u) ? in_sigma[count] : in_rho[count];
    }
    if (ok) record(res, static_cast<std::size_t>(std::popcount(s)), mask);
  }
  return res;
}

inline VertexSet decode_subset(std::size_t n, std::uint64_t code) {
  VertexSet s(n);
  for (std::size_t v = 0; v < n; ++v)
    if (code >> v & 1u) s.insert(static_cast<Vertex>(v));
  return s;
}

/// Labels of a base-q code; vertex 0 is the least significant digit.
inline std::vector<int> decode_labeling(std::size_t n, std::size_t q, std::uint64_t code) {
  std::vector<int> labels(n);
  for (std::size_t v = 0; v < n; ++v) {
    labels[v] = static_cast<int>(code % q);
    code /= q;
  }
  return labels;
}

/// All q^n labelings of V(G^r) in base-q counting order. The objective value
/// is the size of class 1 (label 0).
inline OracleResult brute_lcvp(const Graph& g, const ConstraintMatrix& mat) {
  mat.validate();
  const Graph h = graph_power(g, mat.r);
  const std::size_t n = h.n(), q = mat.q();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= q;
    if (total > kMaxLabelings) throw InvalidArgument("labeling oracle supports q^n <= " + std::to_string(kMaxLabelings));
  }
  std::vector<std::vector<std::vector<char>>> in(q, std::vector<std::vector<char>>(q));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) in[i][j] = membership_table(mat.at(i, j), n);
  OracleResult res;
  res.size_feasible.assign(n + 1, false);
  std::vector<int> labels(n, 0);
  std::vector<std::size_t> count(q);
  for (std::uint64_t code = 0; code < total; ++code) {
    if (code) {
      for (std::size_t v = 0; v < n; ++v) {
        if (static_cast<std::size_t>(++labels[v]) < q) break;
        labels[v] = 0;
      }
    }
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      std::fill(count.begin(), count.end(), 0);
      for (Vertex u : h.neighbor_list(static_cast<Vertex>(v))) ++count[labels[u]];
      for (std::size_t j = 0; j < q && ok; ++j) ok = in[labels[v]][j][count[j]];
    }
    if (ok) record(res, static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 0)), code);
  }
  return res;
}

/// Exact cutmim. Up to kMaxEdgeSubsetEdges crossing edges it walks every
/// set of crossing edges that satisfies the induced-matching predicate;
/// beyond that it enumerates endpoint sets X on the smaller side and accepts
/// X when every x in X has a private crossing neighbour (adjacent to x and to
/// no other member of X), which is exactly an induced matching saturating X.
inline std::size_t brute_cut_mim(const Graph& g, const VertexSet& side) {
  std::vector<std::pair<Vertex, Vertex>> crossing;
  side.for_each([&](Vertex a) {
    for (Vertex b : g.neighbor_list(a))
      if (!side.contains(b)) crossing.emplace_back(a, b);
  });
  const std::size_t k = crossing.size();
  if (k <= kMaxEdgeSubsetEdges) {
    std::size_t best = 0;
    std::vector<std::size_t> chosen;
    auto fits = [&](std::size_t e) {
      for (std::size_t f : chosen) {
        auto [a1, b1] = crossing[e];
        auto [a2, b2] = crossing[f];
        if (a1 == a2 || b1 == b2 || g.adjacent(a1, b2) || g.adjacent(a2, b1)) return false;
      }
      return true;
    };
    auto walk = [&](auto&& self, std::size_t next) -> void {
      best = std::max(best, chosen.size());
      for (std::size_t e = next; e < k; ++e) {
        if (!fits(e)) continue;
        chosen.push_back(e);
        self(self, e + 1);
        chosen.pop_back();
      }
    };
    walk(walk, 0);
    return best;
  }
  const VertexSet other = side.complement();
  const VertexSet& small = side.size() <= other.size() ? side : other;
  const VertexSet& large = side.size() <= other.size() ? other : side;
  const auto members = small.members();
  if (members.size() > kMaxSubsetVertices) throw InvalidArgument("cut too large for the brute cutmim oracle");
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << members.size()); ++mask) {
    auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    VertexSet x(g.n());
    for (std::size_t i = 0; i < members.size(); ++i)
      if (mask >> i & 1u) x.insert(members[i]);
    bool ok = true;
    x.for_each([&](Vertex a) {
      if (!ok) return;
      bool private_found = false;
      large.for_each([&](Vertex b) {
        if (!private_found && g.adjacent(a, b) && g.neighbors(b).intersection_size(x) == 1) private_found = true;
      });
      ok = private_found;
    });
    if (ok) best = size;
  }
  return best;
}

enum class Multicolored { clique, independent_set };

/// One vertex per class, pairwise adjacent (clique) or pairwise non-adjacent.
/// Returns the chosen vertices, or nullopt.
inline std::optional<std::vector<Vertex>> brute_multicolored(const Graph& g, const std::vector<std::vector<Vertex>>& classes, Multicolored kind) {
  std::uint64_t combos = 1;
  for (const auto& c : classes) {
    if (c.empty()) return std::nullopt;
    combos *= c.size();
    if (combos > kMaxLabelings) throw InvalidArgument("too many multicolored candidates for the oracle");
  }
  std::vector<Vertex> pick(classes.size());
  for (std::uint64_t code = 0; code < combos; ++code) {
    std::uint64_t rest = code;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      pick[i] = classes[i][rest % classes[i].size()];
      rest /= classes[i].size();
    }
    bool ok = true;
    for (std::size_t i = 0; i < pick.size() && ok; ++i)
      for (std::size_t j = i + 1; j < pick.size() && ok; ++j)
        ok = g.adjacent(pick[i], pick[j]) == (kind == Multicolored::clique);
    if (ok) return pick;
  }
  return std::nullopt;
}

}  // namespace mimdp::oracle
