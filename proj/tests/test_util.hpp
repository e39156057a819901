#pragma once

#include <random>
#include <vector>

#include "mimdp/mimdp.hpp"

namespace testutil {

using namespace mimdp;

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t v = 0; v + 1 < n; ++v) e.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(v + 1));
  return Graph::from_edges(n, e);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t v = 0; v < n; ++v) {
    auto a = static_cast<Vertex>(v), b = static_cast<Vertex>((v + 1) % n);
    e.emplace_back(std::min(a, b), std::max(a, b));
  }
  return Graph::from_edges(n, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return Graph::from_edges(n, e);
}

// Parts {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u < a; ++u)
    for (std::size_t v = 0; v < b; ++v) e.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(a + v));
  return Graph::from_edges(a + b, e);
}

inline std::vector<Vertex> identity_order(std::size_t n) {
  std::vector<Vertex> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = static_cast<Vertex>(v);
  return order;
}

inline VertexSet set_of(std::size_t n, std::initializer_list<Vertex> vs) { return VertexSet(n, vs); }

inline VertexSet random_subset(std::size_t n, std::mt19937_64& rng) {
  VertexSet s(n);
  for (std::size_t v = 0; v < n; ++v)
    if (coin(rng, 1, 2)) s.insert(static_cast<Vertex>(v));
  return s;
}

}  // namespace testutil
