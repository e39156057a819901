#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "mimdp/error.hpp"
#include "mimdp/graph.hpp"
#include "mimdp/vertex_set.hpp"

namespace mimdp {

inline constexpr std::size_t kDefaultClassCap = 1'000'000;
inline constexpr int kMaxTruncation = 250;

/// For a cut side A and a set S inside A: byte i is min(d, |N(u_i) ∩ S|)
/// for the i-th vertex u_i outside A in ascending order. Doubles as the hash
/// key deciding d-neighborhood equivalence.
using NeighborhoodVector = std::string;

inline NeighborhoodVector neighborhood_vector(const Graph& g, const std::vector<Vertex>& outside, const VertexSet& subset, int d) {
  NeighborhoodVector key(outside.size(), '\0');
  for (std::size_t i = 0; i < outside.size(); ++i)
    key[i] = static_cast<char>(std::min<std::size_t>(static_cast<std::size_t>(d), g.neighbors(outside[i]).intersection_size(subset)));
  return key;
}

inline NeighborhoodVector neighborhood_vector(const Graph& g, const VertexSet& side, const VertexSet& subset, int d) {
  if (!subset.is_subset_of(side)) throw InvalidArgument("subset is not contained in the cut side");
  if (d < 0) throw InvalidArgument("truncation level must be >= 0");
  return neighborhood_vector(g, side.complement().members(), subset, d);
}

/// The d-neighborhood equivalence classes of subsets of one cut side, each
/// with a concrete representative set.
class EquivClassTable {
 public:
  const VertexSet& side() const noexcept { return side_; }
  const std::vector<Vertex>& outside() const noexcept { return outside_; }
  int d() const noexcept { return d_; }
  std::size_t size() const noexcept { return reps_.size(); }

  const VertexSet& representative(std::size_t id) const { return reps_.at(id); }
  const NeighborhoodVector& vector_of(std::size_t id) const { return vectors_.at(id); }

  /// Class id of an arbitrary subset of the side.
  std::size_t class_of(const VertexSet& subset) const {
    return lookup(neighborhood_vector(*graph_, outside_, subset, d_));
  }

  /// Class id of a vector; throws if no class has it.
  std::size_t lookup(const NeighborhoodVector& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw Error("internal error: neighborhood vector has no class");
    return it->second;
  }

  /// Class of X ∪ {v} for any X in class `id` with v in the side but not in X.
  std::size_t extend(std::size_t id, Vertex v) const {
    NeighborhoodVector key = vectors_.at(id);
    for (std::size_t i = 0; i < outside_.size(); ++i)
      if (graph_->adjacent(outside_[i], v) && key[i] < d_) ++key[i];
    return lookup(key);
  }

  friend EquivClassTable enumerate_classes(const Graph& g, const VertexSet& side, int d, std::size_t class_cap);

 private:
  const Graph* graph_ = nullptr;
  VertexSet side_;
  std::vector<Vertex> outside_;
  int d_ = 0;
  std::vector<VertexSet> reps_;
  std::vector<NeighborhoodVector> vectors_;
  std::unordered_map<NeighborhoodVector, std::size_t> index_;
};

/// Breadth-first closure from the empty set: every representative is extended
/// by each vertex of the side it lacks, and kept iff its vector is new. Class
/// ids follow discovery order, so the empty set is always class 0. The table
/// keeps a pointer to `g`, which must outlive it.
inline EquivClassTable enumerate_classes(const Graph& g, const VertexSet& side, int d, std::size_t class_cap = kDefaultClassCap) {
  if (d < 0) throw InvalidArgument("truncation level must be >= 0");
  if (d > kMaxTruncation) throw InvalidArgument("truncation level too large");
  if (side.universe() != g.n()) throw InvalidArgument("cut side has wrong universe");
  EquivClassTable t;
  t.graph_ = &g;
  t.side_ = side;
  t.outside_ = side.complement().members();
  t.d_ = d;
  const std::vector<Vertex> members = side.members();
  auto add = [&](VertexSet rep, NeighborhoodVector key) {
    if (t.reps_.size() >= class_cap)
      throw BudgetExceeded("equivalence class count exceeded cap of " + std::to_string(class_cap));
    t.index_.emplace(key, t.reps_.size());
    t.reps_.push_back(std::move(rep));
    t.vectors_.push_back(std::move(key));
  };
  VertexSet empty(g.n());
  add(empty, neighborhood_vector(g, t.outside_, empty, d));
  for (std::size_t i = 0; i < t.reps_.size(); ++i) {
    for (Vertex v : members) {
      if (t.reps_[i].contains(v)) continue;
      NeighborhoodVector key = t.vectors_[i];
      for (std::size_t j = 0; j < t.outside_.size(); ++j)
        if (g.adjacent(t.outside_[j], v) && key[j] < d) ++key[j];
      if (t.index_.contains(key)) continue;
      VertexSet rep = t.reps_[i];
      rep.insert(v);
      add(std::move(rep), std::move(key));
    }
  }
  return t;
}

}  // namespace mimdp
