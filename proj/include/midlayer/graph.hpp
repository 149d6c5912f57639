#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace midlayer {

using Vertex = std::uint32_t;
// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<Vertex>;

// Explicit support caps. build_graph rejects d outside [2, max_structure_d];
// exhaustive workloads check max_enumeration_d themselves.
struct GraphLimits {
  int max_structure_d = 8;
  int max_enumeration_d = 3;
};

inline constexpr GraphLimits kDefaultGraphLimits{};

// The middle two layers B_d of Q_n, n = 2d - 1. Vertices are n-bit masks;
// bit i is coordinate i + 1. Indices are layer-sorted: every vertex of
// weight d - 1 precedes every vertex of weight d, and within a layer the
// order is lexicographic on the coordinate string (x_1, ..., x_n).
// Immutable after construction.
class MidLayerGraph {
 public:
  explicit MidLayerGraph(int d, const GraphLimits& limits = kDefaultGraphLimits);

  int d() const { return d_; }
  int n() const { return n_; }
  std::size_t size() const { return masks_.size(); }
  std::size_t layer_size() const { return masks_.size() / 2; }
  std::size_t edge_count() const { return size() * static_cast<std::size_t>(d_) / 2; }

  std::uint32_t mask(Vertex v) const { return masks_[v]; }
  int weight(Vertex v) const;
  // True for L_d, false for L_{d-1}.
  bool in_upper_layer(Vertex v) const { return v >= layer_size(); }
  std::optional<Vertex> index_of(std::uint32_t mask) const;

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + static_cast<std::size_t>(v) * d_, static_cast<std::size_t>(d_)};
  }
  bool adjacent(Vertex u, Vertex v) const;
  // Graph distance; equals the Hamming distance of the masks.
  int distance(Vertex u, Vertex v) const;

  VertexSet lower_layer() const;
  VertexSet upper_layer() const;
  VertexSet all_vertices() const;

 private:
  int d_;
  int n_;
  std::vector<std::uint32_t> masks_;
  std::vector<Vertex> adjacency_;
  std::vector<std::int32_t> index_by_mask_;
};

MidLayerGraph build_graph(int d, const GraphLimits& limits = kDefaultGraphLimits);

VertexSet make_vertex_set(std::vector<Vertex> vertices);
bool contains(const VertexSet& set, Vertex v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);

// N(X): vertices adjacent to some member of X.
VertexSet neighborhood(const MidLayerGraph& g, const VertexSet& x);
// N(X) \ X.
VertexSet outer_boundary(const MidLayerGraph& g, const VertexSet& x);
// X ∪ N(X).
VertexSet closed_neighborhood(const MidLayerGraph& g, const VertexSet& x);

// Maximal subsets of X connected in G^k (k = 2 gives 2-linked components),
// each sorted, listed by smallest member.
std::vector<VertexSet> linked_components(const MidLayerGraph& g, const VertexSet& x, int k);
std::vector<VertexSet> two_linked_components(const MidLayerGraph& g, const VertexSet& x);
bool is_two_linked(const MidLayerGraph& g, const VertexSet& x);
bool is_k_linked(const MidLayerGraph& g, const VertexSet& x, int k);

enum class Layer { Lower, Upper, Empty, Mixed };
Layer layer_of(const MidLayerGraph& g, const VertexSet& x);

// [X] = {v in X's layer : N(v) ⊆ N(X)}. X must lie in one layer.
VertexSet closure(const MidLayerGraph& g, const VertexSet& x);
// [X]^- = {u : N(u) ⊆ [X]}.
VertexSet closure_minus(const MidLayerGraph& g, const VertexSet& x);

}  // namespace midlayer
