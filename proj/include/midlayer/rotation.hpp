#pragma once

#include <array>
#include <cstdint>

#include "midlayer/graph.hpp"

namespace midlayer {

// Rotated, leveled view of B_d: v^rot = v + (1^{d-1}, 0^d) mod 2. The level
// of v is the weight of the first n - 1 coordinates of v^rot; the halves
// V0/V1 split on the last coordinate. V* = even-level vertices of V0.
class RotatedView {
 public:
  struct WAssociation {
    Vertex w;
    // v, three intermediate vertices, w. Consecutive entries are adjacent
    // and every entry lies in V0.
    std::array<Vertex, 5> path;
  };

  explicit RotatedView(const MidLayerGraph& g);

  const MidLayerGraph& graph() const { return *g_; }

  std::uint32_t rotation_mask() const { return rotation_mask_; }
  std::uint32_t rotated(Vertex v) const { return g_->mask(v) ^ rotation_mask_; }
  // Weight of the rotated mask; equals level(v) on V0.
  int rotated_weight(Vertex v) const;
  int level(Vertex v) const;
  // 0 for V0, 1 for V1.
  int half(Vertex v) const;
  bool in_v_star(Vertex v) const;
  const VertexSet& v_star() const { return v_star_; }
  VertexSet level_set(int level, int half) const;

  // The vertex whose rotated form differs from v's only in the last
  // coordinate. Requires v ∈ V*.
  Vertex mate(Vertex v) const;

  // Smallest (by index of w, then by path) w ∈ V* with |w| = |v| - 4 that is
  // joined to v by a length-4 path inside V0. Requires v ∈ V*, |v| >= 4.
  WAssociation associate_w(Vertex v) const;

 private:
  const MidLayerGraph* g_;
  std::uint32_t rotation_mask_;
  std::uint32_t last_bit_;
  VertexSet v_star_;
};

}  // namespace midlayer
