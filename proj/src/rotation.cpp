#include "midlayer/rotation.hpp"

#include <bit>
#include <optional>
#include <string>

#include "midlayer/errors.hpp"

namespace midlayer {

RotatedView::RotatedView(const MidLayerGraph& g)
    : g_(&g),
      rotation_mask_((1u << (g.d() - 1)) - 1u),
      last_bit_(1u << (g.n() - 1)) {
  for (Vertex v = 0; v < g.size(); ++v) {
    if (in_v_star(v)) v_star_.push_back(v);
  }
}

int RotatedView::rotated_weight(Vertex v) const { return std::popcount(rotated(v)); }

int RotatedView::level(Vertex v) const { return std::popcount(rotated(v) & (last_bit_ - 1u)); }

int RotatedView::half(Vertex v) const { return (rotated(v) & last_bit_) ? 1 : 0; }

bool RotatedView::in_v_star(Vertex v) const { return half(v) == 0 && level(v) % 2 == 0; }

VertexSet RotatedView::level_set(int lvl, int h) const {
  VertexSet out;
  for (Vertex v = 0; v < g_->size(); ++v) {
    if (level(v) == lvl && half(v) == h) out.push_back(v);
  }
  return out;
}

Vertex RotatedView::mate(Vertex v) const {
  if (!in_v_star(v)) {
    throw ParameterError("mate is defined only on V* (even level, last coordinate 0); vertex " +
                         std::to_string(v) + " has level " + std::to_string(level(v)) +
                         " in V" + std::to_string(half(v)));
  }
  const auto partner = g_->index_of(g_->mask(v) ^ last_bit_);
  if (!partner) throw ConsistencyError("even-level V0 vertex without a mate");
  return *partner;
}

RotatedView::WAssociation RotatedView::associate_w(Vertex v) const {
  if (!in_v_star(v)) throw ParameterError("associate_w requires v in V*");
  const int start = rotated_weight(v);
  if (start < 4) {
    throw ParameterError("w(v) is not defined for |v| = " + std::to_string(start) + " < 4");
  }
  // Depth-first over strictly descending paths in V0; neighbors are visited
  // in index order, so the first path to each endpoint is its smallest.
  std::optional<WAssociation> best;
  std::array<Vertex, 5> path{};
  path[0] = v;
  const auto descend = [&](auto&& self, int depth) -> void {
    const Vertex here = path[static_cast<std::size_t>(depth)];
    if (depth == 4) {
      if (in_v_star(here) && (!best || here < best->w)) best = WAssociation{here, path};
      return;
    }
    for (Vertex next : g_->neighbors(here)) {
      if (half(next) != 0 || rotated_weight(next) != rotated_weight(here) - 1) continue;
      path[static_cast<std::size_t>(depth) + 1] = next;
      self(self, depth + 1);
    }
  };
  descend(descend, 0);
  if (!best) throw ConsistencyError("no length-4 descending path from a V* vertex");
  return *best;
}

}  // namespace midlayer
