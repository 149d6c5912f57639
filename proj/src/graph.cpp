#include "midlayer/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "midlayer/errors.hpp"

namespace midlayer {

namespace {

std::uint32_t reverse_bits(std::uint32_t mask, int width) {
  std::uint32_t out = 0;
  for (int i = 0; i < width; ++i) {
    if (mask & (1u << i)) out |= 1u << (width - 1 - i);
  }
  return out;
}

// Union-find over positions 0..size-1.
struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t size) : parent(size) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<VertexSet> collect_components(const VertexSet& x, DisjointSets& sets) {
  std::vector<VertexSet> components;
  std::vector<std::ptrdiff_t> slot(x.size(), -1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t root = sets.find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(components.size());
      components.emplace_back();
    }
    components[static_cast<std::size_t>(slot[root])].push_back(x[i]);
  }
  return components;
}

}  // namespace

MidLayerGraph::MidLayerGraph(int d, const GraphLimits& limits) : d_(d), n_(2 * d - 1) {
  if (d < 2 || d > limits.max_structure_d) {
    throw ParameterError("d must lie in [2, " + std::to_string(limits.max_structure_d) +
                         "], got " + std::to_string(d));
  }
  std::vector<std::uint32_t> lower;
  std::vector<std::uint32_t> upper;
  for (std::uint32_t mask = 0; mask < (1u << n_); ++mask) {
    const int w = std::popcount(mask);
    if (w == d_ - 1) lower.push_back(mask);
    if (w == d_) upper.push_back(mask);
  }
  const auto lexicographic = [this](std::uint32_t a, std::uint32_t b) {
    return reverse_bits(a, n_) < reverse_bits(b, n_);
  };
  std::sort(lower.begin(), lower.end(), lexicographic);
  std::sort(upper.begin(), upper.end(), lexicographic);
  masks_ = std::move(lower);
  masks_.insert(masks_.end(), upper.begin(), upper.end());

  index_by_mask_.assign(std::size_t{1} << n_, -1);
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    index_by_mask_[masks_[i]] = static_cast<std::int32_t>(i);
  }

  adjacency_.reserve(masks_.size() * static_cast<std::size_t>(d_));
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    std::vector<Vertex> row;
    for (int bit = 0; bit < n_; ++bit) {
      const std::int32_t j = index_by_mask_[masks_[i] ^ (1u << bit)];
      if (j >= 0) row.push_back(static_cast<Vertex>(j));
    }
    std::sort(row.begin(), row.end());
    adjacency_.insert(adjacency_.end(), row.begin(), row.end());
  }
}

int MidLayerGraph::weight(Vertex v) const { return std::popcount(masks_[v]); }

std::optional<Vertex> MidLayerGraph::index_of(std::uint32_t mask) const {
  if (mask >= index_by_mask_.size() || index_by_mask_[mask] < 0) return std::nullopt;
  return static_cast<Vertex>(index_by_mask_[mask]);
}

bool MidLayerGraph::adjacent(Vertex u, Vertex v) const { return distance(u, v) == 1; }

int MidLayerGraph::distance(Vertex u, Vertex v) const {
  return std::popcount(masks_[u] ^ masks_[v]);
}

VertexSet MidLayerGraph::lower_layer() const {
  VertexSet out(layer_size());
  std::iota(out.begin(), out.end(), Vertex{0});
  return out;
}

VertexSet MidLayerGraph::upper_layer() const {
  VertexSet out(layer_size());
  std::iota(out.begin(), out.end(), static_cast<Vertex>(layer_size()));
  return out;
}

VertexSet MidLayerGraph::all_vertices() const {
  VertexSet out(size());
  std::iota(out.begin(), out.end(), Vertex{0});
  return out;
}

MidLayerGraph build_graph(int d, const GraphLimits& limits) { return MidLayerGraph(d, limits); }

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

bool contains(const VertexSet& set, Vertex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VertexSet neighborhood(const MidLayerGraph& g, const VertexSet& x) {
  std::vector<Vertex> out;
  out.reserve(x.size() * static_cast<std::size_t>(g.d()));
  for (Vertex v : x) {
    const auto row = g.neighbors(v);
    out.insert(out.end(), row.begin(), row.end());
  }
  return make_vertex_set(std::move(out));
}

VertexSet outer_boundary(const MidLayerGraph& g, const VertexSet& x) {
  return set_difference(neighborhood(g, x), x);
}

VertexSet closed_neighborhood(const MidLayerGraph& g, const VertexSet& x) {
  return set_union(x, neighborhood(g, x));
}

std::vector<VertexSet> linked_components(const MidLayerGraph& g, const VertexSet& x, int k) {
  if (x.empty()) return {};
  DisjointSets sets(x.size());
  if (k == 2) {
    // Walk the radius-2 ball of each member instead of all pairs.
    std::vector<std::int64_t> position(g.size(), -1);
    for (std::size_t i = 0; i < x.size(); ++i) position[x[i]] = static_cast<std::int64_t>(i);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (Vertex u : g.neighbors(x[i])) {
        if (position[u] >= 0) sets.unite(i, static_cast<std::size_t>(position[u]));
        for (Vertex w : g.neighbors(u)) {
          if (position[w] >= 0) sets.unite(i, static_cast<std::size_t>(position[w]));
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        if (g.distance(x[i], x[j]) <= k) sets.unite(i, j);
      }
    }
  }
  return collect_components(x, sets);
}

std::vector<VertexSet> two_linked_components(const MidLayerGraph& g, const VertexSet& x) {
  return linked_components(g, x, 2);
}

bool is_two_linked(const MidLayerGraph& g, const VertexSet& x) {
  return two_linked_components(g, x).size() <= 1;
}

bool is_k_linked(const MidLayerGraph& g, const VertexSet& x, int k) {
  return linked_components(g, x, k).size() <= 1;
}

Layer layer_of(const MidLayerGraph& g, const VertexSet& x) {
  if (x.empty()) return Layer::Empty;
  const bool first = g.in_upper_layer(x.front());
  const bool last = g.in_upper_layer(x.back());
  if (first != last) return Layer::Mixed;
  return first ? Layer::Upper : Layer::Lower;
}

VertexSet closure(const MidLayerGraph& g, const VertexSet& x) {
  const Layer layer = layer_of(g, x);
  if (layer == Layer::Mixed) throw ParameterError("closure requires a single-layer set");
  if (layer == Layer::Empty) return {};
  const VertexSet nx = neighborhood(g, x);
  std::vector<char> in_nx(g.size(), 0);
  for (Vertex v : nx) in_nx[v] = 1;
  const VertexSet candidates = layer == Layer::Upper ? g.upper_layer() : g.lower_layer();
  VertexSet out;
  for (Vertex v : candidates) {
    const auto row = g.neighbors(v);
    if (std::all_of(row.begin(), row.end(), [&](Vertex u) { return in_nx[u] != 0; })) {
      out.push_back(v);
    }
  }
  return out;
}

VertexSet closure_minus(const MidLayerGraph& g, const VertexSet& x) {
  const VertexSet closed = closure(g, x);
  if (closed.empty()) return {};
  std::vector<char> in_closed(g.size(), 0);
  for (Vertex v : closed) in_closed[v] = 1;
  const VertexSet candidates = g.in_upper_layer(closed.front()) ? g.lower_layer() : g.upper_layer();
  VertexSet out;
  for (Vertex u : candidates) {
    const auto row = g.neighbors(u);
    if (std::all_of(row.begin(), row.end(), [&](Vertex w) { return in_closed[w] != 0; })) {
      out.push_back(u);
    }
  }
  return out;
}

}  // namespace midlayer
