#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "midlayer/graph.hpp"
#include "oracles.hpp"

namespace testing_support {

inline oracle::Set masks_of(const midlayer::MidLayerGraph& g, const midlayer::VertexSet& x) {
  oracle::Set out;
  for (auto v : x) out.push_back(g.mask(v));
  std::sort(out.begin(), out.end());
  return out;
}

inline midlayer::VertexSet indices_of(const midlayer::MidLayerGraph& g, const oracle::Set& x) {
  std::vector<midlayer::Vertex> out;
  for (auto m : x) out.push_back(*g.index_of(m));
  return midlayer::make_vertex_set(std::move(out));
}

// Uniform random subset of `pool` with the given size.
inline midlayer::VertexSet random_subset(std::mt19937_64& rng, const midlayer::VertexSet& pool,
                                         std::size_t size) {
  midlayer::VertexSet copy = pool;
  std::shuffle(copy.begin(), copy.end(), rng);
  copy.resize(std::min(size, copy.size()));
  std::sort(copy.begin(), copy.end());
  return copy;
}

// Random 2-linked set grown from a random seed vertex.
inline midlayer::VertexSet random_two_linked(std::mt19937_64& rng, const midlayer::MidLayerGraph& g,
                                             std::size_t size) {
  std::vector<midlayer::Vertex> x{static_cast<midlayer::Vertex>(rng() % g.size())};
  while (x.size() < size) {
    std::vector<midlayer::Vertex> frontier;
    for (midlayer::Vertex v = 0; v < g.size(); ++v) {
      if (std::find(x.begin(), x.end(), v) != x.end()) continue;
      for (auto u : x)
        if (g.distance(u, v) <= 2) {
          frontier.push_back(v);
          break;
        }
    }
    if (frontier.empty()) break;
    x.push_back(frontier[rng() % frontier.size()]);
  }
  return midlayer::make_vertex_set(std::move(x));
}

}  // namespace testing_support
