#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "midlayer/exact.hpp"

namespace midlayer {

inline constexpr int kMaxUrsellVertices = 7;

// Small undirected simple graph on vertices 0..n-1, adjacency as bit rows.
class SimpleGraph {
 public:
  explicit SimpleGraph(int n);
  static SimpleGraph complete(int n);
  static SimpleGraph path(int n);
  static SimpleGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int size() const { return n_; }
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const { return (rows_[u] >> v) & 1u; }
  std::uint32_t row(int u) const { return rows_[u]; }
  std::vector<std::pair<int, int>> edges() const;
  bool connected() const;
  // Relabel: vertex i of the result is vertex perm[i] of this graph.
  SimpleGraph permuted(const std::vector<int>& perm) const;
  // Upper-triangle adjacency bits; identifies the labelled graph.
  std::uint64_t key() const;

 private:
  int n_;
  std::vector<std::uint32_t> rows_;
};

// φ(H) = (1/|V|!) Σ_{F connected spanning subgraph} (-1)^{|E(F)|}, by
// exhaustive summation over edge subsets. Throws ResourceError when
// |V| > max_vertices. Memoized per thread on the labelled graph.
Rational ursell(const SimpleGraph& h, int max_vertices = kMaxUrsellVertices);

}  // namespace midlayer
