#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "midlayer/coloring.hpp"
#include "midlayer/exact.hpp"
#include "midlayer/graph.hpp"

namespace midlayer {

// Feasibility envelope for exact counting. Guaranteed: d <= 3, q <= 6.
struct CountLimits {
  // Upper bound on frontier-DP states (and layer-sum canonical colorings).
  double max_states = 4.0e6;
  // Full enumeration of colorings is limited to this d.
  int max_enumeration_d = 2;
};

inline constexpr CountLimits kDefaultCountLimits{};

// Vertex order for the frontier DP: breadth-first from vertex 0, neighbors
// in index order.
struct EliminationPlan {
  std::vector<Vertex> order;
  std::size_t max_frontier = 0;
  // Upper bound on live DP states: max over steps of sum_{j<=q} S(w, j).
  double state_estimate = 0.0;
};

EliminationPlan plan_elimination(const MidLayerGraph& g, int q);

// c_q(B_d) by frontier dynamic programming. Frontier states are color
// patterns up to relabeling, so a state with k distinct colors stands for
// q(q-1)...(q-k+1) concrete assignments.
BigInt count_colorings_exact(const MidLayerGraph& g, int q,
                             const CountLimits& limits = kDefaultCountLimits);

// Independent count: sum over colorings of L_{d-1} (up to relabeling) of
// prod_{u in L_d} (q - #distinct colors on N(u)). Parallel over prefixes.
BigInt count_colorings_layer_sum(const MidLayerGraph& g, int q,
                                 const CountLimits& limits = kDefaultCountLimits);
BigInt count_colorings_layer_sum_serial(const MidLayerGraph& g, int q,
                                        const CountLimits& limits = kDefaultCountLimits);

// Every proper q-coloring, in lexicographic order of the color vector.
// Parallel over the colors of the first two vertices.
std::vector<Coloring> brute_enumerate(const MidLayerGraph& g, int q,
                                      const CountLimits& limits = kDefaultCountLimits);
std::vector<Coloring> brute_enumerate_serial(const MidLayerGraph& g, int q,
                                             const CountLimits& limits = kDefaultCountLimits);

// Desk-scale structure census over all colorings (d <= max_enumeration_d).
struct StructureCensus {
  BigInt total;
  int threshold = 0;
  // Colorings with a principal partition whose flaw components all have
  // size < threshold.
  BigInt typical;
  Rational typical_fraction;
  // For each partition: flaw-set classes and their sizes. Their sum must be
  // `total` for every partition.
  std::vector<std::map<VertexSet, BigInt>> flaw_classes;
  bool bookkeeping_holds = false;
};

StructureCensus structure_census(const MidLayerGraph& g, int q,
                                 const CountLimits& limits = kDefaultCountLimits);

}  // namespace midlayer
