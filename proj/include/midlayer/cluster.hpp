#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "midlayer/exact.hpp"
#include "midlayer/partition_function.hpp"
#include "midlayer/ursell.hpp"

namespace midlayer {

struct ClusterLimits {
  std::size_t max_k = 8;
  // Cap on multisets examined per series term.
  std::size_t max_multisets = 50'000'000;
  int max_ursell_vertices = kMaxUrsellVertices;
};

// One unordered multiset standing for all of its orderings. `polymers` holds
// model indices in non-decreasing order; `contribution` is
// orderings * φ(H) * prod ω.
struct Cluster {
  std::vector<std::size_t> polymers;
  std::size_t size = 0;
  BigInt orderings;
  Rational ursell;
  Rational contribution;

  // Polymer sizes joined by '+', e.g. "1+1".
  std::string shape(const PolymerModel& model) const;
};

// Incompatibility graph of a multiset: one vertex per entry, repeated
// polymers mutually adjacent.
SimpleGraph incompatibility_graph(const PolymerModel& model,
                                  const std::vector<std::size_t>& multiset);

// Every cluster of total size k over the model's polymers.
std::vector<Cluster> enumerate_clusters(const PolymerModel& model, std::size_t k,
                                        const ClusterLimits& limits = {});

struct SeriesTerm {
  std::size_t k = 0;
  Rational value;
  // Ordered clusters, i.e. the sum of orderings.
  BigInt cluster_count;
  std::size_t multiset_count = 0;
  // Ordered cluster count per shape.
  std::map<std::string, BigInt> ordered_by_shape;
};

// L(k) over the model's polymers; parallel over anchor polymers.
SeriesTerm series_term(const PolymerModel& model, std::size_t k,
                       const ClusterLimits& limits = {});
SeriesTerm series_term_serial(const PolymerModel& model, std::size_t k,
                              const ClusterLimits& limits = {});

// Builds the model with max_size capped at k first.
SeriesTerm series_term(const MidLayerGraph& g, const PolymerParams& params,
                       const PrincipalPartition& p, std::size_t k,
                       const ClusterLimits& limits = {});

}  // namespace midlayer
