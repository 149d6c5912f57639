#pragma once

#include <cstddef>
#include <cstdint>

#include "midlayer/graph.hpp"

namespace midlayer {

// Real-argument binomial x(x-1)...(x-k+1)/k!.
long double real_binomial(long double x, int k);

// Lovász form of Kruskal–Katona: solves C(x, d) = m for real x >= d by
// bisection (relative tolerance 1e-12 on x) and returns C(x, d - 1), a lower
// bound on the neighborhood of m vertices of one layer of B_d.
long double lovasz_bound(std::uint64_t m, int d);

struct IsoperimetryReport {
  std::size_t set_size = 0;
  std::size_t neighborhood_size = 0;
  long double lovasz = 0;
  // |N(X)| >= d|X| - |X|^2/2, proved for |X| <= d/4.
  bool small_clause_applies = false;
  bool small_clause_holds = false;
  // |N(X)| >= d|X|/12, proved for |X| <= d^10.
  bool linear_clause_applies = false;
  bool linear_clause_holds = false;
  bool lovasz_holds = false;
};

// X must lie in one layer. Clauses are evaluated regardless of whether their
// hypothesis applies; a violation outside the hypothesis range is reported,
// not raised.
IsoperimetryReport isoperimetry_check(const MidLayerGraph& g, const VertexSet& x,
                                      long double tolerance = 1e-9L);

// Every single-layer X with 1 <= |X| <= max_size, both layers.
struct IsoperimetrySweep {
  std::size_t max_size = 0;
  std::size_t instances = 0;
  std::size_t small_clause_failures = 0;
  std::size_t linear_clause_failures = 0;
  std::size_t lovasz_failures = 0;
  // min over instances of |N(X)| - lovasz bound.
  long double min_lovasz_slack = 0;
};

IsoperimetrySweep isoperimetry_sweep(const MidLayerGraph& g, std::size_t max_size,
                                     long double tolerance = 1e-9L);

}  // namespace midlayer
