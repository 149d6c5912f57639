#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "midlayer/graph.hpp"

namespace midlayer {

// Bipartite instance for the greedy set-cover bound: Q-side vertices list their
// P-side neighbors. a is the claimed minimum degree on P, b the claimed
// maximum degree on Q.
struct BipartiteInstance {
  std::size_t p_count = 0;
  std::vector<std::vector<std::size_t>> q_neighbors;
  int a = 1;
  int b = 1;
};

struct CoverReport {
  std::vector<std::size_t> chosen;  // Q indices, in selection order
  double bound = 0.0;               // (|Q|/a)(1 + ln b)
  bool covers = false;
  bool within_bound = false;
};

// Greedy max-coverage with lowest-index tie-break. Throws ValidationError
// when the degree claims are false, ConsistencyError if the bound fails.
CoverReport greedy_cover(const BipartiteInstance& instance);

struct MutualCoverReport {
  VertexSet cover;
  double bound = 0.0;  // (|N(X)|/d)(1 + ln d)
  bool covers_x = false;       // X ⊆ N(Y)
  bool inside_boundary = false;  // Y ⊆ N(X)
  bool within_bound = false;
};

// Per layer: greedy cover of X_i by N(X_i), then drop redundant members.
MutualCoverReport mutual_cover(const MidLayerGraph& g, const VertexSet& x);

struct ApproxPair {
  VertexSet f;
  VertexSet s;
  int psi = 0;
};

struct PairConditions {
  bool approx1 = false;  // F ⊆ N(X), S ⊇ X
  bool approx2 = false;  // d_{V∖F}(u) <= ψ on S
  bool approx3 = false;  // d_S(v) <= ψ off F
  bool all() const { return approx1 && approx2 && approx3; }
};

struct LayerPairReport {
  // X_i, F_i, S_i: X_1 = X ∩ L_{d-1} with F_1 = F ∩ L_d, S_1 = S ∩ L_{d-1};
  // layer 2 symmetric.
  VertexSet x;
  VertexSet f;
  VertexSet s;
  PairConditions conditions;
  std::size_t boundary = 0;  // |N(X_i)|
  // |S_i| <= |F_i| + 2|N(X_i)|ψ/(d-ψ), checked exactly.
  bool gap_holds = false;
};

struct ApproxPairReport {
  PairConditions conditions;
  LayerPairReport layers[2];
  bool valid() const;
};

// Throws ParameterError when ψ > d/2 or ψ < 0.
ApproxPairReport verify_approx_pair(const MidLayerGraph& g, const VertexSet& x,
                                    const ApproxPair& pair);

struct ApproxPairResult {
  bool success = false;
  ApproxPair pair;
  std::size_t iterations = 0;
  std::string failure;
  ApproxPairReport report;
};

// Fixed point from F = N(X), S = X: batch-grow S by vertices with <= ψ
// neighbors outside F, batch-shrink F by vertices with <= ψ neighbors in S,
// each step keeping approx2/approx3. Returns a verified pair or a failure.
ApproxPairResult construct_approx_pair(const MidLayerGraph& g, const VertexSet& x, int psi,
                                       std::size_t max_iterations = 1000);

}  // namespace midlayer
