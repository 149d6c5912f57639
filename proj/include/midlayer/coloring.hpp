#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "midlayer/exact.hpp"
#include "midlayer/graph.hpp"

namespace midlayer {

// Colors are 1..q.
using Color = int;
// Per-vertex colors in vertex-index order.
using Coloring = std::vector<Color>;

inline constexpr int kMaxColors = 16;

// Ordered split (A, B) of {1..q} with {|A|, |B|} = {floor(q/2), ceil(q/2)}.
// A is the right side for L_d, B for L_{d-1}.
class PrincipalPartition {
 public:
  PrincipalPartition(int q, std::uint32_t a_mask);

  int q() const { return q_; }
  std::uint32_t a_mask() const { return a_mask_; }
  std::uint32_t b_mask() const { return b_mask_; }
  int a_size() const;
  int b_size() const;
  std::vector<Color> a_colors() const;
  std::vector<Color> b_colors() const;
  bool in_a(Color c) const { return (a_mask_ >> (c - 1)) & 1u; }
  bool in_b(Color c) const { return (b_mask_ >> (c - 1)) & 1u; }
  PrincipalPartition swapped() const;

  // Right-side palette for the layer of v, and the wrong-side palette.
  std::uint32_t right_mask(const MidLayerGraph& g, Vertex v) const {
    return g.in_upper_layer(v) ? a_mask_ : b_mask_;
  }
  std::uint32_t wrong_mask(const MidLayerGraph& g, Vertex v) const {
    return g.in_upper_layer(v) ? b_mask_ : a_mask_;
  }

  std::string to_string() const;

  friend bool operator==(const PrincipalPartition&, const PrincipalPartition&) = default;

 private:
  int q_;
  std::uint32_t a_mask_;
  std::uint32_t b_mask_;
};

// All ordered principal partitions of {1..q}, sorted lexicographically on
// (sorted A, sorted B).
std::vector<PrincipalPartition> principal_partitions(int q);

std::vector<Color> colors_of_mask(std::uint32_t mask);

bool is_proper(const MidLayerGraph& g, const Coloring& f);
// Throws ValidationError unless f has one color in 1..q per vertex and is proper.
void validate_coloring(const MidLayerGraph& g, const Coloring& f, int q);

struct FlawReport {
  PrincipalPartition partition;
  VertexSet flaw;
  std::vector<VertexSet> components;
  std::size_t max_component_size = 0;
};

// X_{A,B}(f) with its 2-linked decomposition.
FlawReport flaw(const MidLayerGraph& g, const Coloring& f, const PrincipalPartition& p);
// Flaw set only; no validation, no decomposition.
VertexSet flaw_set(const MidLayerGraph& g, const Coloring& f, const PrincipalPartition& p);

// Partition minimizing |X_{A,B}(f)|; ties go to the earliest partition in
// principal_partitions order.
FlawReport nearest_ground_state(const MidLayerGraph& g, const Coloring& f, int q);

// Smallest t with 2 + t*log2(1 - 2/q) < 0, decided exactly as q^t > 4(q-2)^t.
int threshold_polymer_size(int q);

// Worst deviation |share(c) - 1/|side|| per color, A colors measured on L_d
// and B colors on L_{d-1}.
struct BalanceMargins {
  std::vector<double> a_margins;
  std::vector<double> b_margins;
  double max_margin = 0.0;
};

BalanceMargins balance_margins(const MidLayerGraph& g, const Coloring& f,
                               const PrincipalPartition& p);
bool is_s_balanced(const MidLayerGraph& g, const Coloring& f, const PrincipalPartition& p,
                   double s);

// Ground state coloring: each vertex gets a right-side color chosen by
// cycling through its palette in index order.
Coloring cyclic_ground_state(const MidLayerGraph& g, const PrincipalPartition& p);

}  // namespace midlayer
