#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "midlayer/coloring.hpp"
#include "midlayer/counting.hpp"
#include "midlayer/exact.hpp"
#include "midlayer/graph.hpp"
#include "midlayer/interval.hpp"

namespace midlayer {

// Admissibility caps standing in for the asymptotic |N(γ)| <= 2^{-βd}N.
struct PolymerParams {
  std::size_t max_size = 2;
  std::size_t max_boundary = std::numeric_limits<std::size_t>::max();
};

// Nonempty 2-linked vertex set γ with its closed neighborhood γ⁺.
struct Polymer {
  VertexSet vertices;
  VertexSet closure;
  // |N(γ)|; N(γ) may include members of γ.
  std::size_t neighborhood_size = 0;

  std::size_t size() const { return vertices.size(); }
  // Members of γ⁺ in L_d and in L_{d-1}.
  std::size_t closure_upper(const MidLayerGraph& g) const;
  std::size_t closure_lower(const MidLayerGraph& g) const;

  friend bool operator==(const Polymer& a, const Polymer& b) { return a.vertices == b.vertices; }
};

// Orders by size, then lexicographically on vertices.
bool polymer_less(const Polymer& a, const Polymer& b);

// Throws ParameterError if x is empty or not 2-linked.
Polymer make_polymer(const MidLayerGraph& g, VertexSet x);
bool is_admissible(const Polymer& polymer, const PolymerParams& params);

// All admissible polymers (or all containing `root`), in polymer_less order.
// Parallel over root vertices.
std::vector<Polymer> enumerate_polymers(const MidLayerGraph& g, const PolymerParams& params,
                                        std::optional<Vertex> root = std::nullopt);
std::vector<Polymer> enumerate_polymers_serial(const MidLayerGraph& g,
                                               const PolymerParams& params,
                                               std::optional<Vertex> root = std::nullopt);

// γ ~ γ' iff γ ∪ γ' is 2-linked. Every polymer is adjacent to itself.
bool polymer_adjacent(const MidLayerGraph& g, const Polymer& a, const Polymer& b);

// |χ̂_{A,B}(γ)|: colorings of γ⁺ with γ on the wrong side of (A, B) and ∂γ on
// the right side, proper on B_d[γ⁺].
BigInt local_defect_count(const MidLayerGraph& g, const Polymer& polymer,
                          const PrincipalPartition& p);

// ω_{A,B}(γ) = |χ̂(γ)| / (|A|^{|γ⁺ ∩ L_d|} |B|^{|γ⁺ ∩ L_{d-1}|}).
Rational weight(const MidLayerGraph& g, const Polymer& polymer, const PrincipalPartition& p);

// Same quantity by global counting: colorings of B_d whose flaw is exactly γ,
// divided by (|A||B|)^{N/2}. Needs full enumeration (d <= 2 by default).
Rational weight_global_oracle(const MidLayerGraph& g, const Polymer& polymer,
                              const PrincipalPartition& p,
                              const CountLimits& limits = kDefaultCountLimits);

// ω(γ) exp(|γ|/d) enclosed in an interval.
Interval tilted_weight(const MidLayerGraph& g, const Polymer& polymer, const Rational& omega,
                       mpfr_prec_t precision = kDefaultPrecisionBits);

}  // namespace midlayer
