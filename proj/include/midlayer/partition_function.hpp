#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "midlayer/coloring.hpp"
#include "midlayer/exact.hpp"
#include "midlayer/graph.hpp"
#include "midlayer/interval.hpp"
#include "midlayer/polymer.hpp"

namespace midlayer {

// Admissible polymers for one principal partition, their exact weights and
// the adjacency relation as bit rows.
class PolymerModel {
 public:
  PolymerModel(const MidLayerGraph& g, PrincipalPartition partition,
               std::vector<Polymer> polymers);
  // Enumerates polymers with `params`, then computes weights.
  static PolymerModel build(const MidLayerGraph& g, const PolymerParams& params,
                            const PrincipalPartition& partition);

  const MidLayerGraph& graph() const { return *graph_; }
  const PrincipalPartition& partition() const { return partition_; }
  std::size_t size() const { return polymers_.size(); }
  const std::vector<Polymer>& polymers() const { return polymers_; }
  const Polymer& polymer(std::size_t i) const { return polymers_[i]; }
  const Rational& weight(std::size_t i) const { return weights_[i]; }
  bool adjacent(std::size_t i, std::size_t j) const {
    return (rows_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  std::span<const std::uint64_t> row(std::size_t i) const {
    return {rows_.data() + i * words_, words_};
  }
  std::size_t words() const { return words_; }

 private:
  const MidLayerGraph* graph_;
  PrincipalPartition partition_;
  std::vector<Polymer> polymers_;
  std::vector<Rational> weights_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

struct FamilyLimits {
  std::size_t max_families = 20'000'000;
  // Only families with sum of polymer sizes <= this are visited.
  std::size_t max_total_size = std::numeric_limits<std::size_t>::max();
};

// Visits every family of pairwise non-adjacent polymers (including the empty
// family) as an increasing list of polymer indices. Throws ResourceError
// when more than max_families would be visited.
void for_each_family(const PolymerModel& model, const FamilyLimits& limits,
                     const std::function<void(std::span<const std::size_t>)>& visit);

struct PartitionFunctionResult {
  Rational xi;
  std::size_t family_count = 0;
  // Largest |Λ| = sum of polymer sizes, and largest number of polymers.
  std::size_t max_family_size = 0;
  std::size_t max_family_polymers = 0;
};

PartitionFunctionResult partition_function(const PolymerModel& model,
                                           const FamilyLimits& limits = {});

// Coefficients of Ξ(z) = sum_Λ prod ω(γ) z^{|Λ|} up to degree `degree`.
std::vector<Rational> partition_polynomial(const PolymerModel& model, std::size_t degree,
                                           const FamilyLimits& limits = {});

// (|A||B|)^{N/2} Ξ. Must be an integer; a fraction raises ConsistencyError.
BigInt capture_count(const PolymerModel& model, const FamilyLimits& limits = {});

// Number of proper colorings whose flaw (for the model's partition) splits
// into admissible 2-linked components, by full enumeration.
BigInt capture_count_bruteforce(const MidLayerGraph& g, const PrincipalPartition& partition,
                                const PolymerParams& params,
                                const CountLimits& limits = kDefaultCountLimits);

// Constants of the convergence criterion. g(γ) = |N(γ)|/(3q) when
// |N(γ)| <= d^10, else ξ|N(γ)|/(4 log2(d)^2).
struct KpSettings {
  Rational xi = 1;
  mpfr_prec_t precision = kDefaultPrecisionBits;
};

Interval kp_decay(const MidLayerGraph& g, const Polymer& polymer, int q,
                  const KpSettings& settings = {});
// ω(γ) exp(2|γ|/d + g(γ)).
Interval kp_term(const MidLayerGraph& g, const Polymer& polymer, const Rational& omega, int q,
                 const KpSettings& settings = {});

struct KpReport {
  Vertex vertex = 0;
  std::size_t polymer_count = 0;
  Interval lhs;
  Interval bound;  // 1/d^3
  Ordering comparison = Ordering::Indeterminate;
  // "holds", "fails" or "indeterminate".
  std::string status;
};

// Sum over admissible γ ∋ v of kp_term, compared with 1/d^3.
KpReport kp_lhs(const PolymerModel& model, Vertex v, const KpSettings& settings = {});

}  // namespace midlayer
