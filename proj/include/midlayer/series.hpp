#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "midlayer/cluster.hpp"
#include "midlayer/exact.hpp"
#include "midlayer/interval.hpp"
#include "midlayer/partition_function.hpp"

namespace midlayer {

// N = 2 C(2d-1, d) for any d >= 1, no graph needed.
BigInt vertex_count(int d);

// L(1) and L(2) for a partition with |A| = a (colors L_d) and |B| = b.
// Symmetric in (a, b).
Rational closed_form_L1(int d, int a, int b);
Rational closed_form_L2(int d, int a, int b);
// Balanced split a = floor(q/2), b = ceil(q/2).
Rational closed_form_L1(int d, int q);
Rational closed_form_L2(int d, int q);

// f(q, d) = N(1-2/q)^d + N(1-2/q)^{2d} (d(1-2/q)^{-2} - d - 1)/2.
Rational leading_exponent(int d, int q);

// δ = 1 - 1/ceil(q/2).
Rational delta(int q);

struct ApproxOptions {
  mpfr_prec_t precision = kDefaultPrecisionBits;
  // Constant in front of N d^{2(t-1)} δ^{dt}; user-supplied, never asserted.
  Rational eps_constant = 1;
  // Polymer admissibility used for enumerated terms k >= 3.
  PolymerParams params{64, std::numeric_limits<std::size_t>::max()};
  ClusterLimits cluster_limits{};
};

struct PartitionTypeTerms {
  int a = 0;
  int b = 0;
  // Ordered principal partitions of this type.
  std::size_t multiplicity = 0;
  // L(1), ..., L(t-1).
  std::vector<Rational> terms;
  Rational exponent;
};

// (ab)^{N/2} Σ_{(A,B)} exp(Σ_{k<t} L_{A,B}(k)).
struct ApproxReport {
  int d = 0;
  int q = 0;
  int t = 0;
  BigInt n;
  std::size_t partition_count = 0;
  std::vector<PartitionTypeTerms> types;
  Interval log_value;
  Interval value;
  Rational eps_bound;
};

ApproxReport approx_count(int d, int q, int t, const ApproxOptions& options = {});

struct CompareReport {
  ApproxReport approx;
  BigInt exact;
  // (approx - exact) / exact.
  Interval relative_error;
};

CompareReport compare_with_exact(int d, int q, int t, const ApproxOptions& options = {},
                                 const CountLimits& limits = kDefaultCountLimits);

// log(series) to degree K for a power series with constant term 1.
std::vector<Rational> formal_log(const std::vector<Rational>& series, std::size_t degree);

struct FormalLogReport {
  std::size_t degree = 0;
  std::vector<Rational> xi_coefficients;
  std::vector<Rational> log_coefficients;
  // cluster_terms[k] = L(k); index 0 unused.
  std::vector<Rational> cluster_terms;
  std::vector<bool> matches;
  bool all_match = false;
};

FormalLogReport formal_log_check(const PolymerModel& model, std::size_t degree,
                                 const FamilyLimits& family_limits = {},
                                 const ClusterLimits& cluster_limits = {});

struct TermBoundRow {
  std::size_t k = 0;
  Rational term;
  // N d^{2(k-1)} δ^{dk}.
  Rational bound;
  Rational ratio;
};

struct TermBoundReport {
  int d = 0;
  int q = 0;
  Rational delta;
  std::vector<TermBoundRow> rows;
};

// |L(k)| / (N d^{2(k-1)} δ^{dk}) for k = 1..window, using the first
// principal partition and enumerated L(k).
TermBoundReport term_bound_check(const MidLayerGraph& g, int q, std::size_t window,
                                 const PolymerParams& params, const ClusterLimits& limits = {});

}  // namespace midlayer
