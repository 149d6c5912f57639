#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <vector>

#include "midlayer/coloring.hpp"
#include "midlayer/exact.hpp"
#include "midlayer/partition_function.hpp"

namespace midlayer {

struct SamplerConfig {
  int d = 2;
  int q = 4;
  PolymerParams params{64, std::numeric_limits<std::size_t>::max()};
  std::uint64_t seed = 1;
  std::size_t sample_count = 1000;
  FamilyLimits family_limits{};
};

struct SampleRecord {
  std::size_t index = 0;
  std::size_t partition = 0;  // index into principal_partitions(q)
  std::vector<VertexSet> family;
  std::size_t family_size = 0;  // |Λ| = Σ|γ|
  Coloring coloring;
  // |X| for the nearest ground state of the coloring.
  std::size_t flaw_size = 0;
  BalanceMargins margins;
};

// Per-sample generator: mt19937_64 seeded from (seed, index) by splitmix64.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next() { return engine_(); }
  // Uniform on [0, n), n >= 1, by rejection.
  std::uint64_t below(std::uint64_t n);
  BigInt below(const BigInt& n);

 private:
  std::mt19937_64 engine_;
};

// Four-step sampler for μ̂_q: uniform ordered principal partition; family
// Λ ~ ν ∝ Π ω(γ) by exact enumeration; uniform element of χ̂(∪Λ) on its
// closure; independent uniform right-side colors elsewhere.
class MuHatSampler {
 public:
  explicit MuHatSampler(const SamplerConfig& config);
  ~MuHatSampler();
  MuHatSampler(MuHatSampler&&) noexcept;

  const SamplerConfig& config() const { return config_; }
  const MidLayerGraph& graph() const;
  std::size_t family_count(std::size_t partition) const;
  const Rational& xi(std::size_t partition) const;

  SampleRecord sample(std::size_t index) const;
  // Parallel over indices; identical to run_serial.
  std::vector<SampleRecord> run() const;
  std::vector<SampleRecord> run_serial() const;

 private:
  struct Tables;
  SamplerConfig config_;
  std::unique_ptr<Tables> tables_;
};

struct ExactMuHat {
  std::map<Coloring, Rational> pmf;
  // Pr(f | partition) for every partition index.
  std::vector<std::map<Coloring, Rational>> conditional;
  std::vector<Rational> partition_marginal;
  std::vector<Rational> xi;
  // Pr(X = |Λ|) over the joint law of (partition, Λ, f).
  Rational defect_match_probability;
};

// Enumerates the four steps explicitly (d <= limits.max_enumeration_d).
ExactMuHat exact_mu_hat_pmf(const MidLayerGraph& g, int q, const PolymerParams& params,
                            const CountLimits& limits = kDefaultCountLimits,
                            const FamilyLimits& family_limits = {});

struct DefectStats {
  std::size_t samples = 0;
  double defect_match = 0.0;  // empirical Pr(X = |Λ|)
  double mean_family_size = 0.0;
  std::vector<std::pair<double, double>> tail;      // (t, freq |Λ| >= tN)
  std::vector<std::pair<double, double>> balanced;  // (s, freq s-balanced)
};

DefectStats defect_stats(const MidLayerGraph& g, const std::vector<SampleRecord>& samples);

// ½ Σ |empirical - exact| over the union of supports.
double total_variation(const std::vector<SampleRecord>& samples,
                       const std::map<Coloring, Rational>& pmf);

}  // namespace midlayer
