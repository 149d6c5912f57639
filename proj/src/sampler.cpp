#include "midlayer/sampler.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "midlayer/counting.hpp"
#include "midlayer/errors.hpp"
#include "midlayer/parallel.hpp"

namespace midlayer {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Index of the first cumulative entry exceeding r.
std::size_t pick(const std::vector<BigInt>& cumulative, const BigInt& r) {
  return static_cast<std::size_t>(
      std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
}

// Inner colorings of one polymer weighted by their number of boundary
// extensions, plus what is needed to color the boundary afterwards.
struct InnerTable {
  std::vector<std::vector<Color>> colorings;
  std::vector<BigInt> cumulative;
  BigInt total;
  VertexSet boundary;
  std::vector<std::vector<std::size_t>> touches;
};

InnerTable build_inner(const MidLayerGraph& g, const Polymer& polymer,
                       const PrincipalPartition& p) {
  InnerTable t;
  const VertexSet& gamma = polymer.vertices;
  t.boundary = set_difference(polymer.closure, gamma);
  t.touches.resize(t.boundary.size());
  for (std::size_t i = 0; i < t.boundary.size(); ++i) {
    for (Vertex u : g.neighbors(t.boundary[i])) {
      const auto it = std::lower_bound(gamma.begin(), gamma.end(), u);
      if (it != gamma.end() && *it == u) {
        t.touches[i].push_back(static_cast<std::size_t>(it - gamma.begin()));
      }
    }
  }
  std::vector<std::vector<Color>> choices(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    choices[i] = colors_of_mask(p.wrong_mask(g, gamma[i]));
  }
  std::vector<std::size_t> pos(gamma.size(), 0);
  t.total = 0;
  for (;;) {
    std::vector<Color> colors(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) colors[i] = choices[i][pos[i]];
    BigInt extensions = 1;
    for (std::size_t i = 0; i < t.boundary.size() && extensions != 0; ++i) {
      std::uint32_t used = 0;
      for (std::size_t j : t.touches[i]) used |= 1u << (colors[j] - 1);
      extensions *= std::popcount(p.right_mask(g, t.boundary[i]) & ~used);
    }
    if (extensions != 0) {
      t.total += extensions;
      t.colorings.push_back(std::move(colors));
      t.cumulative.push_back(t.total);
    }
    std::size_t i = 0;
    while (i < pos.size() && ++pos[i] == choices[i].size()) {
      pos[i] = 0;
      ++i;
    }
    if (i == pos.size()) break;
  }
  return t;
}

}  // namespace

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed;
  const std::uint64_t a = splitmix64(x);
  x = a ^ index;
  engine_.seed(splitmix64(x));
}

std::uint64_t SampleRng::below(std::uint64_t n) {
  if (n == 0) throw ParameterError("empty range");
  // Largest multiple of n that fits, minus one.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r <= limit) return r % n;
  }
}

BigInt SampleRng::below(const BigInt& n) {
  if (n <= 0) throw ParameterError("empty range");
  if (n.fits_ulong_p() && sizeof(unsigned long) == 8) {
    return BigInt(static_cast<unsigned long>(below(static_cast<std::uint64_t>(n.get_ui()))));
  }
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (;;) {
    BigInt r = 0;
    std::size_t have = 0;
    while (have < bits) {
      r <<= 64;
      const std::uint64_t word = engine_();
      r += BigInt(static_cast<unsigned long>(word));
      have += 64;
    }
    r >>= static_cast<mp_bitcnt_t>(have - bits);
    if (r < n) return r;
  }
}

struct MuHatSampler::Tables {
  MidLayerGraph graph;
  std::vector<PrincipalPartition> partitions;
  std::vector<PolymerModel> models;
  std::vector<std::vector<std::vector<std::size_t>>> families;
  std::vector<std::vector<BigInt>> cumulative;
  std::vector<Rational> xi;
  std::vector<std::vector<InnerTable>> inner;

  explicit Tables(int d) : graph(d) {}
};

MuHatSampler::MuHatSampler(const SamplerConfig& config)
    : config_(config), tables_(std::make_unique<Tables>(config.d)) {
  auto& t = *tables_;
  t.partitions = principal_partitions(config.q);
  const auto polymers = enumerate_polymers(t.graph, config.params);
  for (const auto& p : t.partitions) {
    t.models.emplace_back(t.graph, p, polymers);
    const PolymerModel& model = t.models.back();
    std::vector<std::vector<std::size_t>> families;
    std::vector<Rational> weights;
    for_each_family(model, config.family_limits, [&](std::span<const std::size_t> family) {
      Rational w = 1;
      for (std::size_t i : family) w *= model.weight(i);
      families.emplace_back(family.begin(), family.end());
      weights.push_back(w);
    });
    // Scale by the common denominator so ν becomes an integer table.
    BigInt common = 1;
    for (const auto& w : weights) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), w.get_den_mpz_t());
    std::vector<BigInt> cumulative;
    BigInt running = 0;
    Rational xi = 0;
    for (const auto& w : weights) {
      running += w.get_num() * (common / w.get_den());
      cumulative.push_back(running);
      xi += w;
    }
    xi.canonicalize();
    t.families.push_back(std::move(families));
    t.cumulative.push_back(std::move(cumulative));
    t.xi.push_back(xi);
    std::vector<InnerTable> inner;
    for (const auto& polymer : model.polymers()) inner.push_back(build_inner(t.graph, polymer, p));
    t.inner.push_back(std::move(inner));
  }
}

MuHatSampler::~MuHatSampler() = default;
MuHatSampler::MuHatSampler(MuHatSampler&&) noexcept = default;

const MidLayerGraph& MuHatSampler::graph() const { return tables_->graph; }

std::size_t MuHatSampler::family_count(std::size_t partition) const {
  return tables_->families.at(partition).size();
}

const Rational& MuHatSampler::xi(std::size_t partition) const {
  return tables_->xi.at(partition);
}

SampleRecord MuHatSampler::sample(std::size_t index) const {
  const auto& t = *tables_;
  const MidLayerGraph& g = t.graph;
  SampleRng rng(config_.seed, index);
  SampleRecord out;
  out.index = index;
  // Step 1.
  out.partition = static_cast<std::size_t>(rng.below(std::uint64_t{t.partitions.size()}));
  const PrincipalPartition& p = t.partitions[out.partition];
  const PolymerModel& model = t.models[out.partition];
  // Step 2.
  const auto& cumulative = t.cumulative[out.partition];
  const std::size_t chosen = pick(cumulative, rng.below(cumulative.back()));
  const auto& family = t.families[out.partition][chosen];
  // Step 3, polymer by polymer: χ̂ of a non-adjacent union is a product.
  out.coloring.assign(g.size(), 0);
  for (std::size_t i : family) {
    const Polymer& polymer = model.polymer(i);
    const InnerTable& inner = t.inner[out.partition][i];
    const auto& colors = inner.colorings[pick(inner.cumulative, rng.below(inner.total))];
    for (std::size_t j = 0; j < polymer.size(); ++j) out.coloring[polymer.vertices[j]] = colors[j];
    for (std::size_t b = 0; b < inner.boundary.size(); ++b) {
      std::uint32_t used = 0;
      for (std::size_t j : inner.touches[b]) used |= 1u << (colors[j] - 1);
      const auto allowed = colors_of_mask(p.right_mask(g, inner.boundary[b]) & ~used);
      out.coloring[inner.boundary[b]] = allowed[rng.below(std::uint64_t{allowed.size()})];
    }
    out.family.push_back(polymer.vertices);
    out.family_size += polymer.size();
  }
  // Step 4.
  for (Vertex v = 0; v < g.size(); ++v) {
    if (out.coloring[v] != 0) continue;
    const auto palette = colors_of_mask(p.right_mask(g, v));
    out.coloring[v] = palette[rng.below(std::uint64_t{palette.size()})];
  }
  out.flaw_size = nearest_ground_state(g, out.coloring, config_.q).flaw.size();
  out.margins = balance_margins(g, out.coloring, p);
  return out;
}

std::vector<SampleRecord> MuHatSampler::run() const {
  std::vector<SampleRecord> out(config_.sample_count);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = sample(i); });
  return out;
}

std::vector<SampleRecord> MuHatSampler::run_serial() const {
  std::vector<SampleRecord> out;
  out.reserve(config_.sample_count);
  for (std::size_t i = 0; i < config_.sample_count; ++i) out.push_back(sample(i));
  return out;
}

ExactMuHat exact_mu_hat_pmf(const MidLayerGraph& g, int q, const PolymerParams& params,
                            const CountLimits& limits, const FamilyLimits& family_limits) {
  if (g.d() > limits.max_enumeration_d) {
    throw ResourceError("exact pmf needs d <= " + std::to_string(limits.max_enumeration_d),
                        static_cast<double>(g.size()));
  }
  ExactMuHat out;
  out.defect_match_probability = 0;
  const auto partitions = principal_partitions(q);
  const Rational partition_mass = fraction(1, static_cast<long>(partitions.size()));
  const auto polymers = enumerate_polymers(g, params);
  out.conditional.resize(partitions.size());

  for (std::size_t pi = 0; pi < partitions.size(); ++pi) {
    const PrincipalPartition& p = partitions[pi];
    const PolymerModel model(g, p, polymers);
    const Rational xi = partition_function(model, family_limits).xi;
    out.xi.push_back(xi);
    auto& conditional = out.conditional[pi];

    for_each_family(model, family_limits, [&](std::span<const std::size_t> family) {
      Rational family_mass = 1;
      VertexSet s;
      for (std::size_t i : family) {
        family_mass *= model.weight(i);
        s = set_union(s, model.polymer(i).vertices);
      }
      family_mass /= xi;
      const VertexSet closed = closed_neighborhood(g, s);
      const VertexSet rest = set_difference(g.all_vertices(), closed);

      // Every coloring of S⁺ with S wrong, S⁺∖S right, proper on B_d[S⁺].
      std::vector<std::vector<Color>> palettes;
      for (Vertex v : closed) {
        palettes.push_back(colors_of_mask(contains(s, v) ? p.wrong_mask(g, v)
                                                         : p.right_mask(g, v)));
      }
      std::vector<Coloring> partial;
      std::vector<std::size_t> pos(closed.size(), 0);
      Coloring f(g.size(), 0);
      for (;;) {
        for (std::size_t i = 0; i < closed.size(); ++i) f[closed[i]] = palettes[i][pos[i]];
        bool proper = true;
        for (std::size_t i = 0; i < closed.size() && proper; ++i) {
          for (Vertex u : g.neighbors(closed[i])) {
            if (f[u] != 0 && f[u] == f[closed[i]]) proper = false;
          }
        }
        if (proper) partial.push_back(f);
        std::size_t i = 0;
        while (i < pos.size() && ++pos[i] == palettes[i].size()) {
          pos[i] = 0;
          ++i;
        }
        if (i == pos.size()) break;
      }
      if (partial.empty()) throw ConsistencyError("family with empty χ̂ has positive weight");

      // Completions off S⁺, each equally likely.
      std::vector<std::vector<Color>> rest_palettes;
      BigInt completions = 1;
      for (Vertex v : rest) {
        rest_palettes.push_back(colors_of_mask(p.right_mask(g, v)));
        completions *= static_cast<unsigned long>(rest_palettes.back().size());
      }
      const Rational mass =
          family_mass / (Rational(static_cast<long>(partial.size())) * Rational(completions));
      const std::size_t lambda = s.size();
      for (Coloring h : partial) {
        std::vector<std::size_t> rpos(rest.size(), 0);
        for (;;) {
          for (std::size_t i = 0; i < rest.size(); ++i) h[rest[i]] = rest_palettes[i][rpos[i]];
          conditional[h] += mass;
          out.pmf[h] += partition_mass * mass;
          if (nearest_ground_state(g, h, q).flaw.size() == lambda) {
            out.defect_match_probability += partition_mass * mass;
          }
          std::size_t i = 0;
          while (i < rpos.size() && ++rpos[i] == rest_palettes[i].size()) {
            rpos[i] = 0;
            ++i;
          }
          if (i == rpos.size()) break;
        }
      }
    });
    out.partition_marginal.push_back(0);
    for (auto& [f, mass] : conditional) {
      mass.canonicalize();
      out.partition_marginal.back() += mass * partition_mass;
    }
    out.partition_marginal.back().canonicalize();
  }
  for (auto& [f, mass] : out.pmf) mass.canonicalize();
  out.defect_match_probability.canonicalize();
  return out;
}

DefectStats defect_stats(const MidLayerGraph& g, const std::vector<SampleRecord>& samples) {
  if (samples.empty()) throw ParameterError("defect statistics need at least one sample");
  DefectStats out;
  out.samples = samples.size();
  const double n = static_cast<double>(samples.size());
  const double vertices = static_cast<double>(g.size());
  std::size_t matches = 0;
  double total_size = 0.0;
  for (const auto& r : samples) {
    if (r.flaw_size == r.family_size) ++matches;
    total_size += static_cast<double>(r.family_size);
  }
  out.defect_match = static_cast<double>(matches) / n;
  out.mean_family_size = total_size / n;
  for (double t : {0.0, 0.1, 0.2, 0.3, 0.5}) {
    const auto hits = std::count_if(samples.begin(), samples.end(), [&](const SampleRecord& r) {
      return static_cast<double>(r.family_size) >= t * vertices;
    });
    out.tail.emplace_back(t, static_cast<double>(hits) / n);
  }
  for (double s : {0.05, 0.1, 0.25, 0.5, 1.0}) {
    const auto hits = std::count_if(samples.begin(), samples.end(),
                                    [&](const SampleRecord& r) { return r.margins.max_margin <= s; });
    out.balanced.emplace_back(s, static_cast<double>(hits) / n);
  }
  return out;
}

double total_variation(const std::vector<SampleRecord>& samples,
                       const std::map<Coloring, Rational>& pmf) {
  if (samples.empty()) throw ParameterError("total variation needs samples");
  std::map<Coloring, std::size_t> counts;
  for (const auto& r : samples) ++counts[r.coloring];
  const Rational n(static_cast<long>(samples.size()));
  Rational sum = 0;
  for (const auto& [f, mass] : pmf) {
    const auto it = counts.find(f);
    const Rational empirical = it == counts.end() ? Rational(0) : Rational(static_cast<long>(it->second)) / n;
    sum += abs(empirical - mass);
  }
  for (const auto& [f, count] : counts) {
    if (!pmf.count(f)) sum += Rational(static_cast<long>(count)) / n;
  }
  return Rational(sum / 2).get_d();
}

}  // namespace midlayer
