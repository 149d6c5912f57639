#include "midlayer/partition_function.hpp"

#include <algorithm>
#include <string>

#include "midlayer/errors.hpp"
#include "midlayer/parallel.hpp"

namespace midlayer {

PolymerModel::PolymerModel(const MidLayerGraph& g, PrincipalPartition partition,
                           std::vector<Polymer> polymers)
    : graph_(&g), partition_(partition), polymers_(std::move(polymers)) {
  std::sort(polymers_.begin(), polymers_.end(), polymer_less);
  const std::size_t n = polymers_.size();
  weights_.resize(n);
  parallel_for(n, [&](std::size_t k) {
    weights_[k] = midlayer::weight(g, polymers_[k], partition_);
  });
  words_ = (n + 63) / 64;
  rows_.assign(n * words_, 0);
  // Vertex -> polymers within distance 2 of it, to avoid the all-pairs scan.
  std::vector<std::vector<std::size_t>> near(g.size());
  for (std::size_t i = 0; i < n; ++i) {
    VertexSet ball = polymers_[i].vertices;
    for (Vertex v : polymers_[i].vertices) {
      for (Vertex u : g.neighbors(v)) {
        ball.push_back(u);
        for (Vertex w : g.neighbors(u)) ball.push_back(w);
      }
    }
    ball = make_vertex_set(std::move(ball));
    for (Vertex u : ball) near[u].push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (Vertex v : polymers_[i].vertices) {
      for (std::size_t j : near[v]) rows_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
}

PolymerModel PolymerModel::build(const MidLayerGraph& g, const PolymerParams& params,
                                 const PrincipalPartition& partition) {
  return PolymerModel(g, partition, enumerate_polymers(g, params));
}

namespace {

class FamilyWalker {
 public:
  FamilyWalker(const PolymerModel& model, const FamilyLimits& limits,
               const std::function<void(std::span<const std::size_t>)>& visit)
      : model_(model), limits_(limits), visit_(visit) {}

  void run() {
    std::vector<std::uint64_t> blocked(model_.words(), 0);
    walk(0, blocked, 0);
  }

 private:
  void walk(std::size_t start, const std::vector<std::uint64_t>& blocked, std::size_t total) {
    if (++visited_ > limits_.max_families) {
      throw ResourceError("more than " + std::to_string(limits_.max_families) +
                              " polymer families",
                          static_cast<double>(visited_));
    }
    visit_(chosen_);
    std::vector<std::uint64_t> next(blocked.size());
    for (std::size_t i = start; i < model_.size(); ++i) {
      if ((blocked[i / 64] >> (i % 64)) & 1u) continue;
      const std::size_t size = model_.polymer(i).size();
      // Polymers are sorted by size, so nothing later fits either.
      if (total + size > limits_.max_total_size) break;
      const auto row = model_.row(i);
      for (std::size_t w = 0; w < next.size(); ++w) next[w] = blocked[w] | row[w];
      chosen_.push_back(i);
      walk(i + 1, next, total + size);
      chosen_.pop_back();
    }
  }

  const PolymerModel& model_;
  const FamilyLimits& limits_;
  const std::function<void(std::span<const std::size_t>)>& visit_;
  std::vector<std::size_t> chosen_;
  std::size_t visited_ = 0;
};

}  // namespace

void for_each_family(const PolymerModel& model, const FamilyLimits& limits,
                     const std::function<void(std::span<const std::size_t>)>& visit) {
  FamilyWalker(model, limits, visit).run();
}

PartitionFunctionResult partition_function(const PolymerModel& model,
                                           const FamilyLimits& limits) {
  PartitionFunctionResult out;
  out.xi = 0;
  for_each_family(model, limits, [&](std::span<const std::size_t> family) {
    Rational term = 1;
    std::size_t size = 0;
    for (std::size_t i : family) {
      term *= model.weight(i);
      size += model.polymer(i).size();
    }
    out.xi += term;
    ++out.family_count;
    out.max_family_size = std::max(out.max_family_size, size);
    out.max_family_polymers = std::max(out.max_family_polymers, family.size());
  });
  out.xi.canonicalize();
  return out;
}

std::vector<Rational> partition_polynomial(const PolymerModel& model, std::size_t degree,
                                           const FamilyLimits& limits) {
  FamilyLimits bounded = limits;
  bounded.max_total_size = std::min(limits.max_total_size, degree);
  std::vector<Rational> coefficients(degree + 1, Rational(0));
  for_each_family(model, bounded, [&](std::span<const std::size_t> family) {
    Rational term = 1;
    std::size_t size = 0;
    for (std::size_t i : family) {
      term *= model.weight(i);
      size += model.polymer(i).size();
    }
    coefficients[size] += term;
  });
  for (auto& c : coefficients) c.canonicalize();
  return coefficients;
}

BigInt capture_count(const PolymerModel& model, const FamilyLimits& limits) {
  const auto& p = model.partition();
  const unsigned long half = model.graph().layer_size();
  Rational scaled = partition_function(model, limits).xi *
                    Rational(power(BigInt(p.a_size() * p.b_size()), half));
  scaled.canonicalize();
  if (scaled.get_den() != 1) {
    throw ConsistencyError("capture count is not an integer: " + to_string(scaled));
  }
  return scaled.get_num();
}

BigInt capture_count_bruteforce(const MidLayerGraph& g, const PrincipalPartition& partition,
                                const PolymerParams& params, const CountLimits& limits) {
  BigInt out = 0;
  for (const auto& f : brute_enumerate(g, partition.q(), limits)) {
    bool captured = true;
    for (auto& component : two_linked_components(g, flaw_set(g, f, partition))) {
      if (!is_admissible(make_polymer(g, std::move(component)), params)) {
        captured = false;
        break;
      }
    }
    if (captured) ++out;
  }
  return out;
}

Interval kp_decay(const MidLayerGraph& g, const Polymer& polymer, int q,
                  const KpSettings& settings) {
  const BigInt cutoff = power(BigInt(g.d()), 10);
  const auto boundary = static_cast<long>(polymer.neighborhood_size);
  if (BigInt(boundary) <= cutoff) {
    return Interval(fraction(boundary, 3L * q), settings.precision);
  }
  // log2(d) = ln d / ln 2
  const Interval log2d = Interval(static_cast<long>(g.d()), settings.precision).log() /
                         Interval(2L, settings.precision).log();
  return Interval(settings.xi * boundary, settings.precision) /
         (Interval(4L, settings.precision) * log2d * log2d);
}

Interval kp_term(const MidLayerGraph& g, const Polymer& polymer, const Rational& omega, int q,
                 const KpSettings& settings) {
  const Interval tilt(fraction(2L * static_cast<long>(polymer.size()), g.d()),
                      settings.precision);
  return Interval(omega, settings.precision) *
         (tilt + kp_decay(g, polymer, q, settings)).exp();
}

KpReport kp_lhs(const PolymerModel& model, Vertex v, const KpSettings& settings) {
  const auto& g = model.graph();
  if (v >= g.size()) throw ParameterError("vertex " + std::to_string(v) + " out of range");
  KpReport out;
  out.vertex = v;
  out.lhs = Interval::zero(settings.precision);
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (!contains(model.polymer(i).vertices, v)) continue;
    ++out.polymer_count;
    out.lhs += kp_term(g, model.polymer(i), model.weight(i), model.partition().q(), settings);
  }
  const long d = g.d();
  out.bound = Interval(fraction(1, d * d * d), settings.precision);
  out.comparison = out.lhs.compare(out.bound);
  out.status = out.comparison == Ordering::Less      ? "holds"
               : out.comparison == Ordering::Greater ? "fails"
                                                     : "indeterminate";
  return out;
}

}  // namespace midlayer
