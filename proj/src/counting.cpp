#include "midlayer/counting.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <queue>
#include <string>
#include <unordered_map>

#include <omp.h>

#include "midlayer/errors.hpp"

namespace midlayer {

namespace {

void check_q(int q) {
  if (q < 1 || q > kMaxColors) {
    throw ParameterError("q must lie in [1, " + std::to_string(kMaxColors) + "]");
  }
}

// sum_{j=1}^{min(q,w)} S(w, j): set partitions of w items into at most q blocks.
double bounded_bell(std::size_t w, int q) {
  std::vector<double> row(static_cast<std::size_t>(q) + 1, 0.0);
  row[0] = 1.0;
  for (std::size_t i = 1; i <= w; ++i) {
    std::vector<double> next(row.size(), 0.0);
    for (std::size_t j = 1; j < row.size(); ++j) {
      next[j] = static_cast<double>(j) * row[j] + row[j - 1];
    }
    row = std::move(next);
  }
  double total = 0.0;
  for (std::size_t j = (w == 0 ? 0 : 1); j < row.size(); ++j) total += row[j];
  return total;
}

BigInt falling_factorial(int q, int k) {
  BigInt out = 1;
  for (int i = 0; i < k; ++i) out *= q - i;
  return out;
}

void check_enumerable(const MidLayerGraph& g, int q, const CountLimits& limits) {
  if (g.d() > limits.max_enumeration_d) {
    throw ResourceError("full enumeration is limited to d <= " +
                            std::to_string(limits.max_enumeration_d),
                        std::pow(static_cast<double>(q), static_cast<double>(g.size())));
  }
}

// Restricted-growth strings over `length` positions with at most q blocks;
// labels of the lower layer in index order.
struct LowerLayerWalker {
  const MidLayerGraph& g;
  int q;
  std::vector<std::uint8_t> labels;

  // Sum of prod_u (q - distinct(N(u))) over completions of `labels` from
  // position `pos`, weighted by falling(q, blocks).
  void walk(std::size_t pos, int blocks, BigInt& total) {
    if (pos == g.layer_size()) {
      unsigned __int128 product = 1;
      for (Vertex u = static_cast<Vertex>(g.layer_size()); u < g.size(); ++u) {
        std::uint32_t seen = 0;
        for (Vertex w : g.neighbors(u)) seen |= 1u << labels[w];
        product *= static_cast<unsigned>(q - std::popcount(seen));
        if (product == 0) return;
      }
      BigInt term;
      const auto high = static_cast<unsigned long>(product >> 64);
      const auto low = static_cast<unsigned long>(product & ~std::uint64_t{0});
      term = high;
      term <<= 64;
      term += low;
      total += term * falling_factorial(q, blocks);
      return;
    }
    for (int label = 0; label <= blocks && label < q; ++label) {
      labels[pos] = static_cast<std::uint8_t>(label);
      walk(pos + 1, std::max(blocks, label + 1), total);
    }
  }
};

std::vector<std::pair<std::vector<std::uint8_t>, int>> lower_layer_prefixes(std::size_t length,
                                                                           int q) {
  std::vector<std::pair<std::vector<std::uint8_t>, int>> out{{{}, 0}};
  for (std::size_t pos = 0; pos < length; ++pos) {
    std::vector<std::pair<std::vector<std::uint8_t>, int>> next;
    for (const auto& [prefix, blocks] : out) {
      for (int label = 0; label <= blocks && label < q; ++label) {
        auto extended = prefix;
        extended.push_back(static_cast<std::uint8_t>(label));
        next.emplace_back(std::move(extended), std::max(blocks, label + 1));
      }
    }
    out = std::move(next);
  }
  return out;
}

void check_layer_sum(const MidLayerGraph& g, int q, const CountLimits& limits) {
  const double estimate = bounded_bell(g.layer_size(), q);
  if (estimate > limits.max_states) {
    throw ResourceError("layer-sum enumeration needs ~" + std::to_string(estimate) +
                            " lower-layer patterns",
                        estimate);
  }
}

void enumerate_from(const MidLayerGraph& g, int q, Coloring& f, std::size_t pos,
                    std::vector<Coloring>& out) {
  if (pos == g.size()) {
    out.push_back(f);
    return;
  }
  const Vertex v = static_cast<Vertex>(pos);
  for (Color c = 1; c <= q; ++c) {
    bool ok = true;
    for (Vertex u : g.neighbors(v)) {
      if (u < v && f[u] == c) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    f[pos] = c;
    enumerate_from(g, q, f, pos + 1, out);
  }
  f[pos] = 0;
}

}  // namespace

EliminationPlan plan_elimination(const MidLayerGraph& g, int q) {
  check_q(q);
  EliminationPlan plan;
  std::vector<char> seen(g.size(), 0);
  std::queue<Vertex> pending;
  pending.push(0);
  seen[0] = 1;
  while (!pending.empty()) {
    const Vertex v = pending.front();
    pending.pop();
    plan.order.push_back(v);
    for (Vertex u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        pending.push(u);
      }
    }
  }
  if (plan.order.size() != g.size()) throw ConsistencyError("B_d is not connected");

  std::vector<std::size_t> position(g.size());
  for (std::size_t i = 0; i < plan.order.size(); ++i) position[plan.order[i]] = i;
  // A vertex stays on the frontier until its last neighbor is placed.
  std::vector<std::size_t> released_at(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v) {
    std::size_t release = position[v];
    for (Vertex u : g.neighbors(v)) release = std::max(release, position[u]);
    ++released_at[release];
  }
  std::size_t live = 0;
  for (std::size_t i = 0; i < plan.order.size(); ++i) {
    ++live;
    plan.max_frontier = std::max(plan.max_frontier, live);
    live -= released_at[i];
  }
  plan.state_estimate = bounded_bell(plan.max_frontier, q);
  return plan;
}

BigInt count_colorings_exact(const MidLayerGraph& g, int q, const CountLimits& limits) {
  const EliminationPlan plan = plan_elimination(g, q);
  if (plan.state_estimate > limits.max_states) {
    throw ResourceError("frontier DP needs up to ~" + std::to_string(plan.state_estimate) +
                            " states (frontier width " + std::to_string(plan.max_frontier) +
                            ")",
                        plan.state_estimate);
  }
  std::vector<std::size_t> position(g.size());
  for (std::size_t i = 0; i < plan.order.size(); ++i) position[plan.order[i]] = i;
  std::vector<std::size_t> release(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    release[v] = position[v];
    for (Vertex u : g.neighbors(v)) release[v] = std::max(release[v], position[u]);
  }

  // Frontier vertices in increasing index order; a state is the
  // first-appearance relabeling of their colors.
  std::vector<Vertex> frontier;
  std::unordered_map<std::string, BigInt> states{{std::string(), BigInt(1)}};

  for (std::size_t step = 0; step < plan.order.size(); ++step) {
    const Vertex v = plan.order[step];
    std::vector<Vertex> extended = frontier;
    extended.insert(std::lower_bound(extended.begin(), extended.end(), v), v);
    const std::size_t v_slot =
        static_cast<std::size_t>(std::find(extended.begin(), extended.end(), v) - extended.begin());
    std::vector<Vertex> next_frontier;
    for (Vertex u : extended) {
      if (release[u] > step) next_frontier.push_back(u);
    }
    std::vector<std::size_t> keep_slots;
    for (std::size_t i = 0, j = 0; i < extended.size(); ++i) {
      if (j < next_frontier.size() && extended[i] == next_frontier[j]) {
        keep_slots.push_back(i);
        ++j;
      }
    }
    std::vector<char> adjacent_to_v(frontier.size(), 0);
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      adjacent_to_v[i] = g.adjacent(frontier[i], v) ? 1 : 0;
    }

    std::unordered_map<std::string, BigInt> next_states;
    for (const auto& [key, count] : states) {
      int blocks = 0;
      std::uint32_t forbidden = 0;
      for (std::size_t i = 0; i < key.size(); ++i) {
        const int label = static_cast<unsigned char>(key[i]);
        blocks = std::max(blocks, label + 1);
        if (adjacent_to_v[i]) forbidden |= 1u << label;
      }
      for (int label = 0; label <= blocks && label < q; ++label) {
        if (label < blocks && (forbidden >> label) & 1u) continue;
        const long multiplicity = label == blocks ? q - blocks : 1;
        std::string placed;
        placed.reserve(extended.size());
        for (std::size_t i = 0, k = 0; i < extended.size(); ++i) {
          placed.push_back(i == v_slot ? static_cast<char>(label) : key[k++]);
        }
        std::string relabeled;
        relabeled.reserve(keep_slots.size());
        std::array<int, kMaxColors + 1> remap;
        remap.fill(-1);
        int fresh = 0;
        for (std::size_t slot : keep_slots) {
          const int old = static_cast<unsigned char>(placed[slot]);
          if (remap[static_cast<std::size_t>(old)] < 0) remap[static_cast<std::size_t>(old)] = fresh++;
          relabeled.push_back(static_cast<char>(remap[static_cast<std::size_t>(old)]));
        }
        next_states[relabeled] += count * multiplicity;
      }
    }
    states = std::move(next_states);
    frontier = std::move(next_frontier);
  }
  BigInt total = 0;
  for (const auto& [key, count] : states) total += count;
  return total;
}

BigInt count_colorings_layer_sum(const MidLayerGraph& g, int q, const CountLimits& limits) {
  check_q(q);
  check_layer_sum(g, q, limits);
  const std::size_t split = std::min<std::size_t>(4, g.layer_size());
  const auto prefixes = lower_layer_prefixes(split, q);
  std::vector<BigInt> partial(prefixes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    LowerLayerWalker walker{g, q, std::vector<std::uint8_t>(g.layer_size(), 0)};
    std::copy(prefixes[i].first.begin(), prefixes[i].first.end(), walker.labels.begin());
    BigInt total = 0;
    walker.walk(split, prefixes[i].second, total);
    partial[i] = total;
  }
  BigInt total = 0;
  for (const auto& value : partial) total += value;
  return total;
}

BigInt count_colorings_layer_sum_serial(const MidLayerGraph& g, int q,
                                        const CountLimits& limits) {
  check_q(q);
  check_layer_sum(g, q, limits);
  LowerLayerWalker walker{g, q, std::vector<std::uint8_t>(g.layer_size(), 0)};
  BigInt total = 0;
  walker.walk(0, 0, total);
  return total;
}

std::vector<Coloring> brute_enumerate(const MidLayerGraph& g, int q, const CountLimits& limits) {
  check_q(q);
  check_enumerable(g, q, limits);
  // Vertices 0 and 1 share a layer, so every pair of colors is a prefix.
  const std::size_t prefix_count = static_cast<std::size_t>(q) * static_cast<std::size_t>(q);
  std::vector<std::vector<Coloring>> buckets(prefix_count);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < prefix_count; ++i) {
    Coloring f(g.size(), 0);
    f[0] = static_cast<Color>(i / static_cast<std::size_t>(q)) + 1;
    f[1] = static_cast<Color>(i % static_cast<std::size_t>(q)) + 1;
    enumerate_from(g, q, f, 2, buckets[i]);
  }
  std::vector<Coloring> out;
  for (auto& bucket : buckets) {
    out.insert(out.end(), std::make_move_iterator(bucket.begin()),
               std::make_move_iterator(bucket.end()));
  }
  return out;
}

std::vector<Coloring> brute_enumerate_serial(const MidLayerGraph& g, int q,
                                             const CountLimits& limits) {
  check_q(q);
  check_enumerable(g, q, limits);
  std::vector<Coloring> out;
  Coloring f(g.size(), 0);
  enumerate_from(g, q, f, 0, out);
  return out;
}

StructureCensus structure_census(const MidLayerGraph& g, int q, const CountLimits& limits) {
  StructureCensus census;
  census.threshold = threshold_polymer_size(q);
  const auto colorings = brute_enumerate(g, q, limits);
  const auto partitions = principal_partitions(q);
  census.total = static_cast<unsigned long>(colorings.size());
  census.flaw_classes.resize(partitions.size());
  unsigned long typical = 0;
  for (const auto& f : colorings) {
    bool is_typical = false;
    for (std::size_t i = 0; i < partitions.size(); ++i) {
      const VertexSet x = flaw_set(g, f, partitions[i]);
      census.flaw_classes[i][x] += 1;
      std::size_t largest = 0;
      for (const auto& component : two_linked_components(g, x)) {
        largest = std::max(largest, component.size());
      }
      if (largest < static_cast<std::size_t>(census.threshold)) is_typical = true;
    }
    if (is_typical) ++typical;
  }
  census.typical = typical;
  census.typical_fraction = fraction(census.typical, census.total);
  census.typical_fraction.canonicalize();
  census.bookkeeping_holds = true;
  for (const auto& classes : census.flaw_classes) {
    BigInt sum = 0;
    for (const auto& [x, count] : classes) sum += count;
    if (sum != census.total) census.bookkeeping_holds = false;
  }
  return census;
}

}  // namespace midlayer
