#include "midlayer/cluster.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <string>

#include "midlayer/errors.hpp"
#include "midlayer/parallel.hpp"

namespace midlayer {

std::string Cluster::shape(const PolymerModel& model) const {
  std::string out;
  for (std::size_t i : polymers) {
    if (!out.empty()) out += "+";
    out += std::to_string(model.polymer(i).size());
  }
  return out;
}

SimpleGraph incompatibility_graph(const PolymerModel& model,
                                  const std::vector<std::size_t>& multiset) {
  SimpleGraph h(static_cast<int>(multiset.size()));
  for (std::size_t a = 0; a < multiset.size(); ++a) {
    for (std::size_t b = a + 1; b < multiset.size(); ++b) {
      if (model.adjacent(multiset[a], multiset[b])) {
        h.add_edge(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return h;
}

namespace {

void check_k(std::size_t k, const ClusterLimits& limits) {
  if (k == 0) throw ParameterError("cluster size k must be at least 1");
  if (k > limits.max_k) {
    throw ResourceError("cluster size " + std::to_string(k) + " exceeds cap " +
                            std::to_string(limits.max_k),
                        static_cast<double>(k));
  }
}

using MultisetVisitor = std::function<void(const std::vector<std::size_t>&)>;

// Connected multisets of total size k whose smallest index is `anchor`.
void anchored_multisets(const PolymerModel& model, std::size_t k, std::size_t anchor,
                        const ClusterLimits& limits, std::atomic<std::size_t>& examined,
                        const MultisetVisitor& visit) {
  const std::size_t anchor_size = model.polymer(anchor).size();
  if (anchor_size > k) return;
  const std::size_t budget = k - anchor_size;

  // Everything in a connected multiset sits within `budget` adjacency steps
  // of the anchor.
  std::vector<std::size_t> candidates;
  if (budget > 0) {
    std::vector<char> seen(model.size(), 0);
    std::vector<std::size_t> layer{anchor};
    seen[anchor] = 1;
    candidates.push_back(anchor);
    for (std::size_t depth = 0; depth < budget && !layer.empty(); ++depth) {
      std::vector<std::size_t> next;
      for (std::size_t i : layer) {
        const auto row = model.row(i);
        for (std::size_t w = 0; w < row.size(); ++w) {
          for (std::uint64_t bits = row[w]; bits; bits &= bits - 1) {
            const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            if (j < anchor || seen[j] || model.polymer(j).size() > budget) continue;
            seen[j] = 1;
            next.push_back(j);
            candidates.push_back(j);
          }
        }
      }
      layer = std::move(next);
    }
    std::sort(candidates.begin(), candidates.end());
  }

  std::vector<std::size_t> multiset{anchor};
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t from,
                                                             std::size_t left) {
    if (left == 0) {
      if (examined.fetch_add(1, std::memory_order_relaxed) + 1 > limits.max_multisets) {
        throw ResourceError("more than " + std::to_string(limits.max_multisets) +
                                " candidate clusters",
                            static_cast<double>(limits.max_multisets));
      }
      if (incompatibility_graph(model, multiset).connected()) visit(multiset);
      return;
    }
    for (std::size_t c = from; c < candidates.size(); ++c) {
      const std::size_t size = model.polymer(candidates[c]).size();
      if (size > left) continue;
      multiset.push_back(candidates[c]);
      extend(c, left - size);
      multiset.pop_back();
    }
  };
  extend(0, budget);
}

Cluster make_cluster(const PolymerModel& model, const std::vector<std::size_t>& multiset,
                     const ClusterLimits& limits) {
  Cluster c;
  c.polymers = multiset;
  BigInt orderings = 1;
  for (std::size_t i = 2; i <= multiset.size(); ++i) orderings *= static_cast<unsigned long>(i);
  Rational product = 1;
  std::size_t run = 1;
  for (std::size_t i = 0; i < multiset.size(); ++i) {
    c.size += model.polymer(multiset[i]).size();
    product *= model.weight(multiset[i]);
    if (i > 0 && multiset[i] == multiset[i - 1]) {
      ++run;
      orderings /= static_cast<unsigned long>(run);
    } else {
      run = 1;
    }
  }
  c.orderings = orderings;
  c.ursell = ursell(incompatibility_graph(model, multiset), limits.max_ursell_vertices);
  c.contribution = Rational(orderings) * c.ursell * product;
  c.contribution.canonicalize();
  return c;
}

struct AnchorTotals {
  Rational value = 0;
  BigInt ordered = 0;
  std::size_t multisets = 0;
  std::map<std::string, BigInt> by_shape;
};

AnchorTotals anchor_totals(const PolymerModel& model, std::size_t k, std::size_t anchor,
                           const ClusterLimits& limits, std::atomic<std::size_t>& examined) {
  AnchorTotals out;
  anchored_multisets(model, k, anchor, limits, examined, [&](const auto& multiset) {
    const Cluster c = make_cluster(model, multiset, limits);
    out.value += c.contribution;
    out.ordered += c.orderings;
    ++out.multisets;
    out.by_shape[c.shape(model)] += c.orderings;
  });
  out.value.canonicalize();
  return out;
}

SeriesTerm combine(std::size_t k, std::vector<AnchorTotals>& parts) {
  SeriesTerm out;
  out.k = k;
  out.value = 0;
  out.cluster_count = 0;
  for (auto& part : parts) {
    out.value += part.value;
    out.cluster_count += part.ordered;
    out.multiset_count += part.multisets;
    for (auto& [shape, count] : part.by_shape) out.ordered_by_shape[shape] += count;
  }
  out.value.canonicalize();
  return out;
}

}  // namespace

std::vector<Cluster> enumerate_clusters(const PolymerModel& model, std::size_t k,
                                        const ClusterLimits& limits) {
  check_k(k, limits);
  std::vector<std::vector<Cluster>> parts(model.size());
  std::atomic<std::size_t> examined{0};
  parallel_for(model.size(), [&](std::size_t anchor) {
    anchored_multisets(model, k, anchor, limits, examined, [&](const auto& multiset) {
      parts[anchor].push_back(make_cluster(model, multiset, limits));
    });
  });
  std::vector<Cluster> out;
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(out));
  return out;
}

SeriesTerm series_term(const PolymerModel& model, std::size_t k, const ClusterLimits& limits) {
  check_k(k, limits);
  std::vector<AnchorTotals> parts(model.size());
  std::atomic<std::size_t> examined{0};
  parallel_for(model.size(), [&](std::size_t anchor) {
    parts[anchor] = anchor_totals(model, k, anchor, limits, examined);
  });
  return combine(k, parts);
}

SeriesTerm series_term_serial(const PolymerModel& model, std::size_t k,
                              const ClusterLimits& limits) {
  check_k(k, limits);
  std::vector<AnchorTotals> parts(model.size());
  std::atomic<std::size_t> examined{0};
  for (std::size_t anchor = 0; anchor < model.size(); ++anchor) {
    parts[anchor] = anchor_totals(model, k, anchor, limits, examined);
  }
  return combine(k, parts);
}

SeriesTerm series_term(const MidLayerGraph& g, const PolymerParams& params,
                       const PrincipalPartition& p, std::size_t k, const ClusterLimits& limits) {
  check_k(k, limits);
  PolymerParams capped = params;
  capped.max_size = std::min(params.max_size, k);
  return series_term(PolymerModel::build(g, capped, p), k, limits);
}

}  // namespace midlayer
