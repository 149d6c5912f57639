#include "midlayer/containers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "midlayer/errors.hpp"

namespace midlayer {

namespace {

constexpr double kBoundSlack = 1e-9;

std::vector<char> membership(const MidLayerGraph& g, const VertexSet& set) {
  std::vector<char> in(g.size(), 0);
  for (Vertex v : set) in[v] = 1;
  return in;
}

void check_set(const MidLayerGraph& g, const VertexSet& x, const char* name) {
  if (!std::is_sorted(x.begin(), x.end()) ||
      std::adjacent_find(x.begin(), x.end()) != x.end()) {
    throw ParameterError(std::string(name) + " must be sorted and duplicate-free");
  }
  if (!x.empty() && x.back() >= g.size()) {
    throw ParameterError(std::string(name) + " has a vertex out of range");
  }
}

int count_in(const MidLayerGraph& g, Vertex v, const std::vector<char>& in) {
  int out = 0;
  for (Vertex u : g.neighbors(v)) out += in[u];
  return out;
}

PairConditions conditions_for(const MidLayerGraph& g, const VertexSet& x, const VertexSet& f,
                              const VertexSet& s, int psi) {
  PairConditions out;
  out.approx1 = is_subset(f, neighborhood(g, x)) && is_subset(x, s);
  const auto in_f = membership(g, f);
  const auto in_s = membership(g, s);
  out.approx2 = std::all_of(s.begin(), s.end(), [&](Vertex u) {
    return static_cast<int>(g.neighbors(u).size()) - count_in(g, u, in_f) <= psi;
  });
  out.approx3 = true;
  for (Vertex v = 0; v < g.size() && out.approx3; ++v) {
    if (!in_f[v] && count_in(g, v, in_s) > psi) out.approx3 = false;
  }
  return out;
}

VertexSet restrict_layer(const MidLayerGraph& g, const VertexSet& set, bool upper) {
  VertexSet out;
  for (Vertex v : set) {
    if (g.in_upper_layer(v) == upper) out.push_back(v);
  }
  return out;
}

}  // namespace

CoverReport greedy_cover(const BipartiteInstance& instance) {
  if (instance.a < 1 || instance.b < 1) throw ValidationError("degrees a, b must be >= 1");
  std::vector<int> p_degree(instance.p_count, 0);
  for (std::size_t j = 0; j < instance.q_neighbors.size(); ++j) {
    const auto& row = instance.q_neighbors[j];
    if (static_cast<int>(row.size()) > instance.b) {
      throw ValidationError("Q vertex " + std::to_string(j) + " has degree " +
                            std::to_string(row.size()) + " > b");
    }
    for (std::size_t u : row) {
      if (u >= instance.p_count) throw ValidationError("P index out of range");
      ++p_degree[u];
    }
  }
  for (std::size_t u = 0; u < instance.p_count; ++u) {
    if (p_degree[u] < instance.a) {
      throw ValidationError("P vertex " + std::to_string(u) + " has degree " +
                            std::to_string(p_degree[u]) + " < a");
    }
  }

  CoverReport out;
  out.bound = (static_cast<double>(instance.q_neighbors.size()) / instance.a) *
              (1.0 + std::log(static_cast<double>(instance.b)));
  std::vector<char> covered(instance.p_count, 0);
  std::vector<char> used(instance.q_neighbors.size(), 0);
  std::size_t remaining = instance.p_count;
  while (remaining > 0) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t j = 0; j < instance.q_neighbors.size(); ++j) {
      if (used[j]) continue;
      std::size_t gain = 0;
      for (std::size_t u : instance.q_neighbors[j]) gain += covered[u] ? 0 : 1;
      if (gain > best_gain) {
        best = j;
        best_gain = gain;
      }
    }
    if (best_gain == 0) break;
    used[best] = 1;
    out.chosen.push_back(best);
    for (std::size_t u : instance.q_neighbors[best]) {
      if (!covered[u]) {
        covered[u] = 1;
        --remaining;
      }
    }
  }
  out.covers = remaining == 0;
  out.within_bound = static_cast<double>(out.chosen.size()) <= out.bound + kBoundSlack;
  if (!out.covers || !out.within_bound) {
    throw ConsistencyError("greedy cover missed its guarantee (size " +
                           std::to_string(out.chosen.size()) + ", bound " +
                           std::to_string(out.bound) + ")");
  }
  return out;
}

MutualCoverReport mutual_cover(const MidLayerGraph& g, const VertexSet& x) {
  check_set(g, x, "X");
  MutualCoverReport out;
  VertexSet cover;
  for (bool upper : {false, true}) {
    const VertexSet xi = restrict_layer(g, x, upper);
    if (xi.empty()) continue;
    const VertexSet q = neighborhood(g, xi);
    BipartiteInstance instance;
    instance.p_count = xi.size();
    instance.a = g.d();
    instance.b = 1;
    for (Vertex y : q) {
      std::vector<std::size_t> row;
      for (Vertex u : g.neighbors(y)) {
        const auto it = std::lower_bound(xi.begin(), xi.end(), u);
        if (it != xi.end() && *it == u) row.push_back(static_cast<std::size_t>(it - xi.begin()));
      }
      instance.b = std::max(instance.b, static_cast<int>(row.size()));
      instance.q_neighbors.push_back(std::move(row));
    }
    const CoverReport greedy = greedy_cover(instance);
    VertexSet chosen;
    for (std::size_t j : greedy.chosen) chosen.push_back(q[j]);
    std::sort(chosen.begin(), chosen.end());
    // Drop members whose removal keeps X_i covered.
    std::vector<int> hits(g.size(), 0);
    for (Vertex y : chosen) {
      for (Vertex u : g.neighbors(y)) ++hits[u];
    }
    VertexSet kept;
    for (Vertex y : chosen) {
      bool needed = false;
      for (Vertex u : g.neighbors(y)) {
        if (hits[u] == 1 && std::binary_search(xi.begin(), xi.end(), u)) needed = true;
      }
      if (needed) {
        kept.push_back(y);
      } else {
        for (Vertex u : g.neighbors(y)) --hits[u];
      }
    }
    cover = set_union(cover, kept);
  }
  out.cover = std::move(cover);
  const double nx = static_cast<double>(neighborhood(g, x).size());
  out.bound = (nx / g.d()) * (1.0 + std::log(static_cast<double>(g.d())));
  out.covers_x = is_subset(x, neighborhood(g, out.cover));
  out.inside_boundary = is_subset(out.cover, neighborhood(g, x));
  out.within_bound = static_cast<double>(out.cover.size()) <= out.bound + kBoundSlack;
  return out;
}

bool ApproxPairReport::valid() const {
  return conditions.all() && layers[0].conditions.all() && layers[1].conditions.all() &&
         layers[0].gap_holds && layers[1].gap_holds;
}

ApproxPairReport verify_approx_pair(const MidLayerGraph& g, const VertexSet& x,
                                    const ApproxPair& pair) {
  if (pair.psi < 0 || 2 * pair.psi > g.d()) {
    throw ParameterError("psi must lie in [0, d/2]");
  }
  check_set(g, x, "X");
  check_set(g, pair.f, "F");
  check_set(g, pair.s, "S");
  ApproxPairReport out;
  out.conditions = conditions_for(g, x, pair.f, pair.s, pair.psi);
  for (int i = 0; i < 2; ++i) {
    // Layer 1: X in L_{d-1}; its neighborhood is in L_d.
    const bool x_upper = i == 1;
    LayerPairReport& layer = out.layers[i];
    layer.x = restrict_layer(g, x, x_upper);
    layer.f = restrict_layer(g, pair.f, !x_upper);
    layer.s = restrict_layer(g, pair.s, x_upper);
    layer.conditions = conditions_for(g, layer.x, layer.f, layer.s, pair.psi);
    layer.boundary = neighborhood(g, layer.x).size();
    const long d = g.d();
    const long psi = pair.psi;
    const long lhs = static_cast<long>(layer.s.size()) * (d - psi);
    const long rhs =
        static_cast<long>(layer.f.size()) * (d - psi) + 2 * static_cast<long>(layer.boundary) * psi;
    layer.gap_holds = lhs <= rhs;
  }
  return out;
}

ApproxPairResult construct_approx_pair(const MidLayerGraph& g, const VertexSet& x, int psi,
                                       std::size_t max_iterations) {
  if (psi < 0 || 2 * psi > g.d()) throw ParameterError("psi must lie in [0, d/2]");
  check_set(g, x, "X");
  ApproxPairResult out;
  out.pair.psi = psi;
  std::vector<char> in_f = membership(g, neighborhood(g, x));
  std::vector<char> in_s = membership(g, x);

  bool changed = true;
  while (changed) {
    if (out.iterations >= max_iterations) {
      out.failure = "no fixed point within " + std::to_string(max_iterations) + " iterations";
      return out;
    }
    ++out.iterations;
    changed = false;

    // Grow S by every admissible candidate at once.
    std::vector<char> grow(g.size(), 0);
    for (Vertex u = 0; u < g.size(); ++u) {
      if (!in_s[u] && static_cast<int>(g.neighbors(u).size()) - count_in(g, u, in_f) <= psi) {
        grow[u] = 1;
      }
    }
    std::vector<char> add(g.size(), 0);
    for (Vertex u = 0; u < g.size(); ++u) {
      if (!grow[u]) continue;
      bool ok = true;
      for (Vertex v : g.neighbors(u)) {
        if (!in_f[v] && count_in(g, v, in_s) + count_in(g, v, grow) > psi) ok = false;
      }
      add[u] = ok;
    }
    for (Vertex u = 0; u < g.size(); ++u) {
      if (add[u]) {
        in_s[u] = 1;
        changed = true;
      }
    }

    // Shrink F the same way.
    std::vector<char> drop(g.size(), 0);
    for (Vertex v = 0; v < g.size(); ++v) {
      if (in_f[v] && count_in(g, v, in_s) <= psi) drop[v] = 1;
    }
    std::vector<char> remove(g.size(), 0);
    for (Vertex v = 0; v < g.size(); ++v) {
      if (!drop[v]) continue;
      bool ok = true;
      for (Vertex u : g.neighbors(v)) {
        if (!in_s[u]) continue;
        const int outside = static_cast<int>(g.neighbors(u).size()) - count_in(g, u, in_f);
        if (outside + count_in(g, u, drop) > psi) ok = false;
      }
      remove[v] = ok;
    }
    for (Vertex v = 0; v < g.size(); ++v) {
      if (remove[v]) {
        in_f[v] = 0;
        changed = true;
      }
    }
  }

  for (Vertex v = 0; v < g.size(); ++v) {
    if (in_f[v]) out.pair.f.push_back(v);
    if (in_s[v]) out.pair.s.push_back(v);
  }
  out.report = verify_approx_pair(g, x, out.pair);
  out.success = out.report.valid();
  if (!out.success) out.failure = "fixed point failed verification";
  return out;
}

}  // namespace midlayer
