#include "midlayer/polymer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <omp.h>

#include "midlayer/errors.hpp"

namespace midlayer {

namespace {

// Neighbors of v in G^2 (distance 1 or 2), sorted.
std::vector<std::vector<Vertex>> square_adjacency(const MidLayerGraph& g) {
  std::vector<std::vector<Vertex>> out(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    auto& row = out[v];
    for (Vertex u : g.neighbors(v)) {
      row.push_back(u);
      for (Vertex w : g.neighbors(u)) {
        if (w != v) row.push_back(w);
      }
    }
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return out;
}

Polymer finish_polymer(const MidLayerGraph& g, VertexSet x) {
  Polymer p;
  const VertexSet n = neighborhood(g, x);
  p.neighborhood_size = n.size();
  p.closure = set_union(x, n);
  p.vertices = std::move(x);
  return p;
}

// ESU-style enumeration of connected sets of G^2. With min_rooted, only sets
// whose minimum is the root; otherwise every set containing the root.
class Enumerator {
 public:
  Enumerator(const MidLayerGraph& g, const std::vector<std::vector<Vertex>>& sq,
             const PolymerParams& params, std::vector<Polymer>& out)
      : g_(g),
        sq_(sq),
        params_(params),
        out_(out),
        reach_(g.size(), 0),
        nb_(g.size(), 0) {}

  void run(Vertex root, bool min_rooted) {
    if (params_.max_size == 0) return;
    root_ = root;
    min_rooted_ = min_rooted;
    std::vector<Vertex> ext;
    for (Vertex u : sq_[root]) {
      if (!min_rooted || u > root) ext.push_back(u);
    }
    add(root);
    if (nb_size_ <= params_.max_boundary) extend(ext);
    remove(root);
  }

 private:
  void add(Vertex w) {
    sub_.push_back(w);
    ++reach_[w];
    for (Vertex u : sq_[w]) ++reach_[u];
    for (Vertex u : g_.neighbors(w)) {
      if (nb_[u]++ == 0) ++nb_size_;
    }
  }

  void remove(Vertex w) {
    sub_.pop_back();
    --reach_[w];
    for (Vertex u : sq_[w]) --reach_[u];
    for (Vertex u : g_.neighbors(w)) {
      if (--nb_[u] == 0) --nb_size_;
    }
  }

  void extend(std::vector<Vertex> ext) {
    VertexSet set(sub_.begin(), sub_.end());
    std::sort(set.begin(), set.end());
    out_.push_back(finish_polymer(g_, std::move(set)));
    if (sub_.size() >= params_.max_size) return;
    while (!ext.empty()) {
      const Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      for (Vertex u : sq_[w]) {
        if (reach_[u] == 0 && (!min_rooted_ || u > root_)) next.push_back(u);
      }
      add(w);
      if (nb_size_ <= params_.max_boundary) extend(std::move(next));
      remove(w);
    }
  }

  const MidLayerGraph& g_;
  const std::vector<std::vector<Vertex>>& sq_;
  const PolymerParams& params_;
  std::vector<Polymer>& out_;
  std::vector<int> reach_;
  std::vector<int> nb_;
  std::size_t nb_size_ = 0;
  std::vector<Vertex> sub_;
  Vertex root_ = 0;
  bool min_rooted_ = true;
};

void check_root(const MidLayerGraph& g, std::optional<Vertex> root) {
  if (root && *root >= g.size()) {
    throw ParameterError("root vertex " + std::to_string(*root) + " out of range");
  }
}

}  // namespace

std::size_t Polymer::closure_upper(const MidLayerGraph& g) const {
  return static_cast<std::size_t>(
      std::count_if(closure.begin(), closure.end(), [&](Vertex v) { return g.in_upper_layer(v); }));
}

std::size_t Polymer::closure_lower(const MidLayerGraph& g) const {
  return closure.size() - closure_upper(g);
}

bool polymer_less(const Polymer& a, const Polymer& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.vertices < b.vertices;
}

Polymer make_polymer(const MidLayerGraph& g, VertexSet x) {
  x = make_vertex_set(std::move(x));
  if (x.empty()) throw ParameterError("polymer must be nonempty");
  if (x.back() >= g.size()) throw ParameterError("polymer vertex out of range");
  if (!is_two_linked(g, x)) throw ParameterError("polymer must be 2-linked");
  return finish_polymer(g, std::move(x));
}

bool is_admissible(const Polymer& polymer, const PolymerParams& params) {
  return polymer.size() >= 1 && polymer.size() <= params.max_size &&
         polymer.neighborhood_size <= params.max_boundary;
}

std::vector<Polymer> enumerate_polymers_serial(const MidLayerGraph& g,
                                               const PolymerParams& params,
                                               std::optional<Vertex> root) {
  check_root(g, root);
  const auto sq = square_adjacency(g);
  std::vector<Polymer> out;
  Enumerator e(g, sq, params, out);
  if (root) {
    e.run(*root, false);
  } else {
    for (Vertex v = 0; v < g.size(); ++v) e.run(v, true);
  }
  std::sort(out.begin(), out.end(), polymer_less);
  return out;
}

std::vector<Polymer> enumerate_polymers(const MidLayerGraph& g, const PolymerParams& params,
                                        std::optional<Vertex> root) {
  if (root) return enumerate_polymers_serial(g, params, root);
  const auto sq = square_adjacency(g);
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  std::vector<std::vector<Polymer>> per_root(g.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t v = 0; v < n; ++v) {
    Enumerator e(g, sq, params, per_root[static_cast<std::size_t>(v)]);
    e.run(static_cast<Vertex>(v), true);
  }
  std::vector<Polymer> out;
  for (auto& chunk : per_root) {
    std::move(chunk.begin(), chunk.end(), std::back_inserter(out));
  }
  std::sort(out.begin(), out.end(), polymer_less);
  return out;
}

bool polymer_adjacent(const MidLayerGraph& g, const Polymer& a, const Polymer& b) {
  for (Vertex u : a.vertices) {
    for (Vertex v : b.vertices) {
      if (g.distance(u, v) <= 2) return true;
    }
  }
  return false;
}

BigInt local_defect_count(const MidLayerGraph& g, const Polymer& polymer,
                          const PrincipalPartition& p) {
  const VertexSet& gamma = polymer.vertices;
  const VertexSet boundary = set_difference(polymer.closure, gamma);

  double leaves = 1.0;
  for (Vertex v : gamma) leaves *= std::popcount(p.wrong_mask(g, v));
  if (leaves > 4.0e9) {
    throw ResourceError("local weight needs " + std::to_string(leaves) + " inner colorings",
                        leaves);
  }

  // For each boundary vertex: positions in gamma of its neighbors.
  std::vector<std::vector<std::size_t>> touches(boundary.size());
  std::vector<int> palette(boundary.size());
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    palette[i] = std::popcount(p.right_mask(g, boundary[i]));
    for (Vertex u : g.neighbors(boundary[i])) {
      const auto it = std::lower_bound(gamma.begin(), gamma.end(), u);
      if (it != gamma.end() && *it == u) {
        touches[i].push_back(static_cast<std::size_t>(it - gamma.begin()));
      }
    }
  }
  std::vector<std::vector<Color>> choices(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    choices[i] = colors_of_mask(p.wrong_mask(g, gamma[i]));
  }

  BigInt total = 0;
  std::vector<Color> colors(gamma.size(), 0);
  std::vector<unsigned long> exponent(static_cast<std::size_t>(kMaxColors) + 1, 0);
  std::vector<std::size_t> pos(gamma.size(), 0);
  // Odometer over the inner colorings.
  for (;;) {
    for (std::size_t i = 0; i < gamma.size(); ++i) colors[i] = choices[i][pos[i]];
    std::fill(exponent.begin(), exponent.end(), 0);
    bool zero = false;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      std::uint32_t used = 0;
      for (std::size_t j : touches[i]) used |= 1u << (colors[j] - 1);
      const int free = palette[i] - std::popcount(used);
      if (free <= 0) {
        zero = true;
        break;
      }
      ++exponent[static_cast<std::size_t>(free)];
    }
    if (!zero) {
      BigInt term = 1;
      for (std::size_t m = 2; m < exponent.size(); ++m) {
        if (exponent[m]) term *= power(BigInt(static_cast<unsigned long>(m)), exponent[m]);
      }
      total += term;
    }
    std::size_t i = 0;
    while (i < pos.size() && ++pos[i] == choices[i].size()) {
      pos[i] = 0;
      ++i;
    }
    if (i == pos.size()) break;
  }
  return total;
}

Rational weight(const MidLayerGraph& g, const Polymer& polymer, const PrincipalPartition& p) {
  const BigInt denominator =
      power(BigInt(p.a_size()), polymer.closure_upper(g)) *
      power(BigInt(p.b_size()), polymer.closure_lower(g));
  Rational out(local_defect_count(g, polymer, p), denominator);
  out.canonicalize();
  return out;
}

Rational weight_global_oracle(const MidLayerGraph& g, const Polymer& polymer,
                              const PrincipalPartition& p, const CountLimits& limits) {
  const auto colorings = brute_enumerate(g, p.q(), limits);
  BigInt hits = 0;
  for (const auto& f : colorings) {
    if (flaw_set(g, f, p) == polymer.vertices) ++hits;
  }
  const unsigned long half = g.layer_size();
  Rational out(hits, power(BigInt(p.a_size() * p.b_size()), half));
  out.canonicalize();
  return out;
}

Interval tilted_weight(const MidLayerGraph& g, const Polymer& polymer, const Rational& omega,
                       mpfr_prec_t precision) {
  const Rational exponent = fraction(static_cast<long>(polymer.size()), g.d());
  return Interval(omega, precision) * Interval(exponent, precision).exp();
}

}  // namespace midlayer
