#include <doctest.h>

#include <bit>
#include <random>

#include "helpers.hpp"
#include "midlayer/errors.hpp"
#include "midlayer/exact.hpp"
#include "midlayer/graph.hpp"
#include "midlayer/isoperimetry.hpp"
#include "midlayer/rotation.hpp"
#include "oracles.hpp"

using namespace midlayer;
using testing_support::masks_of;

namespace {

std::string coordinate_string(std::uint32_t mask, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (mask >> i) & 1u ? '1' : '0';
  return s;
}

bool connected(const MidLayerGraph& g) {
  std::vector<bool> seen(g.size(), false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : g.neighbors(v))
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
  }
  return count == g.size();
}

}  // namespace

TEST_CASE("B_2 is a 6-cycle") {
  const MidLayerGraph g(2);
  CHECK(g.size() == 6);
  CHECK(g.edge_count() == 6);
  for (Vertex v = 0; v < g.size(); ++v) CHECK(g.neighbors(v).size() == 2);
  CHECK(connected(g));
}

TEST_CASE("B_3 has N=20 and 30 edges") {
  const MidLayerGraph g(3);
  CHECK(g.size() == 20);
  CHECK(g.edge_count() == 30);
}

TEST_CASE("d outside the supported range is rejected") {
  CHECK_THROWS_AS(MidLayerGraph(1), ParameterError);
  CHECK_THROWS_AS(MidLayerGraph(9), ParameterError);
  CHECK_NOTHROW(build_graph(8));
}

TEST_CASE("structure: size, regularity, bipartiteness, connectivity, order") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const MidLayerGraph g(d);
    CHECK(BigInt(static_cast<unsigned long>(g.size())) == 2 * binomial(2 * d - 1, d));
    CHECK(g.layer_size() * 2 == g.size());
    for (Vertex v = 0; v < g.size(); ++v) {
      CHECK(g.neighbors(v).size() == static_cast<std::size_t>(d));
      CHECK(g.weight(v) == (g.in_upper_layer(v) ? d : d - 1));
      for (Vertex u : g.neighbors(v)) {
        CHECK(g.in_upper_layer(u) != g.in_upper_layer(v));
        CHECK(oracle::adjacent(g.mask(u), g.mask(v)));
      }
    }
    CHECK(connected(g));
    for (Vertex v = 1; v < g.size(); ++v) {
      if (g.in_upper_layer(v) != g.in_upper_layer(v - 1)) continue;
      CHECK(coordinate_string(g.mask(v - 1), g.n()) < coordinate_string(g.mask(v), g.n()));
    }
  }
}

TEST_CASE("adjacency agrees with the Hamming-distance oracle") {
  const MidLayerGraph g(3);
  for (Vertex u = 0; u < g.size(); ++u)
    for (Vertex v = 0; v < g.size(); ++v) {
      CHECK(g.adjacent(u, v) == oracle::adjacent(g.mask(u), g.mask(v)));
      CHECK(g.distance(u, v) == oracle::distance(g.mask(u), g.mask(v)));
    }
}

TEST_CASE("neighborhood examples") {
  const MidLayerGraph g2(2);
  CHECK(neighborhood(g2, {}).empty());
  CHECK(neighborhood(g2, {0}).size() == 2);
  const MidLayerGraph g3(3);
  CHECK(neighborhood(g3, g3.lower_layer()) == g3.upper_layer());
  const VertexSet x{0, 1};
  CHECK(closed_neighborhood(g3, x) == set_union(x, neighborhood(g3, x)));
  CHECK(outer_boundary(g3, x) == set_difference(neighborhood(g3, x), x));
}

TEST_CASE("neighborhood agrees with the oracle on random sets") {
  std::mt19937_64 rng(7);
  const MidLayerGraph g(4);
  const auto all = oracle::middle_layers(4);
  for (int trial = 0; trial < 50; ++trial) {
    const VertexSet x = testing_support::random_subset(rng, g.all_vertices(), 1 + rng() % 6);
    CHECK(masks_of(g, neighborhood(g, x)) == oracle::neighbors_of(all, masks_of(g, x)));
  }
}

TEST_CASE("two_linked_components examples") {
  const MidLayerGraph g(2);
  CHECK(two_linked_components(g, {}).empty());
  // Antipodal vertices of the 6-cycle.
  Vertex a = 0;
  Vertex b = 0;
  for (Vertex v = 0; v < g.size(); ++v)
    if (g.distance(0, v) == 3) b = v;
  CHECK(two_linked_components(g, make_vertex_set({a, b})).size() == 2);
  for (Vertex v = 0; v < g.size(); ++v)
    if (g.distance(0, v) == 2) CHECK(two_linked_components(g, make_vertex_set({0, v})).size() == 1);
}

TEST_CASE("two_linked_components is a partition into maximal pieces") {
  std::mt19937_64 rng(11);
  const MidLayerGraph g(4);
  for (int trial = 0; trial < 100; ++trial) {
    const VertexSet x = testing_support::random_subset(rng, g.all_vertices(), 1 + rng() % 8);
    const auto parts = two_linked_components(g, x);
    VertexSet together;
    for (const auto& part : parts) {
      CHECK(is_two_linked(g, part));
      CHECK(oracle::linked(masks_of(g, part), 2));
      together = set_union(together, part);
    }
    CHECK(together == x);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        CHECK_FALSE(is_two_linked(g, set_union(parts[i], parts[j])));
    CHECK(is_two_linked(g, x) == (parts.size() <= 1));
  }
}

TEST_CASE("closure examples") {
  const MidLayerGraph g(3);
  CHECK(closure(g, {}).empty());
  CHECK(closure(g, g.lower_layer()) == g.lower_layer());
  for (Vertex v = 0; v < g.size(); ++v) CHECK(closure(g, {v}) == VertexSet{v});
  CHECK_THROWS_AS(closure(g, make_vertex_set({0, static_cast<Vertex>(g.layer_size())})),
                  ParameterError);
}

TEST_CASE("closure is monotone and idempotent; closure_minus matches its definition") {
  std::mt19937_64 rng(3);
  const MidLayerGraph g(4);
  const VertexSet layer = g.lower_layer();
  for (int trial = 0; trial < 60; ++trial) {
    const VertexSet x = testing_support::random_subset(rng, layer, 1 + rng() % 6);
    const VertexSet y = set_union(x, testing_support::random_subset(rng, layer, rng() % 5));
    const VertexSet cx = closure(g, x);
    CHECK(is_subset(x, cx));
    CHECK(is_subset(cx, closure(g, y)));
    CHECK(closure(g, cx) == cx);
    VertexSet expected;
    for (Vertex u = 0; u < g.size(); ++u)
      if (is_subset(neighborhood(g, {u}), cx)) expected.push_back(u);
    CHECK(closure_minus(g, x) == expected);
  }
}

TEST_CASE("rotation preserves adjacency") {
  for (int d = 2; d <= 6; ++d) {
    const MidLayerGraph g(d);
    const RotatedView view(g);
    for (Vertex v = 0; v < g.size(); ++v)
      for (Vertex u : g.neighbors(v)) CHECK(std::popcount(view.rotated(u) ^ view.rotated(v)) == 1);
  }
}

TEST_CASE("levels: perfect matching across halves for even k, no edges for odd k") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const MidLayerGraph g(d);
    const RotatedView view(g);
    for (int k = 0; k <= g.n() - 1; ++k) {
      const VertexSet v0 = view.level_set(k, 0);
      const VertexSet v1 = view.level_set(k, 1);
      std::size_t edges = 0;
      for (Vertex a : v0) {
        std::size_t here = 0;
        for (Vertex b : g.neighbors(a))
          if (contains(v1, b)) ++here;
        edges += here;
        if (k % 2 == 0) CHECK(here == 1);
      }
      if (k % 2 == 0) {
        CHECK(v0.size() == v1.size());
        CHECK(edges == v0.size());
      } else {
        CHECK(edges == 0);
      }
    }
  }
}

TEST_CASE("V* size and mates") {
  for (int d = 2; d <= 6; ++d) {
    const MidLayerGraph g(d);
    const RotatedView view(g);
    CHECK(BigInt(static_cast<unsigned long>(view.v_star().size())) ==
          binomial(2 * d - 2, d - 1));
    for (Vertex v : view.v_star()) {
      const Vertex m = view.mate(v);
      CHECK(view.half(m) == 1);
      CHECK(view.level(m) == view.level(v));
      CHECK((view.rotated(m) ^ view.rotated(v)) == (1u << (g.n() - 1)));
    }
    for (Vertex v = 0; v < g.size(); ++v)
      if (!view.in_v_star(v)) CHECK_THROWS_AS(view.mate(v), ParameterError);
  }
  const MidLayerGraph g(3);
  CHECK(RotatedView(g).v_star().size() == 6);
}

TEST_CASE("associate_w passes its defining checks") {
  for (int d = 2; d <= 6; ++d) {
    const MidLayerGraph g(d);
    const RotatedView view(g);
    for (Vertex v : view.v_star()) {
      if (view.rotated_weight(v) < 4) {
        CHECK_THROWS_AS(view.associate_w(v), ParameterError);
        continue;
      }
      const auto w = view.associate_w(v);
      CHECK(view.in_v_star(w.w));
      CHECK(view.rotated_weight(w.w) == view.rotated_weight(v) - 4);
      CHECK(w.path.front() == v);
      CHECK(w.path.back() == w.w);
      for (std::size_t i = 0; i + 1 < w.path.size(); ++i) CHECK(g.adjacent(w.path[i], w.path[i + 1]));
      for (Vertex p : w.path) CHECK(view.half(p) == 0);
    }
  }
}

TEST_CASE("lovasz_bound examples") {
  CHECK(lovasz_bound(10, 3) == doctest::Approx(10.0).epsilon(1e-9));
  for (int d = 2; d <= 8; ++d) CHECK(lovasz_bound(1, d) == doctest::Approx(d).epsilon(1e-9));
  const double mid = static_cast<double>(lovasz_bound(12, 3));
  CHECK(mid > 10.0);
  CHECK(mid < 15.0);
  CHECK(real_binomial(5.0L, 2) == doctest::Approx(10.0));
}

TEST_CASE("isoperimetry examples") {
  for (int d = 2; d <= 6; ++d) {
    const MidLayerGraph g(d);
    const auto r = isoperimetry_check(g, {0});
    CHECK(r.neighborhood_size == static_cast<std::size_t>(d));
    CHECK(r.small_clause_holds);
  }
  const MidLayerGraph g4(4);
  const auto r = isoperimetry_check(g4, {0});
  CHECK(r.small_clause_applies);
  CHECK(static_cast<double>(r.neighborhood_size) - (4.0 - 0.5) == doctest::Approx(0.5));
  const MidLayerGraph g5(5);
  const auto sweep = isoperimetry_sweep(g5, 2);
  CHECK(sweep.small_clause_failures == 0);
  CHECK(sweep.instances > 0);
}

TEST_CASE("Lovász bound never exceeds |N(X)| for |X| <= 3 at d=3 (independent count)") {
  const MidLayerGraph g(3);
  const auto all = oracle::middle_layers(3);
  const VertexSet layer = g.lower_layer();
  for (std::size_t i = 0; i < layer.size(); ++i)
    for (std::size_t j = i; j < layer.size(); ++j)
      for (std::size_t k = j; k < layer.size(); ++k) {
        const VertexSet x = make_vertex_set({layer[i], layer[j], layer[k]});
        const auto n = oracle::neighbors_of(all, masks_of(g, x)).size();
        CHECK(static_cast<long double>(n) >= lovasz_bound(x.size(), 3) - 1e-9L);
      }
}
