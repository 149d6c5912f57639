#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "midlayer/containers.hpp"
#include "midlayer/errors.hpp"

using namespace midlayer;

namespace {

// Random instance where every P vertex has >= a neighbors and every Q vertex <= b.
BipartiteInstance random_instance(std::mt19937_64& rng) {
  BipartiteInstance inst;
  inst.p_count = 5 + rng() % 30;
  const std::size_t q_count = 5 + rng() % 30;
  inst.b = 2 + static_cast<int>(rng() % 6);
  inst.q_neighbors.assign(q_count, {});
  std::vector<std::size_t> p_degree(inst.p_count, 0);
  for (auto& row : inst.q_neighbors) {
    std::set<std::size_t> chosen;
    const std::size_t want = 1 + rng() % static_cast<std::size_t>(inst.b);
    while (chosen.size() < std::min(want, inst.p_count)) chosen.insert(rng() % inst.p_count);
    row.assign(chosen.begin(), chosen.end());
    for (auto u : row) ++p_degree[u];
  }
  // Patch uncovered P vertices onto Q vertices with spare capacity.
  for (std::size_t u = 0; u < inst.p_count; ++u) {
    if (p_degree[u] > 0) continue;
    for (auto& row : inst.q_neighbors) {
      if (row.size() < static_cast<std::size_t>(inst.b)) {
        row.push_back(u);
        std::sort(row.begin(), row.end());
        ++p_degree[u];
        break;
      }
    }
    if (p_degree[u] == 0) {
      inst.q_neighbors.push_back({u});
      ++p_degree[u];
    }
  }
  inst.a = static_cast<int>(*std::min_element(p_degree.begin(), p_degree.end()));
  return inst;
}

bool covers(const BipartiteInstance& inst, const std::vector<std::size_t>& chosen) {
  std::vector<bool> hit(inst.p_count, false);
  for (auto j : chosen)
    for (auto u : inst.q_neighbors[j]) hit[u] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

}  // namespace

TEST_CASE("greedy cover examples") {
  BipartiteInstance single{1, {{0}}, 1, 1};
  const auto r = greedy_cover(single);
  CHECK(r.chosen == std::vector<std::size_t>{0});
  CHECK(r.bound == doctest::Approx(1.0));

  // Q vertex 1 touches nothing in P; it is never selected.
  BipartiteInstance isolated{2, {{0, 1}, {}}, 1, 2};
  const auto r2 = greedy_cover(isolated);
  CHECK(std::find(r2.chosen.begin(), r2.chosen.end(), 1) == r2.chosen.end());

  BipartiteInstance lying{2, {{0, 1}}, 2, 2};
  CHECK_THROWS_AS(greedy_cover(lying), ValidationError);
  BipartiteInstance too_wide{2, {{0, 1}}, 1, 1};
  CHECK_THROWS_AS(greedy_cover(too_wide), ValidationError);
}

TEST_CASE("greedy cover of a layer at d=3") {
  const MidLayerGraph g(3);
  BipartiteInstance inst;
  inst.p_count = g.layer_size();
  inst.a = 3;
  inst.b = 3;
  for (Vertex y : g.upper_layer()) {
    std::vector<std::size_t> row(g.neighbors(y).begin(), g.neighbors(y).end());
    inst.q_neighbors.push_back(row);
  }
  const auto r = greedy_cover(inst);
  CHECK(r.covers);
  CHECK(r.chosen.size() <= 6);
  CHECK(static_cast<double>(r.chosen.size()) <= (10.0 / 3.0) * (1.0 + std::log(3.0)));
}

TEST_CASE("greedy cover meets its bound on random instances") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_instance(rng);
    const auto r = greedy_cover(inst);
    CHECK(covers(inst, r.chosen));
    CHECK(static_cast<double>(r.chosen.size()) <=
          (static_cast<double>(inst.q_neighbors.size()) / inst.a) * (1.0 + std::log(inst.b)) + 1e-12);
  }
}

TEST_CASE("mutual cover examples") {
  const MidLayerGraph g(3);
  CHECK(mutual_cover(g, {}).cover.empty());
  const auto one = mutual_cover(g, {0});
  REQUIRE(one.cover.size() == 1);
  CHECK(g.adjacent(one.cover[0], 0));
}

TEST_CASE("mutual cover properties on random sets, d in {3,4}") {
  std::mt19937_64 rng(19);
  for (int d : {3, 4}) {
    const MidLayerGraph g(d);
    for (int trial = 0; trial < 100; ++trial) {
      const bool linked = trial % 2 == 0;
      const VertexSet x = linked ? testing_support::random_two_linked(rng, g, 1 + rng() % 6)
                                 : testing_support::random_subset(rng, g.all_vertices(), 1 + rng() % 8);
      const auto r = mutual_cover(g, x);
      CHECK(is_subset(x, neighborhood(g, r.cover)));
      CHECK(is_subset(r.cover, neighborhood(g, x)));
      CHECK(static_cast<double>(r.cover.size()) <=
            (static_cast<double>(neighborhood(g, x).size()) / d) * (1.0 + std::log(d)) + 1e-12);
      if (linked) CHECK(is_k_linked(g, r.cover, 4));
    }
  }
}

TEST_CASE("verify_approx_pair examples") {
  const MidLayerGraph g(4);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const VertexSet x = testing_support::random_subset(rng, g.all_vertices(), 1 + rng() % 6);
    for (int psi = 0; psi <= 2; ++psi) {
      const auto r = verify_approx_pair(g, x, {neighborhood(g, x), x, psi});
      CHECK(r.conditions.all());
    }
  }
  const auto bad = verify_approx_pair(g, {0}, {{}, g.all_vertices(), 1});
  CHECK_FALSE(bad.conditions.approx2);
  CHECK_THROWS_AS(verify_approx_pair(g, {0}, {{}, {0}, 3}), ParameterError);
  CHECK_THROWS_AS(verify_approx_pair(g, {0}, {{}, {0}, -1}), ParameterError);
}

TEST_CASE("full-pair pass implies per-layer pass") {
  std::mt19937_64 rng(29);
  const MidLayerGraph g(4);
  std::size_t passing = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const VertexSet x = testing_support::random_two_linked(rng, g, 1 + rng() % 5);
    const VertexSet n = neighborhood(g, x);
    ApproxPair pair{testing_support::random_subset(rng, n, n.size() - rng() % 3),
                    set_union(x, testing_support::random_subset(rng, g.all_vertices(), rng() % 3)),
                    static_cast<int>(rng() % 3)};
    const auto r = verify_approx_pair(g, x, pair);
    if (!r.conditions.all()) continue;
    ++passing;
    for (const auto& layer : r.layers) CHECK(layer.conditions.all());
  }
  CHECK(passing > 0);
}

TEST_CASE("construct_approx_pair") {
  const MidLayerGraph g(3);
  for (Vertex v = 0; v < g.size(); ++v) {
    const auto r = construct_approx_pair(g, {v}, 1);
    REQUIRE(r.success);
    CHECK(r.pair.f == neighborhood(g, {v}));
    CHECK(r.pair.s == VertexSet{v});
  }
  const auto empty = construct_approx_pair(g, {}, 1);
  CHECK(empty.success);
  CHECK(empty.pair.f.empty());
  CHECK(empty.pair.s.empty());
  CHECK_THROWS_AS(construct_approx_pair(g, {0}, 2), ParameterError);

  std::mt19937_64 rng(31);
  for (int d : {3, 4, 5}) {
    const MidLayerGraph gd(d);
    for (int trial = 0; trial < 60; ++trial) {
      const VertexSet x = testing_support::random_two_linked(rng, gd, 1 + rng() % 8);
      for (int psi = 0; 2 * psi <= d; ++psi) {
        const auto r = construct_approx_pair(gd, x, psi);
        if (!r.success) continue;
        const auto check = verify_approx_pair(gd, x, r.pair);
        CHECK(check.valid());
        for (const auto& layer : check.layers) CHECK(layer.gap_holds);
      }
    }
  }
}
