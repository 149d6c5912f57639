#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "midlayer/coloring.hpp"
#include "midlayer/counting.hpp"
#include "midlayer/errors.hpp"
#include "oracles.hpp"

using namespace midlayer;

namespace {

BigInt cycle_formula(int q) {
  BigInt r = q - 1;
  return r * r * r * r * r * r + r;
}

// Independent flaw: upper vertices colored from B plus lower ones from A.
VertexSet direct_flaw(const MidLayerGraph& g, const Coloring& f, const PrincipalPartition& p) {
  VertexSet out;
  for (Vertex v = 0; v < g.size(); ++v) {
    const bool wrong = g.in_upper_layer(v) ? p.in_b(f[v]) : p.in_a(f[v]);
    if (wrong) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("principal partition counts") {
  CHECK(principal_partitions(4).size() == 6);
  CHECK(principal_partitions(6).size() == 20);
  CHECK(principal_partitions(5).size() == 20);
  const auto two = principal_partitions(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].a_colors() == std::vector<Color>{1});
  CHECK(two[1].a_colors() == std::vector<Color>{2});
  for (int q = 2; q <= 9; ++q) {
    std::size_t brute = 0;
    for (std::uint32_t m = 0; m < (1u << q); ++m) {
      const int a = std::popcount(m);
      if (a == q / 2 || a == (q + 1) / 2) ++brute;
    }
    const auto parts = principal_partitions(q);
    CHECK(parts.size() == brute);
    for (const auto& p : parts) {
      CHECK((p.a_mask() & p.b_mask()) == 0);
      CHECK((p.a_mask() | p.b_mask()) == (1u << q) - 1);
    }
  }
  CHECK_THROWS_AS(PrincipalPartition(4, 0b0001), ParameterError);
}

TEST_CASE("flaw examples") {
  const MidLayerGraph g(2);
  const auto parts = principal_partitions(4);
  const Coloring ground = cyclic_ground_state(g, parts[0]);
  CHECK(flaw(g, ground, parts[0]).flaw.empty());
  CHECK(flaw(g, ground, parts[0].swapped()).flaw == g.all_vertices());

  // One wrong-side vertex: 0 takes a[1], its upper neighbors a[0], the other
  // upper vertex a[1]; lower vertices 1 and 2 take b[0] and b[1]. Every other
  // partition then has at least two flawed vertices.
  const auto a = parts[0].a_colors();
  const auto b = parts[0].b_colors();
  Coloring f(g.size());
  for (Vertex v : g.upper_layer()) f[v] = g.adjacent(0, v) ? a[0] : a[1];
  f[0] = a[1];
  f[1] = b[0];
  f[2] = b[1];
  REQUIRE(is_proper(g, f));
  const FlawReport one = flaw(g, f, parts[0]);
  CHECK(one.flaw == VertexSet{0});
  CHECK(one.max_component_size == 1);
  // The argmin partition is unique for this coloring.
  std::size_t best_count = 0;
  std::size_t best_size = g.size() + 1;
  for (const auto& p : parts) {
    const std::size_t s = flaw_set(g, f, p).size();
    if (s < best_size) {
      best_size = s;
      best_count = 1;
    } else if (s == best_size) {
      ++best_count;
    }
  }
  CHECK(best_size == 1);
  CHECK(best_count == 1);
  CHECK(nearest_ground_state(g, f, 4).partition == parts[0]);

  Coloring improper(g.size(), 1);
  CHECK_THROWS_AS(flaw(g, improper, parts[0]), ValidationError);
}

TEST_CASE("flaw agrees with the definition and partitions V") {
  const MidLayerGraph g(2);
  const auto colorings = brute_enumerate(g, 4);
  for (const auto& p : principal_partitions(4)) {
    for (const auto& f : colorings) {
      const auto report = flaw(g, f, p);
      CHECK(report.flaw == direct_flaw(g, f, p));
      VertexSet agreement;
      for (Vertex v = 0; v < g.size(); ++v)
        if (!contains(report.flaw, v)) agreement.push_back(v);
      CHECK(set_union(report.flaw, agreement) == g.all_vertices());
      VertexSet joined;
      for (const auto& c : report.components) joined = set_union(joined, c);
      CHECK(joined == report.flaw);
    }
  }
}

TEST_CASE("nearest_ground_state: ground states and tie-breaking") {
  const MidLayerGraph g(2);
  const auto parts = principal_partitions(4);
  for (const auto& p : parts) {
    const auto r = nearest_ground_state(g, cyclic_ground_state(g, p), 4);
    CHECK(r.flaw.empty());
    CHECK(r.partition == p);
  }
  for (const auto& f : brute_enumerate(g, 4)) {
    const auto r = nearest_ground_state(g, f, 4);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const std::size_t s = flaw_set(g, f, parts[i]).size();
      CHECK(s >= r.flaw.size());
      if (s == r.flaw.size()) {
        // First minimizer wins.
        CHECK(parts[i] == r.partition);
        break;
      }
    }
  }
}

TEST_CASE("nearest_ground_state commutes with color permutations (up to ties)") {
  std::mt19937_64 rng(5);
  const MidLayerGraph g(2);
  const auto colorings = brute_enumerate(g, 4);
  const auto parts = principal_partitions(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Color> perm{1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), rng);
    const Coloring& f = colorings[rng() % colorings.size()];
    Coloring h(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) h[v] = perm[static_cast<std::size_t>(f[v] - 1)];
    const auto rf = nearest_ground_state(g, f, 4);
    const auto rh = nearest_ground_state(g, h, 4);
    CHECK(rf.flaw.size() == rh.flaw.size());
    std::uint32_t mapped = 0;
    for (Color c : rf.partition.a_colors()) mapped |= 1u << (perm[static_cast<std::size_t>(c - 1)] - 1);
    const PrincipalPartition image(4, mapped);
    CHECK(flaw_set(g, h, image).size() == rh.flaw.size());
  }
}

TEST_CASE("threshold polymer size") {
  CHECK(threshold_polymer_size(4) == 3);
  CHECK(threshold_polymer_size(6) == 4);
  CHECK(threshold_polymer_size(8) == 5);
  CHECK_THROWS_AS(threshold_polymer_size(2), ParameterError);
  for (int q = 3; q < kMaxColors; ++q) {
    CHECK(threshold_polymer_size(q) <= threshold_polymer_size(q + 1));
    const int t = threshold_polymer_size(q);
    CHECK(2.0 + t * std::log2(1.0 - 2.0 / q) < 0.0);
    CHECK(2.0 + (t - 1) * std::log2(1.0 - 2.0 / q) >= 0.0);
  }
}

TEST_CASE("s-balancedness") {
  const MidLayerGraph g(3);
  const auto parts = principal_partitions(4);
  const Coloring ground = cyclic_ground_state(g, parts[0]);
  CHECK(is_s_balanced(g, ground, parts[0], 1.0));
  // Layers of size 10 split over 2 colors: perfectly balanced.
  CHECK(is_s_balanced(g, ground, parts[0], 0.0));

  Coloring mono(g.size());
  for (Vertex v = 0; v < g.size(); ++v)
    mono[v] = g.in_upper_layer(v) ? parts[0].a_colors()[0] : parts[0].b_colors()[0];
  CHECK_FALSE(is_s_balanced(g, mono, parts[0], 0.49));
  CHECK(is_s_balanced(g, mono, parts[0], 1.0));
}

TEST_CASE("exact counts") {
  const MidLayerGraph g2(2);
  CHECK(count_colorings_exact(g2, 4) == 732);
  CHECK(count_colorings_exact(g2, 2) == 2);
  CHECK(oracle::count_colorings(2, 3) == cycle_formula(3).get_ui());
  for (int q = 2; q <= 6; ++q) {
    CAPTURE(q);
    CHECK(count_colorings_exact(g2, q) == cycle_formula(q));
    CHECK(count_colorings_layer_sum(g2, q) == cycle_formula(q));
    CHECK(BigInt(static_cast<unsigned long>(brute_enumerate(g2, q).size())) == cycle_formula(q));
    CHECK(BigInt(static_cast<unsigned long>(oracle::count_colorings(2, q))) == cycle_formula(q));
  }
  const MidLayerGraph g3(3);
  for (int q = 2; q <= 5; ++q) {
    CAPTURE(q);
    CHECK(count_colorings_exact(g3, q) == count_colorings_layer_sum(g3, q));
  }
}

TEST_CASE("counting resource limits") {
  const MidLayerGraph g3(3);
  CHECK_THROWS_AS(brute_enumerate(g3, 4), ResourceError);
  CountLimits tiny;
  tiny.max_states = 10;
  try {
    count_colorings_exact(g3, 6, tiny);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.estimate() > 10);
  }
}

TEST_CASE("brute enumeration is lexicographic and proper") {
  const MidLayerGraph g(2);
  const auto all = brute_enumerate(g, 4);
  CHECK(std::is_sorted(all.begin(), all.end()));
  for (const auto& f : all) CHECK(is_proper(g, f));
}

TEST_CASE("structure census bookkeeping at d=2, q=4") {
  const MidLayerGraph g(2);
  const auto census = structure_census(g, 4);
  CHECK(census.total == 732);
  CHECK(census.threshold == 3);
  CHECK(census.bookkeeping_holds);
  for (const auto& per : census.flaw_classes) {
    BigInt sum = 0;
    for (const auto& [x, count] : per) sum += count;
    CHECK(sum == 732);
  }
  // Independent recount of the typical colorings.
  const auto parts = principal_partitions(4);
  BigInt typical = 0;
  for (const auto& f : brute_enumerate(g, 4)) {
    bool any = false;
    for (const auto& p : parts) {
      const auto comps = two_linked_components(g, direct_flaw(g, f, p));
      bool small = true;
      for (const auto& c : comps) small = small && c.size() < 3;
      any = any || small;
    }
    if (any) ++typical;
  }
  CHECK(census.typical == typical);
}
