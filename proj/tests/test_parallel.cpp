#include <doctest.h>

#include "midlayer/cluster.hpp"
#include "midlayer/counting.hpp"
#include "midlayer/parallel.hpp"
#include "midlayer/polymer.hpp"
#include "midlayer/sampler.hpp"

using namespace midlayer;

namespace {

struct Workers {
  explicit Workers(int n) { set_worker_count(n); }
  ~Workers() { set_worker_count(0); }
};

}  // namespace

TEST_CASE("parallel_for rethrows the first exception") {
  Workers w(3);
  CHECK_THROWS_AS(parallel_for(50, [](std::size_t i) {
                    if (i == 17) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  std::vector<int> hit(100, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] = 1; });
  CHECK(std::count(hit.begin(), hit.end(), 1) == 100);
}

TEST_CASE("polymer enumeration: parallel equals serial") {
  for (int workers : {1, 2, 4}) {
    Workers w(workers);
    for (int d = 2; d <= 4; ++d) {
      const MidLayerGraph g(d);
      const PolymerParams p{d == 4 ? 3u : 4u};
      CHECK(enumerate_polymers(g, p) == enumerate_polymers_serial(g, p));
      CHECK(enumerate_polymers(g, p, 1) == enumerate_polymers_serial(g, p, 1));
    }
  }
}

TEST_CASE("series terms: parallel equals serial") {
  const MidLayerGraph g(3);
  const auto model = PolymerModel::build(g, {3}, principal_partitions(4)[0]);
  for (int workers : {1, 3}) {
    Workers w(workers);
    for (std::size_t k = 1; k <= 3; ++k) {
      const SeriesTerm a = series_term(model, k);
      const SeriesTerm b = series_term_serial(model, k);
      CHECK(a.value == b.value);
      CHECK(a.cluster_count == b.cluster_count);
      CHECK(a.multiset_count == b.multiset_count);
      CHECK(a.ordered_by_shape == b.ordered_by_shape);
    }
  }
}

TEST_CASE("counting: parallel equals serial") {
  for (int workers : {1, 2}) {
    Workers w(workers);
    const MidLayerGraph g2(2);
    for (int q = 2; q <= 5; ++q) {
      CHECK(brute_enumerate(g2, q) == brute_enumerate_serial(g2, q));
      CHECK(count_colorings_layer_sum(g2, q) == count_colorings_layer_sum_serial(g2, q));
    }
    const MidLayerGraph g3(3);
    CHECK(count_colorings_layer_sum(g3, 4) == count_colorings_layer_sum_serial(g3, 4));
  }
}

TEST_CASE("sampler: parallel equals serial for any worker count") {
  SamplerConfig c;
  c.sample_count = 400;
  c.seed = 77;
  const MuHatSampler s(c);
  const auto serial = s.run_serial();
  for (int workers : {1, 2, 5}) {
    Workers w(workers);
    const auto par = s.run();
    REQUIRE(par.size() == serial.size());
    for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i].coloring == serial[i].coloring);
  }
}
