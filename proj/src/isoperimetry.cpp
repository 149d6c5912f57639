#include "midlayer/isoperimetry.hpp"

#include <cmath>
#include <functional>

#include "midlayer/errors.hpp"

namespace midlayer {

long double real_binomial(long double x, int k) {
  long double out = 1.0L;
  for (int i = 0; i < k; ++i) out *= (x - i) / static_cast<long double>(i + 1);
  return out;
}

long double lovasz_bound(std::uint64_t m, int d) {
  if (m == 0) throw ParameterError("lovasz_bound requires m >= 1");
  if (d < 1) throw ParameterError("lovasz_bound requires d >= 1");
  const long double target = static_cast<long double>(m);
  long double lo = d;
  long double hi = d + 1.0L;
  while (real_binomial(hi, d) < target) hi = d + 2.0L * (hi - d);
  // C(x, d) is strictly increasing on [d, inf).
  while ((hi - lo) > 1e-12L * hi) {
    const long double mid = lo + (hi - lo) / 2.0L;
    if (real_binomial(mid, d) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return real_binomial(lo + (hi - lo) / 2.0L, d - 1);
}

IsoperimetryReport isoperimetry_check(const MidLayerGraph& g, const VertexSet& x,
                                      long double tolerance) {
  if (layer_of(g, x) == Layer::Mixed) {
    throw ParameterError("isoperimetry_check requires a single-layer set");
  }
  IsoperimetryReport report;
  report.set_size = x.size();
  report.neighborhood_size = neighborhood(g, x).size();
  const long double d = g.d();
  const long double size = static_cast<long double>(x.size());
  const long double nbhd = static_cast<long double>(report.neighborhood_size);

  report.small_clause_applies = 4.0L * size <= d;
  report.small_clause_holds = nbhd >= d * size - size * size / 2.0L;

  report.linear_clause_applies = size <= std::pow(d, 10.0L);
  report.linear_clause_holds = 12.0L * nbhd >= d * size;

  if (x.empty()) {
    report.lovasz = 0;
    report.lovasz_holds = true;
  } else {
    report.lovasz = lovasz_bound(x.size(), g.d());
    report.lovasz_holds = report.lovasz <= nbhd + tolerance;
  }
  return report;
}

IsoperimetrySweep isoperimetry_sweep(const MidLayerGraph& g, std::size_t max_size,
                                     long double tolerance) {
  IsoperimetrySweep out;
  out.max_size = max_size;
  bool first = true;
  for (const VertexSet& layer : {g.lower_layer(), g.upper_layer()}) {
    VertexSet x;
    // Subsets in lexicographic order of positions within the layer.
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
      for (std::size_t i = from; i < layer.size(); ++i) {
        x.push_back(layer[i]);
        const IsoperimetryReport r = isoperimetry_check(g, x, tolerance);
        ++out.instances;
        if (!r.small_clause_holds) ++out.small_clause_failures;
        if (!r.linear_clause_holds) ++out.linear_clause_failures;
        if (!r.lovasz_holds) ++out.lovasz_failures;
        const long double slack = static_cast<long double>(r.neighborhood_size) - r.lovasz;
        if (first || slack < out.min_lovasz_slack) out.min_lovasz_slack = slack;
        first = false;
        if (x.size() < max_size) grow(i + 1);
        x.pop_back();
      }
    };
    grow(0);
  }
  return out;
}

}  // namespace midlayer
