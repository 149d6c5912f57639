#include "midlayer/series.hpp"

#include <string>

#include "midlayer/counting.hpp"
#include "midlayer/errors.hpp"

namespace midlayer {

namespace {

void check_q(int q) {
  if (q < 3 || q > kMaxColors) {
    throw ParameterError("q must lie in [3, " + std::to_string(kMaxColors) + "]");
  }
}

void check_d(int d) {
  if (d < 2) throw ParameterError("d must be at least 2");
}

Rational half_count(int d) {
  return Rational(binomial(static_cast<unsigned long>(2 * d - 1), static_cast<unsigned long>(d)));
}

Rational ratio_power(int num, int den, long exponent) {
  return power(fraction(num, den), exponent);
}

}  // namespace

BigInt vertex_count(int d) {
  if (d < 1) throw ParameterError("d must be at least 1");
  return 2 * binomial(static_cast<unsigned long>(2 * d - 1), static_cast<unsigned long>(d));
}

Rational closed_form_L1(int d, int a, int b) {
  check_d(d);
  if (a < 1 || b < 1) throw ParameterError("palette sizes must be positive");
  // Singleton in L_d: b (b-1)^d / (a b^d); in L_{d-1}: a (a-1)^d / (b a^d).
  const Rational x = fraction(b, a) * ratio_power(b - 1, b, d);
  const Rational y = fraction(a, b) * ratio_power(a - 1, a, d);
  Rational out = half_count(d) * (x + y);
  out.canonicalize();
  return out;
}

Rational closed_form_L2(int d, int a, int b) {
  check_d(d);
  if (a < 1 || b < 1) throw ParameterError("palette sizes must be positive");
  const Rational m = half_count(d);
  const Rational x = fraction(b, a) * ratio_power(b - 1, b, d);
  const Rational y = fraction(a, b) * ratio_power(a - 1, a, d);
  // Two singletons, equal or at distance <= 2: φ = -1/2 per ordered pair.
  const Rational pairs =
      fraction(-1, 2) * m * (Rational(1 + d * (d - 1)) * (x * x + y * y) + Rational(2 * d) * x * y);
  // Same-layer pairs with a common neighbor, C(d,2) per vertex and layer.
  const Rational same_upper = power(Rational(b - 1), 2L * d) /
                              (Rational(a * a) * power(Rational(b), 2L * d - 2));
  const Rational same_lower = power(Rational(a - 1), 2L * d) /
                              (Rational(b * b) * power(Rational(a), 2L * d - 2));
  const Rational same = m * fraction(d * (d - 1), 2) * (same_upper + same_lower);
  // Edges.
  const Rational edge =
      m * Rational(d) * ratio_power(a - 1, a, d - 1) * ratio_power(b - 1, b, d - 1);
  Rational out = pairs + same + edge;
  out.canonicalize();
  return out;
}

Rational closed_form_L1(int d, int q) {
  check_q(q);
  return closed_form_L1(d, q / 2, (q + 1) / 2);
}

Rational closed_form_L2(int d, int q) {
  check_q(q);
  return closed_form_L2(d, q / 2, (q + 1) / 2);
}

Rational leading_exponent(int d, int q) {
  check_d(d);
  check_q(q);
  const Rational n(vertex_count(d));
  const Rational r = fraction(q - 2, q);
  Rational out = n * power(r, d) +
                 n * power(r, 2L * d) * fraction(1, 2) *
                     (Rational(d) * power(r, -2) - Rational(d) - Rational(1));
  out.canonicalize();
  return out;
}

Rational delta(int q) {
  check_q(q);
  return Rational(1) - fraction(1, (q + 1) / 2);
}

ApproxReport approx_count(int d, int q, int t, const ApproxOptions& options) {
  check_d(d);
  check_q(q);
  if (t < 1) throw ParameterError("truncation t must be at least 1");
  ApproxReport out;
  out.d = d;
  out.q = q;
  out.t = t;
  out.n = vertex_count(d);
  out.partition_count = principal_partitions(q).size();

  const int lo = q / 2;
  const int hi = (q + 1) / 2;
  std::vector<std::pair<int, int>> shapes{{lo, hi}};
  if (lo != hi) shapes.emplace_back(hi, lo);
  std::optional<MidLayerGraph> graph;
  for (const auto& [a, b] : shapes) {
    PartitionTypeTerms type;
    type.a = a;
    type.b = b;
    type.multiplicity = out.partition_count / shapes.size();
    type.exponent = 0;
    for (int k = 1; k < t; ++k) {
      Rational term;
      if (k == 1) {
        term = closed_form_L1(d, a, b);
      } else if (k == 2) {
        term = closed_form_L2(d, a, b);
      } else {
        if (!graph) graph.emplace(d);
        const PrincipalPartition p(q, (1u << a) - 1u);
        term = series_term(*graph, options.params, p, static_cast<std::size_t>(k),
                           options.cluster_limits)
                   .value;
      }
      type.exponent += term;
      type.terms.push_back(term);
    }
    type.exponent.canonicalize();
    out.types.push_back(std::move(type));
  }

  const mpfr_prec_t prec = options.precision;
  Interval sum = Interval::zero(prec);
  for (const auto& type : out.types) {
    sum += Interval(static_cast<long>(type.multiplicity), prec) *
           Interval(type.exponent, prec).exp();
  }
  out.log_value = sum.log() + Interval(half_count(d), prec) *
                                  Interval(static_cast<long>(lo * hi), prec).log();
  out.value = out.log_value.exp();

  out.eps_bound = options.eps_constant * Rational(out.n) *
                  power(Rational(d), 2L * (t - 1)) * power(delta(q), static_cast<long>(d) * t);
  out.eps_bound.canonicalize();
  return out;
}

CompareReport compare_with_exact(int d, int q, int t, const ApproxOptions& options,
                                 const CountLimits& limits) {
  CompareReport out{approx_count(d, q, t, options), 0, Interval()};
  const MidLayerGraph g(d);
  out.exact = count_colorings_exact(g, q, limits);
  const Interval exact(Rational(out.exact), options.precision);
  out.relative_error = (out.approx.value - exact) / exact;
  return out;
}

std::vector<Rational> formal_log(const std::vector<Rational>& series, std::size_t degree) {
  if (series.empty() || series[0] != 1) {
    throw ParameterError("formal log needs constant term 1");
  }
  const auto coeff = [&](std::size_t i) { return i < series.size() ? series[i] : Rational(0); };
  // From S' = S L':  n l_n = n s_n - Σ_{j=1}^{n-1} j l_j s_{n-j}.
  std::vector<Rational> out(degree + 1, Rational(0));
  for (std::size_t n = 1; n <= degree; ++n) {
    Rational acc = Rational(static_cast<long>(n)) * coeff(n);
    for (std::size_t j = 1; j < n; ++j) {
      acc -= Rational(static_cast<long>(j)) * out[j] * coeff(n - j);
    }
    out[n] = acc / Rational(static_cast<long>(n));
    out[n].canonicalize();
  }
  return out;
}

FormalLogReport formal_log_check(const PolymerModel& model, std::size_t degree,
                                 const FamilyLimits& family_limits,
                                 const ClusterLimits& cluster_limits) {
  if (degree == 0) throw ParameterError("formal log degree must be at least 1");
  FormalLogReport out;
  out.degree = degree;
  out.xi_coefficients = partition_polynomial(model, degree, family_limits);
  out.log_coefficients = formal_log(out.xi_coefficients, degree);
  out.cluster_terms.assign(degree + 1, Rational(0));
  out.matches.assign(degree + 1, true);
  out.all_match = true;
  for (std::size_t k = 1; k <= degree; ++k) {
    out.cluster_terms[k] = series_term(model, k, cluster_limits).value;
    out.matches[k] = out.cluster_terms[k] == out.log_coefficients[k];
    out.all_match = out.all_match && out.matches[k];
  }
  return out;
}

TermBoundReport term_bound_check(const MidLayerGraph& g, int q, std::size_t window,
                                 const PolymerParams& params, const ClusterLimits& limits) {
  check_q(q);
  if (window == 0) throw ParameterError("window must be at least 1");
  TermBoundReport out;
  out.d = g.d();
  out.q = q;
  out.delta = delta(q);
  const PrincipalPartition p = principal_partitions(q).front();
  const Rational n(static_cast<long>(g.size()));
  for (std::size_t k = 1; k <= window; ++k) {
    TermBoundRow row;
    row.k = k;
    row.term = series_term(g, params, p, k, limits).value;
    row.bound = n * power(Rational(g.d()), 2L * (static_cast<long>(k) - 1)) *
                power(out.delta, static_cast<long>(g.d()) * static_cast<long>(k));
    row.bound.canonicalize();
    row.ratio = abs(row.term) / row.bound;
    row.ratio.canonicalize();
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace midlayer
