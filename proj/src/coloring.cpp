#include "midlayer/coloring.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "midlayer/errors.hpp"

namespace midlayer {

PrincipalPartition::PrincipalPartition(int q, std::uint32_t a_mask) : q_(q), a_mask_(a_mask) {
  if (q < 2 || q > kMaxColors) {
    throw ParameterError("q must lie in [2, " + std::to_string(kMaxColors) + "]");
  }
  const std::uint32_t all = (1u << q) - 1u;
  if ((a_mask & ~all) != 0) throw ParameterError("color outside 1..q in partition");
  b_mask_ = all & ~a_mask;
  const int a = std::popcount(a_mask_);
  if (a != q / 2 && a != (q + 1) / 2) {
    throw ParameterError("partition sizes must be {floor(q/2), ceil(q/2)}");
  }
}

int PrincipalPartition::a_size() const { return std::popcount(a_mask_); }
int PrincipalPartition::b_size() const { return std::popcount(b_mask_); }
std::vector<Color> PrincipalPartition::a_colors() const { return colors_of_mask(a_mask_); }
std::vector<Color> PrincipalPartition::b_colors() const { return colors_of_mask(b_mask_); }

PrincipalPartition PrincipalPartition::swapped() const { return PrincipalPartition(q_, b_mask_); }

std::string PrincipalPartition::to_string() const {
  const auto render = [](const std::vector<Color>& colors) {
    std::string out = "{";
    for (std::size_t i = 0; i < colors.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(colors[i]);
    }
    return out + "}";
  };
  return "(" + render(a_colors()) + "," + render(b_colors()) + ")";
}

std::vector<Color> colors_of_mask(std::uint32_t mask) {
  std::vector<Color> out;
  for (int c = 1; mask != 0; ++c, mask >>= 1) {
    if (mask & 1u) out.push_back(c);
  }
  return out;
}

std::vector<PrincipalPartition> principal_partitions(int q) {
  if (q < 2 || q > kMaxColors) {
    throw ParameterError("q must lie in [2, " + std::to_string(kMaxColors) + "]");
  }
  std::vector<PrincipalPartition> out;
  for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
    const int a = std::popcount(mask);
    if (a == q / 2 || a == (q + 1) / 2) out.emplace_back(q, mask);
  }
  std::sort(out.begin(), out.end(), [](const PrincipalPartition& x, const PrincipalPartition& y) {
    const auto xa = x.a_colors();
    const auto ya = y.a_colors();
    if (xa != ya) return xa < ya;
    return x.b_colors() < y.b_colors();
  });
  return out;
}

bool is_proper(const MidLayerGraph& g, const Coloring& f) {
  if (f.size() != g.size()) return false;
  for (Vertex v = 0; v < g.layer_size(); ++v) {
    for (Vertex u : g.neighbors(v)) {
      if (f[u] == f[v]) return false;
    }
  }
  return true;
}

void validate_coloring(const MidLayerGraph& g, const Coloring& f, int q) {
  if (f.size() != g.size()) {
    throw ValidationError("coloring has " + std::to_string(f.size()) + " entries, expected " +
                          std::to_string(g.size()));
  }
  for (std::size_t v = 0; v < f.size(); ++v) {
    if (f[v] < 1 || f[v] > q) {
      throw ValidationError("vertex " + std::to_string(v) + " has color " +
                            std::to_string(f[v]) + " outside 1.." + std::to_string(q));
    }
  }
  if (!is_proper(g, f)) throw ValidationError("coloring is not proper");
}

VertexSet flaw_set(const MidLayerGraph& g, const Coloring& f, const PrincipalPartition& p) {
  VertexSet out;
  for (Vertex v = 0; v < g.size(); ++v) {
    const std::uint32_t bit = 1u << (f[v] - 1);
    if ((p.right_mask(g, v) & bit) == 0) out.push_back(v);
  }
  return out;
}

FlawReport flaw(const MidLayerGraph& g, const Coloring& f, const PrincipalPartition& p) {
  validate_coloring(g, f, p.q());
  FlawReport report{p, flaw_set(g, f, p), {}, 0};
  report.components = two_linked_components(g, report.flaw);
  for (const auto& component : report.components) {
    report.max_component_size = std::max(report.max_component_size, component.size());
  }
  return report;
}

FlawReport nearest_ground_state(const MidLayerGraph& g, const Coloring& f, int q) {
  validate_coloring(g, f, q);
  const auto partitions = principal_partitions(q);
  std::size_t best = 0;
  std::size_t best_size = g.size() + 1;
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    const std::size_t size = flaw_set(g, f, partitions[i]).size();
    if (size < best_size) {
      best = i;
      best_size = size;
    }
  }
  return flaw(g, f, partitions[best]);
}

int threshold_polymer_size(int q) {
  if (q <= 2) throw ParameterError("threshold polymer size needs q >= 3");
  // 2 + t log2((q-2)/q) < 0  <=>  (q/(q-2))^t > 4.
  const BigInt base(q);
  const BigInt reduced(q - 2);
  for (unsigned long t = 1;; ++t) {
    if (power(base, t) > 4 * power(reduced, t)) return static_cast<int>(t);
  }
}

BalanceMargins balance_margins(const MidLayerGraph& g, const Coloring& f,
                               const PrincipalPartition& p) {
  std::vector<std::size_t> upper_count(static_cast<std::size_t>(p.q()) + 1, 0);
  std::vector<std::size_t> lower_count(static_cast<std::size_t>(p.q()) + 1, 0);
  for (Vertex v = 0; v < g.size(); ++v) {
    auto& counts = g.in_upper_layer(v) ? upper_count : lower_count;
    ++counts[static_cast<std::size_t>(f[v])];
  }
  BalanceMargins out;
  for (Color c : p.a_colors()) {
    const Rational share = fraction(static_cast<long>(upper_count[static_cast<std::size_t>(c)]),
                                    static_cast<long>(g.layer_size()));
    Rational gap = share - fraction(1, p.a_size());
    gap.canonicalize();
    out.a_margins.push_back(std::abs(gap.get_d()));
  }
  for (Color c : p.b_colors()) {
    const Rational share = fraction(static_cast<long>(lower_count[static_cast<std::size_t>(c)]),
                                    static_cast<long>(g.layer_size()));
    Rational gap = share - fraction(1, p.b_size());
    gap.canonicalize();
    out.b_margins.push_back(std::abs(gap.get_d()));
  }
  for (double m : out.a_margins) out.max_margin = std::max(out.max_margin, m);
  for (double m : out.b_margins) out.max_margin = std::max(out.max_margin, m);
  return out;
}

bool is_s_balanced(const MidLayerGraph& g, const Coloring& f, const PrincipalPartition& p,
                   double s) {
  return balance_margins(g, f, p).max_margin <= s;
}

Coloring cyclic_ground_state(const MidLayerGraph& g, const PrincipalPartition& p) {
  const auto a = p.a_colors();
  const auto b = p.b_colors();
  Coloring f(g.size());
  for (Vertex v = 0; v < g.layer_size(); ++v) f[v] = b[v % b.size()];
  for (Vertex v = 0; v < g.layer_size(); ++v) {
    f[g.layer_size() + v] = a[v % a.size()];
  }
  return f;
}

}  // namespace midlayer
