#include "midlayer/ursell.hpp"

#include <bit>
#include <string>
#include <unordered_map>

#include "midlayer/errors.hpp"

namespace midlayer {

SimpleGraph::SimpleGraph(int n) : n_(n), rows_(static_cast<std::size_t>(n > 0 ? n : 0), 0) {
  if (n < 0 || n > 32) throw ParameterError("simple graph size must lie in [0, 32]");
}

SimpleGraph SimpleGraph::complete(int n) {
  SimpleGraph h(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) h.add_edge(u, v);
  }
  return h;
}

SimpleGraph SimpleGraph::path(int n) {
  SimpleGraph h(n);
  for (int u = 0; u + 1 < n; ++u) h.add_edge(u, u + 1);
  return h;
}

SimpleGraph SimpleGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  SimpleGraph h(n);
  for (const auto& [u, v] : edges) h.add_edge(u, v);
  return h;
}

void SimpleGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) {
    throw ParameterError("bad edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  rows_[u] |= 1u << v;
  rows_[v] |= 1u << u;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

bool SimpleGraph::connected() const {
  if (n_ <= 1) return true;
  std::uint32_t seen = 1u;
  std::uint32_t frontier = 1u;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= rows_[std::countr_zero(f)];
    frontier = next & ~seen;
    seen |= next;
  }
  return std::popcount(seen) == n_;
}

SimpleGraph SimpleGraph::permuted(const std::vector<int>& perm) const {
  SimpleGraph h(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (adjacent(perm[i], perm[j])) h.add_edge(i, j);
    }
  }
  return h;
}

std::uint64_t SimpleGraph::key() const {
  std::uint64_t key = 0;
  int bit = 0;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v, ++bit) {
      if (adjacent(u, v)) key |= std::uint64_t{1} << bit;
    }
  }
  return key;
}

namespace {

// Σ over connected spanning edge subsets of (-1)^{|F|}.
long signed_connected_spanning(const SimpleGraph& h) {
  const int n = h.size();
  if (n <= 1) return 1;
  const auto edges = h.edges();
  const std::size_t m = edges.size();
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  long total = 0;
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << m); ++subset) {
    if (std::popcount(subset) < n - 1) continue;
    std::fill(rows.begin(), rows.end(), 0u);
    for (std::size_t e = 0; e < m; ++e) {
      if ((subset >> e) & 1u) {
        rows[edges[e].first] |= 1u << edges[e].second;
        rows[edges[e].second] |= 1u << edges[e].first;
      }
    }
    std::uint32_t seen = 1u;
    std::uint32_t frontier = 1u;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= rows[std::countr_zero(f)];
      frontier = next & ~seen;
      seen |= next;
    }
    if (seen == full) total += (std::popcount(subset) % 2 == 0) ? 1 : -1;
  }
  return total;
}

}  // namespace

Rational ursell(const SimpleGraph& h, int max_vertices) {
  const int n = h.size();
  if (n > max_vertices) {
    throw ResourceError("Ursell function on " + std::to_string(n) + " vertices exceeds cap " +
                            std::to_string(max_vertices),
                        static_cast<double>(n));
  }
  if (n == 0) throw ParameterError("Ursell function of the empty graph");
  if (!h.connected()) return Rational(0);
  thread_local std::unordered_map<std::uint64_t, Rational> memo[kMaxUrsellVertices + 1];
  const bool cacheable = n <= kMaxUrsellVertices;
  const std::uint64_t key = h.key();
  if (cacheable) {
    const auto it = memo[n].find(key);
    if (it != memo[n].end()) return it->second;
  }
  BigInt factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  Rational value(BigInt(signed_connected_spanning(h)), factorial);
  value.canonicalize();
  if (cacheable) memo[n].emplace(key, value);
  return value;
}

}  // namespace midlayer
