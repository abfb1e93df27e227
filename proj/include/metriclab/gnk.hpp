#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "metriclab/common.hpp"
#include "metriclab/metric_space.hpp"

namespace metriclab {

/// The two-shell graph on hypercube corners: an inner shell I with every
/// coordinate +-k, an outer shell T with every coordinate +-2k, and edges
/// wherever the Euclidean gap is exactly 2k or one endpoint doubles the
/// other. Edge lengths are max-norm gaps.
struct GnkGraph {
  int n = 0;
  int k = 0;
  std::vector<std::vector<int>> inner;  // 2^n corners, sign-lexicographic
  std::vector<std::vector<int>> outer;  // 2^n corners, same order

  struct Edge {
    std::size_t a, b;  // indices into the combined vertex order: inner, then outer
    double weight;     // max-norm length
  };
  std::vector<Edge> edges;

  std::size_t vertex_count() const { return inner.size() + outer.size(); }

  const std::vector<int>& vertex(std::size_t idx) const {
    return idx < inner.size() ? inner[idx] : outer[idx - inner.size()];
  }

  bool is_inner(std::size_t idx) const { return idx < inner.size(); }

  std::string label(std::size_t idx) const {
    const auto& v = vertex(idx);
    std::string s = is_inner(idx) ? "I(" : "T(";
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (c) s += ',';
      s += std::to_string(v[c]);
    }
    s += ')';
    return s;
  }

  // index of a vertex by exact integer coordinates, or npos
  std::size_t find_vertex(const std::vector<int>& coords) const {
    for (std::size_t i = 0; i < vertex_count(); ++i)
      if (vertex(i) == coords) return i;
    return static_cast<std::size_t>(-1);
  }
};

namespace detail {
inline std::vector<std::vector<int>> sign_corners(int n, int magnitude) {
  std::vector<std::vector<int>> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c)
      v[static_cast<std::size_t>(c)] = (mask >> c) & 1 ? -magnitude : magnitude;
    out.push_back(std::move(v));
  }
  return out;
}

inline long long sq_gap(const std::vector<int>& a, const std::vector<int>& b) {
  long long s = 0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const long long d = a[c] - b[c];
    s += d * d;
  }
  return s;
}

inline bool doubles(const std::vector<int>& x, const std::vector<int>& y) {
  for (std::size_t c = 0; c < x.size(); ++c)
    if (y[c] != 2 * x[c]) return false;
  return true;
}

inline double linf_gap(const std::vector<int>& a, const std::vector<int>& b) {
  int m = 0;
  for (std::size_t c = 0; c < a.size(); ++c) m = std::max(m, std::abs(a[c] - b[c]));
  return static_cast<double>(m);
}
}  // namespace detail

/// Builds G_{n,k} by checking the literal edge conditions on integer
/// coordinates, pair by pair. No structural shortcuts are assumed; the
/// derived characterization (square edges + spokes) is a test, not an input.
inline GnkGraph build_gnk(int n, int k, std::size_t vertex_budget = std::size_t{1} << 14) {
  if (n < 2) throw argument_error("build_gnk requires n >= 2");
  if (k < 1) throw argument_error("build_gnk requires k >= 1");
  if (n >= 62 || (std::size_t{1} << (n + 1)) > vertex_budget)
    throw resource_error("build_gnk: 2^(n+1) vertices exceed the budget of " +
                         std::to_string(vertex_budget));

  GnkGraph g;
  g.n = n;
  g.k = k;
  g.inner = detail::sign_corners(n, k);
  g.outer = detail::sign_corners(n, 2 * k);

  const std::size_t total = g.vertex_count();
  const long long four_k_sq = 4ll * k * k;
  for (std::size_t a = 0; a < total; ++a) {
    const auto& va = g.vertex(a);
    for (std::size_t b = a + 1; b < total; ++b) {
      const auto& vb = g.vertex(b);
      const bool by_norm = detail::sq_gap(va, vb) == four_k_sq;
      const bool by_double = detail::doubles(va, vb) || detail::doubles(vb, va);
      if (by_norm || by_double)
        g.edges.push_back({a, b, detail::linf_gap(va, vb)});
    }
  }
  return g;
}

/// All-pairs shortest-path metric of the graph under its max-norm edge
/// lengths (Dijkstra from every source).
inline FiniteMetricSpace gnk_metric(const GnkGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : g.edges) {
    adj[e.a].push_back({e.b, e.weight});
    adj[e.b].push_back({e.a, e.weight});
  }

  Vec d(n * n, kInf);
  using Item = std::pair<double, std::size_t>;
  for (std::size_t src = 0; src < n; ++src) {
    double* row = d.data() + src * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    row[src] = 0.0;
    heap.push({0.0, src});
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > row[u]) continue;
      for (auto [v, w] : adj[u]) {
        const double alt = du + w;
        if (alt < row[v]) {
          row[v] = alt;
          heap.push({alt, v});
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (row[v] == kInf)
        throw validation_error("gnk_metric: graph is disconnected, no path " +
                               g.label(src) + " -> " + g.label(v));
  }

  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = g.label(i);
  return FiniteMetricSpace::from_flat(std::move(labels), std::move(d));
}

}  // namespace metriclab
