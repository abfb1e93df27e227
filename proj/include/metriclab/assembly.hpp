#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "metriclab/common.hpp"
#include "metriclab/gnk.hpp"
#include "metriclab/metric_space.hpp"

namespace metriclab {

// The glued test spaces. Slices of the ambient space live at square levels
// (a point is a level plus Euclidean coordinates, shorter vectors read as
// zero-padded), graphs hang off the slices, and assemblies are unions of
// both with the maximal agreeing metric.

/// Distance in the ambient union of slices:
/// sqrt(|level gap|^2 + |coordinate gap|^2).
inline double xprime_distance(int level_a, const Vec& a, int level_b, const Vec& b) {
  const double lv = static_cast<double>(level_a - level_b);
  const std::size_t n = std::max(a.size(), b.size());
  double s = lv * lv;
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = i < a.size() ? a[i] : 0.0;
    const double bi = i < b.size() ? b[i] : 0.0;
    s += (ai - bi) * (ai - bi);
  }
  return std::sqrt(s);
}

enum class AssemblyKind { xprime_slice, x_trunc, y_trunc, x_n };

enum class PointOrigin { euclid_sample, graph_inner, graph_outer };

struct Provenance {
  PointOrigin origin = PointOrigin::euclid_sample;
  int level = 0;        // square slice index the point sits at
  int graph_n = 0;      // 0 when the point is a plain sample point
  int graph_k = 0;
  Vec coords;           // coordinates inside the slice
};

struct AssemblyParams {
  AssemblyKind kind = AssemblyKind::x_trunc;
  // expanded graph list; squared_pairs() fills it from squared-index ranges
  std::vector<std::pair<int, int>> graphs;  // (n, k) passed to build_gnk
  std::vector<int> levels;                  // parallel to graphs
  int ambient_dim = 0;                      // x_n / xprime_slice
  int slice_level = 0;                      // xprime_slice / x_n
  std::vector<Vec> sample;                  // Euclidean sample points
  std::size_t vertex_budget = std::size_t{1} << 14;
  // y_trunc with this off glues no path metrics, leaving the bare ambient
  // metric on the outer shells (an X truncation on the same points)
  bool graph_metric_parts = true;
};

struct SpaceAssembly {
  AssemblyParams params;
  FiniteMetricSpace space;
  std::vector<Provenance> tags;                 // one per point
  std::vector<GlueDisagreement> disagreements;  // capped, see count
  std::size_t disagreement_count = 0;

  std::vector<std::size_t> points_with_origin(PointOrigin o) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < tags.size(); ++i)
      if (tags[i].origin == o) out.push_back(i);
    return out;
  }
};

/// Squared indexing: range parameter n contributes the slice
/// at level n^2 carrying the graph G_{n^2, k^2}, k running from max(n, k_lo)
/// to k_hi.
inline std::vector<std::pair<int, int>> squared_pairs(int n_lo, int n_hi, int k_hi,
                                                    int k_lo = 0) {
  std::vector<std::pair<int, int>> out;
  for (int n = n_lo; n <= n_hi; ++n)
    for (int k = std::max(n, k_lo); k <= k_hi; ++k) out.push_back({n, k});
  return out;
}

namespace detail {

inline std::string format_coord(double v) {
  const double r = std::round(v);
  if (std::fabs(v - r) < 1e-9) {
    long long iv = static_cast<long long>(r);
    return std::to_string(iv);
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline std::string point_key(int level, const Vec& coords) {
  std::string s = "L" + std::to_string(level) + ":(";
  // trailing zeros do not change the point in the padded ambient space
  std::size_t last = coords.size();
  while (last > 0 && std::fabs(coords[last - 1]) < 1e-9) --last;
  for (std::size_t i = 0; i < last; ++i) {
    if (i) s += ',';
    s += format_coord(coords[i]);
  }
  s += ')';
  return s;
}

struct PointRegistry {
  std::vector<std::string> keys;
  std::vector<Provenance> tags;
  std::map<std::string, std::size_t> index;

  std::size_t intern(int level, Vec coords, Provenance tag) {
    std::string key = point_key(level, coords);
    auto it = index.find(key);
    if (it != index.end()) return it->second;  // first tag wins
    const std::size_t id = keys.size();
    index.emplace(std::move(key), id);
    keys.push_back(point_key(level, coords));
    tag.level = level;
    tag.coords = std::move(coords);
    tags.push_back(std::move(tag));
    return id;
  }
};

inline Vec to_vec(const std::vector<int>& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

// metric space of all currently interned points under the ambient metric
inline FiniteMetricSpace ambient_part(const PointRegistry& reg,
                                      const std::vector<std::size_t>& pts) {
  std::vector<std::string> labels(pts.size());
  Vec d(pts.size() * pts.size(), 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    labels[i] = reg.keys[pts[i]];
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto& a = reg.tags[pts[i]];
      const auto& b = reg.tags[pts[j]];
      const double v = xprime_distance(a.level, a.coords, b.level, b.coords);
      d[i * pts.size() + j] = v;
      d[j * pts.size() + i] = v;
    }
  }
  return FiniteMetricSpace::from_flat(std::move(labels), std::move(d));
}

// graph path metric relabeled with registry keys
inline FiniteMetricSpace graph_part(const PointRegistry& reg, const GnkGraph& g,
                                    const std::vector<std::size_t>& vert_ids) {
  FiniteMetricSpace base = gnk_metric(g);
  std::vector<std::string> labels(vert_ids.size());
  for (std::size_t i = 0; i < vert_ids.size(); ++i) labels[i] = reg.keys[vert_ids[i]];
  Vec flat(base.flat());
  return FiniteMetricSpace::from_flat(std::move(labels), std::move(flat));
}

}  // namespace detail

/// Builds one of the four assembly kinds. The point set is deduplicated by
/// (level, coordinates) so shells that land on each other are identified,
/// and the metric is glue_maximal over the ambient part plus every graph
/// part; disagreements between those pieces are reported, never erased.
inline SpaceAssembly build_assembly(const AssemblyParams& params) {
  using detail::PointRegistry;
  PointRegistry reg;
  std::vector<FiniteMetricSpace> parts;

  SpaceAssembly out;
  out.params = params;

  switch (params.kind) {
    case AssemblyKind::xprime_slice: {
      if (params.sample.empty())
        throw argument_error("xprime_slice needs a nonempty sample");
      {
        int root = 0;
        while ((root + 1) * (root + 1) <= params.slice_level) ++root;
        if (params.slice_level < 1 || root * root != params.slice_level)
          throw argument_error("slice levels must be perfect squares");
      }
      std::vector<std::size_t> pts;
      for (const auto& p : params.sample)
        pts.push_back(reg.intern(params.slice_level, p,
                                 {PointOrigin::euclid_sample, 0, 0, 0, {}}));
      parts.push_back(detail::ambient_part(reg, pts));
      break;
    }

    case AssemblyKind::x_trunc: {
      if (params.graphs.size() != params.levels.size())
        throw argument_error("graphs and levels must be parallel");
      std::vector<std::size_t> pts;
      for (std::size_t gi = 0; gi < params.graphs.size(); ++gi) {
        auto [n, k] = params.graphs[gi];
        const GnkGraph g = build_gnk(n, k, params.vertex_budget);
        for (const auto& corner : g.outer) {
          const std::size_t id =
              reg.intern(params.levels[gi], detail::to_vec(corner),
                         {PointOrigin::graph_outer, 0, n, k, {}});
          if (std::find(pts.begin(), pts.end(), id) == pts.end()) pts.push_back(id);
        }
      }
      if (pts.empty()) throw argument_error("x_trunc: no graphs given");
      parts.push_back(detail::ambient_part(reg, pts));
      break;
    }

    case AssemblyKind::y_trunc: {
      if (params.graphs.size() != params.levels.size())
        throw argument_error("graphs and levels must be parallel");
      if (params.graphs.empty()) throw argument_error("y_trunc: no graphs given");
      std::vector<GnkGraph> gs;
      std::vector<std::vector<std::size_t>> vert_ids(params.graphs.size());
      std::vector<std::size_t> outer_pts;
      for (std::size_t gi = 0; gi < params.graphs.size(); ++gi) {
        auto [n, k] = params.graphs[gi];
        gs.push_back(build_gnk(n, k, params.vertex_budget));
        const GnkGraph& g = gs.back();
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
          const bool inner = g.is_inner(v);
          if (inner && !params.graph_metric_parts)
            continue;  // without path metrics inner shells would float free
          const std::size_t id = reg.intern(
              params.levels[gi], detail::to_vec(g.vertex(v)),
              {inner ? PointOrigin::graph_inner : PointOrigin::graph_outer, 0, n, k, {}});
          if (params.graph_metric_parts) vert_ids[gi].push_back(id);
          if (!inner &&
              std::find(outer_pts.begin(), outer_pts.end(), id) == outer_pts.end())
            outer_pts.push_back(id);
        }
      }
      // ambient metric on the union of outer shells, then each path metric
      parts.push_back(detail::ambient_part(reg, outer_pts));
      if (params.graph_metric_parts)
        for (std::size_t gi = 0; gi < gs.size(); ++gi)
          parts.push_back(detail::graph_part(reg, gs[gi], vert_ids[gi]));
      break;
    }

    case AssemblyKind::x_n: {
      if (params.ambient_dim < 1) throw argument_error("x_n needs ambient_dim >= 1");
      if (params.sample.empty()) throw argument_error("x_n needs a Euclidean sample");
      for (const auto& p : params.sample)
        if (p.size() != static_cast<std::size_t>(params.ambient_dim))
          throw argument_error("x_n: sample point of wrong dimension");

      std::vector<std::size_t> sample_pts;
      for (const auto& p : params.sample)
        sample_pts.push_back(reg.intern(params.slice_level, p,
                                        {PointOrigin::euclid_sample, 0, 0, 0, {}}));

      std::vector<GnkGraph> gs;
      std::vector<std::vector<std::size_t>> vert_ids(params.graphs.size());
      std::vector<std::string> missing;
      for (std::size_t gi = 0; gi < params.graphs.size(); ++gi) {
        auto [n, k] = params.graphs[gi];
        if (n != params.ambient_dim)
          throw argument_error("x_n: graph dimension must equal ambient_dim");
        gs.push_back(build_gnk(n, k, params.vertex_budget));
        const GnkGraph& g = gs.back();
        // outer corners must already be in the sample: they are the overlap
        for (const auto& corner : g.outer) {
          const std::string key =
              detail::point_key(params.slice_level, detail::to_vec(corner));
          if (reg.index.find(key) == reg.index.end()) missing.push_back(key);
        }
        if (!missing.empty()) continue;
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
          const bool inner = g.is_inner(v);
          vert_ids[gi].push_back(reg.intern(
              params.slice_level, detail::to_vec(g.vertex(v)),
              {inner ? PointOrigin::graph_inner : PointOrigin::graph_outer, 0, n, k, {}}));
        }
      }
      if (!missing.empty()) {
        std::string msg = "x_n: sample is missing required outer corners:";
        for (std::size_t i = 0; i < missing.size() && i < 8; ++i) msg += " " + missing[i];
        throw argument_error(msg);
      }
      parts.push_back(detail::ambient_part(reg, sample_pts));
      for (std::size_t gi = 0; gi < gs.size(); ++gi)
        parts.push_back(detail::graph_part(reg, gs[gi], vert_ids[gi]));
      break;
    }
  }

  GlueResult glued = glue_maximal(parts);

  // glue_maximal unions labels in part order, which matches registry order
  // only when every registry point appears in some part; reorder to the
  // registry just in case
  const auto& labels = glued.space.labels();
  if (labels.size() != reg.keys.size())
    throw validation_error("assembly lost or duplicated points while gluing");
  std::vector<std::size_t> to_reg(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = reg.index.find(labels[i]);
    if (it == reg.index.end())
      throw validation_error("assembly produced an unknown label");
    to_reg[it->second] = i;  // registry id -> glued index
  }
  const std::size_t n = labels.size();
  std::vector<std::size_t> to_registry(n);  // glued index -> registry id
  for (std::size_t r = 0; r < n; ++r) to_registry[to_reg[r]] = r;
  Vec d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i * n + j] = glued.space.dist(to_reg[i], to_reg[j]);
  out.space = FiniteMetricSpace::from_flat(std::vector<std::string>(reg.keys), std::move(d));
  out.tags = std::move(reg.tags);
  out.disagreement_count = glued.disagreement_count;
  out.disagreements = std::move(glued.disagreements);
  for (auto& dis : out.disagreements) {
    dis.i = to_registry[dis.i];
    dis.j = to_registry[dis.j];
  }
  return out;
}

// convenience builders ------------------------------------------------------

inline SpaceAssembly build_xprime_slice(int level, std::vector<Vec> sample) {
  AssemblyParams p;
  p.kind = AssemblyKind::xprime_slice;
  p.slice_level = level;
  p.sample = std::move(sample);
  return build_assembly(p);
}

/// X truncation over explicit (n, k) range parameters, squared indexing.
inline SpaceAssembly build_x_trunc(int n_lo, int n_hi, int k_hi) {
  AssemblyParams p;
  p.kind = AssemblyKind::x_trunc;
  for (auto [n, k] : squared_pairs(n_lo, n_hi, k_hi)) {
    p.graphs.push_back({n * n, k * k});
    p.levels.push_back(n * n);
  }
  return build_assembly(p);
}

inline SpaceAssembly build_y_trunc(int n_lo, int n_hi, int k_hi) {
  AssemblyParams p;
  p.kind = AssemblyKind::y_trunc;
  for (auto [n, k] : squared_pairs(n_lo, n_hi, k_hi)) {
    p.graphs.push_back({n * n, k * k});
    p.levels.push_back(n * n);
  }
  return build_assembly(p);
}

/// Y truncation over literal graph parameters: G_{n,k} at level n^2.
inline SpaceAssembly build_y_trunc_general(const std::vector<std::pair<int, int>>& nk) {
  AssemblyParams p;
  p.kind = AssemblyKind::y_trunc;
  for (auto [n, k] : nk) {
    p.graphs.push_back({n, k});
    p.levels.push_back(n * n);
  }
  return build_assembly(p);
}

/// Default Euclidean sample for an X_N instance: all outer corners of the
/// included graphs, the origin, and the midpoints of outer-shell edges.
inline std::vector<Vec> default_xn_sample(int n, const std::vector<int>& ks,
                                          bool with_midpoints = true) {
  std::vector<Vec> sample;
  auto push_unique = [&](Vec v) {
    for (const auto& q : sample)
      if (euclidean(q, v) < 1e-9) return;
    sample.push_back(std::move(v));
  };
  push_unique(Vec(static_cast<std::size_t>(n), 0.0));
  for (int k : ks) {
    const auto corners = detail::sign_corners(n, 2 * k);
    for (const auto& c : corners) push_unique(detail::to_vec(c));
    if (!with_midpoints) continue;
    for (std::size_t a = 0; a < corners.size(); ++a)
      for (std::size_t b = a + 1; b < corners.size(); ++b) {
        int differ = 0;
        for (int c = 0; c < n; ++c)
          if (corners[a][static_cast<std::size_t>(c)] !=
              corners[b][static_cast<std::size_t>(c)])
            ++differ;
        if (differ != 1) continue;  // only edges of the outer hypercube
        Vec mid(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c)
          mid[static_cast<std::size_t>(c)] =
              0.5 * (corners[a][static_cast<std::size_t>(c)] +
                     corners[b][static_cast<std::size_t>(c)]);
        push_unique(std::move(mid));
      }
  }
  return sample;
}

inline SpaceAssembly build_x_n(int n, const std::vector<int>& ks,
                               std::vector<Vec> sample) {
  AssemblyParams p;
  p.kind = AssemblyKind::x_n;
  p.ambient_dim = n;
  p.slice_level = n * n;
  for (int k : ks) {
    p.graphs.push_back({n, k});
    p.levels.push_back(n * n);
  }
  p.sample = std::move(sample);
  return build_assembly(p);
}

}  // namespace metriclab
