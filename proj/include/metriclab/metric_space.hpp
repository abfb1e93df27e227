#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "metriclab/common.hpp"

namespace metriclab {

/// A labeled finite point set with a full distance matrix. The universal
/// substrate: every metric computed by this library ends up in one of these.
/// Properness is automatic here — every closed ball of a finite space is a
/// finite set — so no operation checks it.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  FiniteMetricSpace(std::vector<std::string> labels,
                    const std::vector<std::vector<double>>& dist)
      : labels_(std::move(labels)), n_(labels_.size()) {
    if (dist.size() != n_)
      throw structural_error("distance matrix has " + std::to_string(dist.size()) +
                             " rows for " + std::to_string(n_) + " labels");
    d_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (dist[i].size() != n_)
        throw structural_error("distance matrix is not square: row " +
                               std::to_string(i) + " has " +
                               std::to_string(dist[i].size()) + " entries");
      for (std::size_t j = 0; j < n_; ++j) d_[i * n_ + j] = dist[i][j];
    }
  }

  static FiniteMetricSpace from_flat(std::vector<std::string> labels, Vec flat) {
    FiniteMetricSpace s;
    s.n_ = labels.size();
    if (flat.size() != s.n_ * s.n_)
      throw structural_error("flat distance matrix size mismatch");
    s.labels_ = std::move(labels);
    s.d_ = std::move(flat);
    return s;
  }

  std::size_t size() const { return n_; }
  double dist(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec& flat() const { return d_; }
  const double* row(std::size_t i) const { return d_.data() + i * n_; }

  double diameter() const {
    double m = 0.0;
    for (double v : d_) m = std::max(m, v);
    return m;
  }

  bool same_as(const FiniteMetricSpace& o) const {
    return this == &o || (labels_ == o.labels_ && d_ == o.d_);
  }

 private:
  std::vector<std::string> labels_;
  std::size_t n_ = 0;
  Vec d_;  // row-major
};

using SpaceRef = std::shared_ptr<const FiniteMetricSpace>;

inline SpaceRef make_space(FiniteMetricSpace s) {
  return std::make_shared<const FiniteMetricSpace>(std::move(s));
}

inline bool same_space(const SpaceRef& a, const SpaceRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

// ---------------------------------------------------------------------------
// Metric axiom verification

struct MetricViolation {
  enum class Kind { diagonal, positivity, triangle };
  Kind kind;
  // triangle: d(a,c) > d(a,b) + d(b,c); diagonal/positivity use a,c only
  std::size_t a, b, c;
  double amount;  // size of the violation
};

struct MetricReport {
  bool pass = true;
  std::vector<MetricViolation> violations;  // capped; see total below
  std::size_t total_violations = 0;
  double tolerance = tol::metric;
};

/// Checks the three metric axioms within an absolute tolerance.
/// Non-square input never gets here (the type enforces it); asymmetric or
/// non-finite input is a structural error, distinct from axiom failure.
inline MetricReport verify_metric(const FiniteMetricSpace& space,
                                  double tolerance = tol::metric,
                                  std::size_t max_recorded = 16) {
  const std::size_t n = space.size();
  MetricReport report;
  report.tolerance = tolerance;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = space.dist(i, j);
      if (!std::isfinite(v))
        throw structural_error("non-finite distance at (" + std::to_string(i) +
                               "," + std::to_string(j) + ")");
      if (j > i && std::fabs(v - space.dist(j, i)) > tolerance)
        throw structural_error("asymmetric distance at (" + std::to_string(i) +
                               "," + std::to_string(j) + ")");
    }

  auto record = [&](MetricViolation v) {
    report.pass = false;
    ++report.total_violations;
    if (report.violations.size() < max_recorded) report.violations.push_back(v);
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(space.dist(i, i)) > tolerance)
      record({MetricViolation::Kind::diagonal, i, i, i, std::fabs(space.dist(i, i))});
    for (std::size_t j = i + 1; j < n; ++j)
      if (space.dist(i, j) <= tolerance)
        record({MetricViolation::Kind::positivity, i, i, j, space.dist(i, j)});
  }

  // triangle: iterate with the middle point outermost so the inner loop
  // streams two matrix rows
  for (std::size_t b = 0; b < n && report.total_violations < 1000000; ++b) {
    const double* db = space.row(b);
    for (std::size_t a = 0; a < n; ++a) {
      const double* da = space.row(a);
      const double dab = da[b];
      for (std::size_t c = 0; c < n; ++c) {
        const double excess = da[c] - dab - db[c];
        if (excess > tolerance) record({MetricViolation::Kind::triangle, a, b, c, excess});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// (lambda, epsilon)-Lipschitz diagnostics

/// A total map between finite metric spaces, index to index.
struct PointMap {
  SpaceRef source;
  SpaceRef target;
  std::vector<std::size_t> assignment;

  PointMap(SpaceRef src, SpaceRef tgt, std::vector<std::size_t> assign)
      : source(std::move(src)), target(std::move(tgt)), assignment(std::move(assign)) {
    if (!source || !target) throw argument_error("PointMap requires both spaces");
    if (assignment.size() != source->size())
      throw argument_error("PointMap assignment is not total");
    for (std::size_t t : assignment)
      if (t >= target->size()) throw argument_error("PointMap target index out of range");
  }

  std::size_t operator()(std::size_t i) const { return assignment[i]; }
};

inline PointMap identity_map(const SpaceRef& s) {
  std::vector<std::size_t> a(s->size());
  std::iota(a.begin(), a.end(), std::size_t{0});
  return PointMap(s, s, std::move(a));
}

inline PointMap compose(const PointMap& g, const PointMap& f) {
  if (!same_space(f.target, g.source))
    throw argument_error("compose: inner target does not match outer source");
  std::vector<std::size_t> a(f.assignment.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g.assignment[f.assignment[i]];
  return PointMap(f.source, g.target, std::move(a));
}

struct LipschitzReport {
  double epsilon = 0.0;
  double lambda_star = 0.0;
  std::pair<std::size_t, std::size_t> witness{0, 0};  // lowest index pair on ties
};

namespace detail {
// target_dist(u, v) must accept source indices and return the distance
// between their images.
template <class TargetDist>
LipschitzReport lipschitz_scan(const FiniteMetricSpace& source, double epsilon,
                               TargetDist&& target_dist) {
  if (source.size() < 2)
    throw argument_error("lipschitz_constant needs at least 2 source points");
  if (epsilon < 0) throw argument_error("epsilon must be >= 0");
  LipschitzReport rep;
  rep.epsilon = epsilon;
  rep.witness = {0, 1};
  for (std::size_t i = 0; i < source.size(); ++i)
    for (std::size_t j = i + 1; j < source.size(); ++j) {
      const double ds = source.dist(i, j);
      if (ds <= 0) continue;  // degenerate pair carries no constraint
      const double ratio = std::max(0.0, (target_dist(i, j) - epsilon) / ds);
      if (ratio > rep.lambda_star) {
        rep.lambda_star = ratio;
        rep.witness = {i, j};
      }
    }
  return rep;
}
}  // namespace detail

/// Least lambda such that f is (lambda, epsilon)-Lipschitz on this instance.
inline LipschitzReport lipschitz_constant(const PointMap& f, double epsilon) {
  return detail::lipschitz_scan(*f.source, epsilon, [&](std::size_t i, std::size_t j) {
    return f.target->dist(f.assignment[i], f.assignment[j]);
  });
}

/// Same scan for a map into R^n given by an image table (Euclidean target).
inline LipschitzReport lipschitz_constant(const FiniteMetricSpace& source,
                                          const std::vector<Vec>& image,
                                          double epsilon) {
  if (image.size() != source.size())
    throw argument_error("image table size does not match source");
  return detail::lipschitz_scan(source, epsilon, [&](std::size_t i, std::size_t j) {
    return euclidean(image[i], image[j]);
  });
}

inline bool is_short(const PointMap& f, double slack = tol::metric) {
  return lipschitz_constant(f, 0.0).lambda_star <= 1.0 + slack;
}

// ---------------------------------------------------------------------------
// C-chain components (the asdim-0 diagnostic)

struct ChainReport {
  double C = 0.0;
  std::vector<std::vector<std::size_t>> components;  // sorted by first member
  double max_diameter = 0.0;
};

/// Partitions the space into C-connected components: i and j share a
/// component iff a chain with consecutive gaps <= C joins them. Reports the
/// largest metric diameter over the components.
inline ChainReport chain_components(const FiniteMetricSpace& space, double C) {
  if (!(C > 0)) throw argument_error("chain_components requires C > 0");
  const std::size_t n = space.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::vector<std::size_t> rankv(n, 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rankv[a] < rankv[b]) std::swap(a, b);
    parent[b] = a;
    if (rankv[a] == rankv[b]) ++rankv[a];
  };
  const double cut = C + tol::metric;
  for (std::size_t i = 0; i < n; ++i) {
    const double* di = space.row(i);
    for (std::size_t j = i + 1; j < n; ++j)
      if (di[j] <= cut) unite(i, j);
  }

  ChainReport rep;
  rep.C = C;
  std::vector<std::vector<std::size_t>> buckets(n);
  for (std::size_t i = 0; i < n; ++i) buckets[find(i)].push_back(i);
  for (auto& b : buckets)
    if (!b.empty()) rep.components.push_back(std::move(b));
  std::sort(rep.components.begin(), rep.components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  for (const auto& comp : rep.components)
    for (std::size_t x = 0; x < comp.size(); ++x) {
      const double* dr = space.row(comp[x]);
      for (std::size_t y = x + 1; y < comp.size(); ++y)
        rep.max_diameter = std::max(rep.max_diameter, dr[comp[y]]);
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Maximal glued metric

struct GlueDisagreement {
  std::size_t i, j;      // indices into the glued space
  std::size_t part;      // which supplied part disagreed
  double supplied;       // the distance that part asked for
  double glued;          // the strictly smaller glued value
};

struct GlueResult {
  FiniteMetricSpace space;
  std::vector<GlueDisagreement> disagreements;  // capped
  std::size_t disagreement_count = 0;
};

/// Largest metric dominated by every supplied partial distance: all-pairs
/// shortest paths over the union multigraph of the parts, points identified
/// by label. Pairs where the glued metric undercuts a supplied value are
/// reported, not erased.
inline GlueResult glue_maximal(const std::vector<FiniteMetricSpace>& parts,
                               std::size_t max_recorded = 10000) {
  if (parts.empty()) throw argument_error("glue_maximal needs at least one part");

  // union of labels in first-appearance order
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> part_index(parts.size());
  {
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      part_index[p].resize(parts[p].size());
      for (std::size_t i = 0; i < parts[p].size(); ++i) {
        const std::string& lab = parts[p].labels()[i];
        auto it = seen.find(lab);
        if (it == seen.end()) {
          it = seen.emplace(lab, labels.size()).first;
          labels.push_back(lab);
        }
        part_index[p][i] = it->second;
      }
    }
  }

  const std::size_t n = labels.size();
  Vec d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t i = 0; i < parts[p].size(); ++i) {
      const std::size_t gi = part_index[p][i];
      for (std::size_t j = 0; j < parts[p].size(); ++j) {
        const std::size_t gj = part_index[p][j];
        double& slot = d[gi * n + gj];
        slot = std::min(slot, parts[p].dist(i, j));
      }
    }

  // Floyd-Warshall over the union
  for (std::size_t k = 0; k < n; ++k) {
    const double* dk = d.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (dik == kInf) continue;
      double* di = d.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + dk[j];
        if (via < di[j]) di[j] = via;
      }
    }
  }

  // connectivity
  for (std::size_t i = 1; i < n; ++i)
    if (d[i] == kInf) {
      // name the disconnected label classes by one representative each
      std::vector<std::size_t> reps{0};
      for (std::size_t v = 1; v < n; ++v) {
        bool reached = false;
        for (std::size_t r : reps)
          if (d[r * n + v] < kInf) {
            reached = true;
            break;
          }
        if (!reached) reps.push_back(v);
      }
      std::string msg = "glue_maximal: union graph is disconnected; " +
                        std::to_string(reps.size()) + " classes:";
      for (std::size_t c = 0; c < reps.size() && c < 8; ++c)
        msg += " [" + labels[reps[c]] + "]";
      throw validation_error(msg);
    }

  GlueResult result;
  result.space = FiniteMetricSpace::from_flat(std::move(labels), std::move(d));
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t i = 0; i < parts[p].size(); ++i)
      for (std::size_t j = i + 1; j < parts[p].size(); ++j) {
        const double supplied = parts[p].dist(i, j);
        const double glued =
            result.space.dist(part_index[p][i], part_index[p][j]);
        if (glued < supplied - tol::metric) {
          ++result.disagreement_count;
          if (result.disagreements.size() < max_recorded)
            result.disagreements.push_back(
                {part_index[p][i], part_index[p][j], p, supplied, glued});
        }
      }
  return result;
}

}  // namespace metriclab
