#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "metriclab/common.hpp"
#include "metriclab/hyperspace.hpp"

namespace metriclab {

/// Compact convex subset of R^n, as the hull of a finite vertex list.
struct Polytope {
  std::size_t dim = 0;
  std::vector<Vec> vertices;

  Polytope(std::size_t d, std::vector<Vec> verts)
      : dim(d), vertices(std::move(verts)) {
    if (dim == 0) throw argument_error("Polytope needs dim >= 1");
    if (vertices.empty()) throw argument_error("Polytope needs at least one vertex");
    for (const auto& v : vertices)
      if (v.size() != dim) throw argument_error("Polytope vertex of wrong dimension");
  }

  static Polytope point(Vec p) {
    const std::size_t d = p.size();
    return Polytope(d, {std::move(p)});
  }
};

/// Finitely supported measure with explicit Euclidean coordinates.
struct EmbeddedMeasure {
  std::vector<Vec> points;
  Vec weights;

  EmbeddedMeasure(std::vector<Vec> pts, Vec w)
      : points(std::move(pts)), weights(std::move(w)) {
    if (points.empty() || points.size() != weights.size())
      throw argument_error("EmbeddedMeasure: points and weights must align");
    const std::size_t d = points.front().size();
    for (const auto& p : points)
      if (p.size() != d) throw argument_error("EmbeddedMeasure: mixed dimensions");
    double total = 0.0;
    for (double v : weights) {
      if (!(v >= 0.0)) throw validation_error("EmbeddedMeasure: negative weight");
      total += v;
    }
    if (std::fabs(total - 1.0) > tol::weight)
      throw validation_error("EmbeddedMeasure: weights sum to " + std::to_string(total));
    if (total != 1.0)
      for (double& v : weights) v /= total;
  }
};

/// b(mu): the weighted mean, the unique point every linear functional sends
/// to its integral.
inline Vec barycenter(const EmbeddedMeasure& mu) {
  Vec b(mu.points.front().size(), 0.0);
  for (std::size_t i = 0; i < mu.points.size(); ++i)
    for (std::size_t c = 0; c < b.size(); ++c) b[c] += mu.weights[i] * mu.points[i][c];
  return b;
}

namespace detail {

// affine minimizer of |sum beta_i p_i| with sum beta_i = 1, free signs;
// solved through the bordered Gram system. Returns false when the system is
// numerically singular (affinely dependent working set).
inline bool affine_minimizer(const std::vector<Vec>& pts,
                             const std::vector<std::size_t>& set, Vec& beta) {
  const std::size_t m = set.size();
  std::vector<Vec> M(m + 1, Vec(m + 1, 0.0));
  Vec rhs(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) M[i][j] = dot(pts[set[i]], pts[set[j]]);
    M[i][m] = 1.0;
    M[m][i] = 1.0;
  }
  rhs[m] = 1.0;

  // scale-aware pivot threshold
  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::fabs(M[i][i]));

  std::vector<std::size_t> perm(m + 1);
  for (std::size_t i = 0; i <= m; ++i) perm[i] = i;
  for (std::size_t col = 0; col <= m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r <= m; ++r)
      if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
    if (std::fabs(M[piv][col]) < 1e-12 * scale) return false;
    std::swap(M[col], M[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (std::size_t r = col + 1; r <= m; ++r) {
      const double f = M[r][col] / M[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c <= m; ++c) M[r][c] -= f * M[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  Vec sol(m + 1, 0.0);
  for (std::size_t i = m + 1; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j <= m; ++j) s -= M[i][j] * sol[j];
    sol[i] = s / M[i][i];
  }
  beta.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) beta[i] = sol[i];
  return true;
}

inline Vec combination(const std::vector<Vec>& pts, const std::vector<std::size_t>& set,
                       const Vec& alpha, std::size_t dim) {
  Vec x(dim, 0.0);
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t c = 0; c < dim; ++c) x[c] += alpha[i] * pts[set[i]][c];
  return x;
}

}  // namespace detail

/// Nearest point of hull(A) to the origin, by the classical active-set
/// method over the vertex list (major cycles add the vertex that most
/// violates optimality, minor cycles restore feasibility of the affine
/// minimizer). Deterministic: ties pick the lowest vertex index, there is
/// no randomization anywhere.
inline Vec min_norm_point(const Polytope& A) {
  // exact duplicates would only make Gram systems singular
  std::vector<Vec> pts;
  for (const auto& v : A.vertices) {
    bool dup = false;
    for (const auto& kept : pts)
      if (euclidean(kept, v) == 0.0) dup = true;
    if (!dup) pts.push_back(v);
  }
  const std::size_t dim = A.dim;

  double scale2 = 1.0;
  for (const auto& p : pts) scale2 = std::max(scale2, norm2(p));
  const double eps_opt = 1e-12 * scale2;

  std::size_t first = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (norm2(pts[i]) < norm2(pts[first])) first = i;

  std::vector<std::size_t> set{first};
  Vec alpha{1.0};
  Vec x = pts[first];

  const std::size_t major_cap = 4 * pts.size() + 64;
  for (std::size_t major = 0; major < major_cap; ++major) {
    // most violating vertex under the current point
    std::size_t best = 0;
    double best_ip = dot(x, pts[0]);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double ip = dot(x, pts[i]);
      if (ip < best_ip) {
        best_ip = ip;
        best = i;
      }
    }
    if (best_ip >= norm2(x) - eps_opt) break;                       // optimal
    if (std::find(set.begin(), set.end(), best) != set.end()) break;  // stall guard

    set.push_back(best);
    alpha.push_back(0.0);

    for (std::size_t minor = 0; minor <= set.size() + 1; ++minor) {
      Vec beta;
      if (!detail::affine_minimizer(pts, set, beta)) {
        // affinely dependent set: drop the newcomer and stop improving
        set.pop_back();
        alpha.pop_back();
        double total = 0.0;
        for (double a : alpha) total += a;
        if (total <= 1e-12)
          alpha.assign(set.size(), 1.0 / static_cast<double>(set.size()));
        else
          for (auto& a : alpha) a /= total;
        return detail::combination(pts, set, alpha, dim);
      }
      double min_beta = beta[0];
      for (double b : beta) min_beta = std::min(min_beta, b);
      if (min_beta >= -1e-12) {
        alpha = beta;
        for (auto& a : alpha) a = std::max(a, 0.0);
        break;
      }
      // walk from alpha toward beta until a coefficient dies
      double theta = 1.0;
      for (std::size_t i = 0; i < set.size(); ++i)
        if (beta[i] < -1e-12)
          theta = std::min(theta, alpha[i] / (alpha[i] - beta[i]));
      for (std::size_t i = 0; i < set.size(); ++i)
        alpha[i] = (1.0 - theta) * alpha[i] + theta * beta[i];
      for (std::size_t i = set.size(); i-- > 0;)
        if (alpha[i] <= 1e-12) {
          set.erase(set.begin() + static_cast<std::ptrdiff_t>(i));
          alpha.erase(alpha.begin() + static_cast<std::ptrdiff_t>(i));
        }
      double total = 0.0;
      for (double a : alpha) total += a;
      for (auto& a : alpha) a /= total;
    }
    x = detail::combination(pts, set, alpha, dim);
  }
  return x;
}

/// Euclidean distance from a query point to hull(B): the same nearest-point
/// machinery, translated so the query sits at the origin.
inline double dist_to_hull(const Vec& q, const Polytope& B) {
  if (q.size() != B.dim) throw argument_error("dist_to_hull: dimension mismatch");
  std::vector<Vec> shifted;
  shifted.reserve(B.vertices.size());
  for (const auto& v : B.vertices) shifted.push_back(sub(v, q));
  return norm(min_norm_point(Polytope(B.dim, std::move(shifted))));
}

inline double directed_hausdorff_polytopes(const Polytope& A, const Polytope& B) {
  double worst = 0.0;
  for (const auto& v : A.vertices) worst = std::max(worst, dist_to_hull(v, B));
  return worst;
}

inline double hausdorff_polytopes(const Polytope& A, const Polytope& B) {
  if (A.dim != B.dim) throw argument_error("hausdorff_polytopes: dimension mismatch");
  return std::max(directed_hausdorff_polytopes(A, B),
                  directed_hausdorff_polytopes(B, A));
}

inline Polytope canonicalize(const Polytope& A) {
  std::vector<Vec> verts;
  for (const auto& v : A.vertices) {
    bool dup = false;
    for (const auto& kept : verts)
      if (euclidean(kept, v) <= 1e-12) dup = true;
    if (!dup) verts.push_back(v);
  }
  if (verts.size() <= 1) return Polytope(A.dim, std::move(verts));
  std::vector<bool> keep(verts.size(), true);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < verts.size(); ++j)
      if (j != i && keep[j]) others.push_back(verts[j]);
    if (others.empty()) break;
    if (dist_to_hull(verts[i], Polytope(A.dim, std::move(others))) <= tol::nearest)
      keep[i] = false;
  }
  std::vector<Vec> kept;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (keep[i]) kept.push_back(verts[i]);
  if (kept.empty()) kept.push_back(verts.front());
  return Polytope(A.dim, std::move(kept));
}

/// Image of a hull of measures under the barycenter map, given coordinates
/// for the points of the underlying space. Linearity carries generators to
/// vertices.
inline Polytope barycenter_image(const ConvexMeasureSet& A,
                                 const std::vector<Vec>& coords) {
  const std::size_t n = A.space()->size();
  if (coords.size() != n)
    throw argument_error("barycenter_image: need coordinates for every point");
  std::size_t dim = 0;
  for (const auto& c : coords) dim = std::max(dim, c.size());
  if (dim == 0) throw argument_error("barycenter_image: no coordinates supplied");
  std::vector<Vec> verts;
  for (const auto& g : A.generators()) {
    Vec b(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (g[i] == 0.0) continue;
      if (coords[i].empty())
        throw argument_error("barycenter_image: support point " + std::to_string(i) +
                             " has no coordinates");
      for (std::size_t c = 0; c < coords[i].size(); ++c) b[c] += g[i] * coords[i][c];
    }
    verts.push_back(std::move(b));
  }
  return Polytope(dim, std::move(verts));
}

// ---------------------------------------------------------------------------
// Empirical probe of the nearest-point map's Lipschitz behaviour

struct ProbeFamily {
  enum class Kind { thin_segment_pairs, singleton_translates, identical_pairs };
  Kind kind = Kind::thin_segment_pairs;
  std::size_t dim = 2;
  double scale_lo = 0.5, scale_hi = 2.0;
  double width_lo = 0.02, width_hi = 0.3;    // tangential extent, relative
  double droop_lo = 0.001, droop_hi = 0.05;  // radial perturbation, relative
};

struct ProbeSample {
  Polytope a, b;
  Vec pi_a, pi_b;
  double hausdorff = 0.0;
  double ratio = 0.0;
  bool skipped = false;  // degenerate pair, hausdorff == 0
  bool fixed = false;    // the pinned witness pair, independent of the family
};

struct ProbeReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  ProbeFamily family;
  std::vector<ProbeSample> samples;  // fixed pair first, then the trials
  double max_ratio = 0.0;            // over everything evaluated
  double family_max_ratio = 0.0;     // over the family trials only
  double fixed_ratio = 0.0;
  std::size_t max_index = 0;
  bool shortness_violated = false;
};

inline ProbeSample evaluate_probe_pair(Polytope a, Polytope b, bool fixed = false) {
  ProbeSample s{std::move(a), std::move(b), {}, {}, 0.0, 0.0, false, fixed};
  s.pi_a = min_norm_point(s.a);
  s.pi_b = min_norm_point(s.b);
  s.hausdorff = hausdorff_polytopes(s.a, s.b);
  if (s.hausdorff <= 1e-15) {
    s.skipped = true;
    return s;
  }
  s.ratio = euclidean(s.pi_a, s.pi_b) / s.hausdorff;
  return s;
}

inline Polytope fixed_probe_first() {
  return Polytope(2, {{0.0, 1.0}, {0.1, 1.0}});
}
inline Polytope fixed_probe_second() {
  return Polytope(2, {{0.0, 1.0}, {0.1, 0.99}});
}

/// Samples polytope pairs and measures |pi(A) - pi(B)| / d_H(A, B). The
/// fixed thin-segment pair is always evaluated first: it is the recorded
/// counterexample to the claim that the nearest-point map is short.
inline ProbeReport pi_lemma_probe(std::size_t trials, std::uint64_t seed,
                                  const ProbeFamily& family = {}) {
  if (trials < 1) throw argument_error("pi_lemma_probe needs trials >= 1");
  ProbeReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.family = family;

  rep.samples.push_back(
      evaluate_probe_pair(fixed_probe_first(), fixed_probe_second(), true));
  rep.fixed_ratio = rep.samples[0].ratio;

  for (std::size_t t = 0; t < trials; ++t) {
    Rng r = Rng::stream(seed, t);
    switch (family.kind) {
      case ProbeFamily::Kind::thin_segment_pairs: {
        const double s = r.uniform(family.scale_lo, family.scale_hi);
        const double angle = r.uniform(0.0, 6.283185307179586);
        const Vec radial{std::cos(angle), std::sin(angle)};
        const Vec tangent{-std::sin(angle), std::cos(angle)};
        const Vec base = scale(radial, s);
        const double w = s * r.uniform(family.width_lo, family.width_hi);
        const double h = s * r.uniform(family.droop_lo, family.droop_hi);
        const Vec tip = add(base, scale(tangent, w));
        Polytope a(2, {base, tip});
        Polytope b(2, {base, sub(tip, scale(radial, h))});
        rep.samples.push_back(evaluate_probe_pair(std::move(a), std::move(b)));
        break;
      }
      case ProbeFamily::Kind::singleton_translates: {
        Vec p(family.dim), v(family.dim);
        for (auto& c : p) c = r.uniform(-2.0, 2.0);
        for (auto& c : v) c = r.uniform(-1.0, 1.0);
        Polytope a(family.dim, {p});
        Polytope b(family.dim, {add(p, v)});
        rep.samples.push_back(evaluate_probe_pair(std::move(a), std::move(b)));
        break;
      }
      case ProbeFamily::Kind::identical_pairs: {
        std::vector<Vec> verts;
        const std::size_t count = 3 + r.below(4);
        for (std::size_t i = 0; i < count; ++i) {
          Vec p(family.dim);
          for (auto& c : p) c = r.uniform(-2.0, 2.0);
          verts.push_back(std::move(p));
        }
        Polytope a(family.dim, verts);
        Polytope b(family.dim, verts);
        rep.samples.push_back(evaluate_probe_pair(std::move(a), std::move(b)));
        break;
      }
    }
  }

  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    const auto& s = rep.samples[i];
    if (s.skipped) continue;
    if (s.ratio > rep.max_ratio) {
      rep.max_ratio = s.ratio;
      rep.max_index = i;
    }
    if (i > 0) rep.family_max_ratio = std::max(rep.family_max_ratio, s.ratio);
  }
  rep.shortness_violated = rep.max_ratio > 1.0 + 1e-9;
  return rep;
}

}  // namespace metriclab
