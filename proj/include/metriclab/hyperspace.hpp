#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "metriclab/common.hpp"
#include "metriclab/lp.hpp"
#include "metriclab/metric_space.hpp"
#include "metriclab/transport.hpp"

namespace metriclab {

/// A compact convex set of measures, represented by the convex hull of
/// finitely many generators. Exact duplicate generators are dropped at
/// construction; canonicalize() additionally prunes generators inside the
/// hull of the others.
class ConvexMeasureSet {
 public:
  ConvexMeasureSet(SpaceRef space, std::vector<Vec> generators)
      : space_(std::move(space)) {
    if (!space_) throw argument_error("ConvexMeasureSet requires a space");
    if (generators.empty())
      throw argument_error("ConvexMeasureSet requires at least one generator");
    for (auto& g : generators) {
      DiscreteMeasure checked(space_, std::move(g));  // validates the weights
      Vec w = checked.weights();
      bool dup = false;
      for (const auto& kept : gens_) {
        double gap = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
          gap = std::max(gap, std::fabs(kept[i] - w[i]));
        if (gap <= tol::weight) {
          dup = true;
          break;
        }
      }
      if (!dup) gens_.push_back(std::move(w));
    }
  }

  ConvexMeasureSet(SpaceRef space, const std::vector<DiscreteMeasure>& generators)
      : ConvexMeasureSet(std::move(space), [&] {
          std::vector<Vec> ws;
          for (const auto& m : generators) ws.push_back(m.weights());
          return ws;
        }()) {
    for (const auto& m : generators)
      if (!same_space(m.space(), space_))
        throw argument_error("ConvexMeasureSet: generator on a different space");
  }

  static ConvexMeasureSet dirac(SpaceRef space, std::size_t i) {
    Vec w(space->size(), 0.0);
    w[i] = 1.0;
    return ConvexMeasureSet(std::move(space), std::vector<Vec>{std::move(w)});
  }

  const SpaceRef& space() const { return space_; }
  const std::vector<Vec>& generators() const { return gens_; }
  DiscreteMeasure generator(std::size_t i) const {
    return DiscreteMeasure(space_, gens_[i]);
  }
  std::size_t num_generators() const { return gens_.size(); }

  /// The measure at simplex coordinates `mix` over the generators.
  DiscreteMeasure mixture(const Vec& mix) const {
    if (mix.size() != gens_.size())
      throw argument_error("mixture: wrong number of coefficients");
    Vec w(space_->size(), 0.0);
    for (std::size_t l = 0; l < gens_.size(); ++l)
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += mix[l] * gens_[l][i];
    return DiscreteMeasure(space_, std::move(w));
  }

 private:
  SpaceRef space_;
  std::vector<Vec> gens_;
};

struct HullDistanceResult {
  double distance = 0.0;
  Vec mixture;  // optimal simplex coefficients over B's generators
};

/// Kantorovich distance from a measure to the hull of B, solved as one
/// joint linear program over (coupling, simplex coefficients): the target
/// marginal of the coupling is constrained to equal the generator mixture,
/// which keeps everything linear. Nested optimization is deliberately not
/// used.
inline HullDistanceResult dist_point_to_hull(const DiscreteMeasure& mu,
                                             const ConvexMeasureSet& B) {
  if (!same_space(mu.space(), B.space()))
    throw argument_error("dist_point_to_hull: mismatched spaces");
  const FiniteMetricSpace& X = *mu.space();
  const std::size_t m = B.num_generators();

  const auto rows_idx = mu.support();
  // columns: union of the generators' supports
  std::vector<std::size_t> cols_idx;
  for (std::size_t i = 0; i < X.size(); ++i) {
    for (std::size_t l = 0; l < m; ++l)
      if (B.generators()[l][i] > 0.0) {
        cols_idx.push_back(i);
        break;
      }
  }
  const std::size_t R = rows_idx.size(), C = cols_idx.size();

  LpProblem lp;
  lp.num_vars = R * C + m;
  lp.cost.assign(lp.num_vars, 0.0);
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t c = 0; c < C; ++c)
      lp.cost[r * C + c] = X.dist(rows_idx[r], cols_idx[c]);

  lp.rows.assign(R + C + 1, Vec(lp.num_vars, 0.0));
  lp.rhs.assign(R + C + 1, 0.0);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t c = 0; c < C; ++c) lp.rows[r][r * C + c] = 1.0;
    lp.rhs[r] = mu.weight(rows_idx[r]);
  }
  for (std::size_t c = 0; c < C; ++c) {
    for (std::size_t r = 0; r < R; ++r) lp.rows[R + c][r * C + c] = 1.0;
    for (std::size_t l = 0; l < m; ++l)
      lp.rows[R + c][R * C + l] = -B.generators()[l][cols_idx[c]];
    lp.rhs[R + c] = 0.0;
  }
  for (std::size_t l = 0; l < m; ++l) lp.rows[R + C][R * C + l] = 1.0;
  lp.rhs[R + C] = 1.0;

  const LpSolution s = solve_lp(lp);
  if (s.status != LpStatus::optimal)
    throw validation_error("dist_point_to_hull: joint LP did not solve");

  HullDistanceResult out;
  out.distance = s.value;
  out.mixture.assign(m, 0.0);
  double total = 0.0;
  for (std::size_t l = 0; l < m; ++l) {
    out.mixture[l] = std::max(0.0, s.x[R * C + l]);
    total += out.mixture[l];
  }
  if (total > 0)
    for (auto& v : out.mixture) v /= total;
  return out;
}

/// Directed Hausdorff sweep: the farthest generator of A from hull(B).
/// Valid because measure-to-hull distance is convex on hull(A), so its
/// maximum is attained at a generator (property-tested, not just assumed).
inline double directed_hausdorff_ccp(const ConvexMeasureSet& A,
                                     const ConvexMeasureSet& B) {
  double worst = 0.0;
  for (std::size_t l = 0; l < A.num_generators(); ++l)
    worst = std::max(worst, dist_point_to_hull(A.generator(l), B).distance);
  return worst;
}

inline double hausdorff_ccp(const ConvexMeasureSet& A, const ConvexMeasureSet& B) {
  if (!same_space(A.space(), B.space()))
    throw argument_error("hausdorff_ccp: mismatched spaces");
  return std::max(directed_hausdorff_ccp(A, B), directed_hausdorff_ccp(B, A));
}

/// Hull image under the measure pushforward: the image of a hull under the
/// linear map is the hull of the generator images.
inline ConvexMeasureSet ccp_pushforward(const PointMap& f, const ConvexMeasureSet& A) {
  std::vector<Vec> gens;
  for (std::size_t l = 0; l < A.num_generators(); ++l)
    gens.push_back(pushforward(f, A.generator(l)).weights());
  return ConvexMeasureSet(f.target, std::move(gens));
}

/// Minimal generator list: drops every generator lying in the hull of the
/// others (distance zero by the joint LP). Order-independent on deduped
/// input, since hull vertices are exactly the points not in the hull of the
/// rest.
inline ConvexMeasureSet canonicalize(const ConvexMeasureSet& A) {
  const std::size_t m = A.num_generators();
  if (m == 1) return A;
  std::vector<bool> keep(m, true);
  for (std::size_t l = 0; l < m; ++l) {
    std::vector<Vec> others;
    for (std::size_t o = 0; o < m; ++o)
      if (o != l && keep[o]) others.push_back(A.generators()[o]);
    if (others.empty()) break;
    ConvexMeasureSet rest(A.space(), std::move(others));
    if (dist_point_to_hull(A.generator(l), rest).distance <= tol::metric)
      keep[l] = false;
  }
  std::vector<Vec> kept;
  for (std::size_t l = 0; l < m; ++l)
    if (keep[l]) kept.push_back(A.generators()[l]);
  if (kept.empty()) kept.push_back(A.generators()[0]);
  return ConvexMeasureSet(A.space(), std::move(kept));
}

}  // namespace metriclab
