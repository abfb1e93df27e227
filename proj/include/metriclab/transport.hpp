#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "metriclab/common.hpp"
#include "metriclab/lp.hpp"
#include "metriclab/metric_space.hpp"

namespace metriclab {

/// Finitely supported probability measure on a FiniteMetricSpace.
/// Weight vectors within 1e-12 of total mass 1 are renormalized; anything
/// further off is rejected as user error.
class DiscreteMeasure {
 public:
  DiscreteMeasure(SpaceRef space, Vec weights)
      : space_(std::move(space)), w_(std::move(weights)) {
    if (!space_) throw argument_error("DiscreteMeasure requires a space");
    if (w_.size() != space_->size())
      throw validation_error("DiscreteMeasure: weight count does not match the space");
    double total = 0.0;
    for (double v : w_) {
      if (!(v >= 0.0))
        throw validation_error("DiscreteMeasure: negative or non-finite weight");
      total += v;
    }
    if (std::fabs(total - 1.0) > tol::weight)
      throw validation_error("DiscreteMeasure: weights sum to " +
                             std::to_string(total) + ", not 1");
    if (total != 1.0)
      for (double& v : w_) v /= total;
  }

  static DiscreteMeasure dirac(SpaceRef space, std::size_t i) {
    if (!space || i >= space->size())
      throw argument_error("dirac: point index out of range");
    Vec w(space->size(), 0.0);
    w[i] = 1.0;
    return DiscreteMeasure(std::move(space), std::move(w));
  }

  static DiscreteMeasure uniform(SpaceRef space) {
    if (!space || space->size() == 0) throw argument_error("uniform: empty space");
    Vec w(space->size(), 1.0 / static_cast<double>(space->size()));
    return DiscreteMeasure(std::move(space), std::move(w));
  }

  const SpaceRef& space() const { return space_; }
  const Vec& weights() const { return w_; }
  double weight(std::size_t i) const { return w_[i]; }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] > 0.0) s.push_back(i);
    return s;
  }

 private:
  SpaceRef space_;
  Vec w_;
};

struct TransportPlan {
  std::vector<Vec> coupling;  // full |X| x |X| matrix
  double cost = 0.0;
};

/// A short test function on the points, witnessing the dual value.
struct DualPotential {
  Vec phi;
  double value = 0.0;
};

struct KantorovichResult {
  double value = 0.0;  // optimal coupling cost
  TransportPlan plan;
  DualPotential potential;
  double duality_gap = 0.0;  // |primal - dual|, the strong-duality certificate
  std::size_t lp_pivots = 0;
};

/// First Wasserstein distance between two measures on one space, solved as
/// the coupling linear program on the supports. The dual witness is the
/// c-transform of the LP column multipliers, extended over every point of
/// the space, so the returned potential is short by construction and its
/// value certifies the primal.
inline KantorovichResult kantorovich(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (!same_space(mu.space(), nu.space()))
    throw argument_error("kantorovich: measures live on different spaces");
  const FiniteMetricSpace& X = *mu.space();
  const std::size_t n = X.size();

  const auto rows_idx = mu.support();
  const auto cols_idx = nu.support();
  const std::size_t R = rows_idx.size(), S = cols_idx.size();

  LpProblem lp;
  lp.num_vars = R * S;
  lp.cost.resize(lp.num_vars);
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t s = 0; s < S; ++s)
      lp.cost[r * S + s] = X.dist(rows_idx[r], cols_idx[s]);

  // row marginals, then all but the last column marginal (it is implied)
  lp.rows.assign(R + S - 1, Vec(lp.num_vars, 0.0));
  lp.rhs.assign(R + S - 1, 0.0);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t s = 0; s < S; ++s) lp.rows[r][r * S + s] = 1.0;
    lp.rhs[r] = mu.weight(rows_idx[r]);
  }
  for (std::size_t s = 0; s + 1 < S; ++s) {
    for (std::size_t r = 0; r < R; ++r) lp.rows[R + s][r * S + s] = 1.0;
    lp.rhs[R + s] = nu.weight(cols_idx[s]);
  }

  const LpSolution lps = solve_lp(lp);
  if (lps.status != LpStatus::optimal)
    throw validation_error("kantorovich: transport LP did not reach optimality");

  KantorovichResult out;
  out.lp_pivots = lps.pivots;
  out.plan.coupling.assign(n, Vec(n, 0.0));
  double cost = 0.0;
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t s = 0; s < S; ++s) {
      const double f = lps.x[r * S + s];
      if (f <= 0.0) continue;
      out.plan.coupling[rows_idx[r]][cols_idx[s]] = f;
      cost += f * X.dist(rows_idx[r], cols_idx[s]);
    }
  out.plan.cost = cost;
  out.value = cost;

  // column multipliers; the dropped column gets 0
  Vec v(S, 0.0);
  if (lps.dual.size() == R + S - 1)
    for (std::size_t s = 0; s + 1 < S; ++s) v[s] = lps.dual[R + s];

  // c-transform: phi(z) = min_s (d(z, col_s) - v_s), short on the whole space
  out.potential.phi.assign(n, 0.0);
  for (std::size_t z = 0; z < n; ++z) {
    double best = kInf;
    for (std::size_t s = 0; s < S; ++s)
      best = std::min(best, X.dist(z, cols_idx[s]) - v[s]);
    out.potential.phi[z] = best;
  }
  double dual_value = 0.0;
  for (std::size_t z = 0; z < n; ++z)
    dual_value += out.potential.phi[z] * (mu.weight(z) - nu.weight(z));
  out.potential.value = std::fabs(dual_value);
  out.duality_gap = std::fabs(out.value - out.potential.value);
  return out;
}

/// Image measure: the weight of a target point is the mass of its fiber.
inline DiscreteMeasure pushforward(const PointMap& f, const DiscreteMeasure& mu) {
  if (!same_space(f.source, mu.space()))
    throw argument_error("pushforward: measure does not live on the map's source");
  Vec w(f.target->size(), 0.0);
  for (std::size_t i = 0; i < f.assignment.size(); ++i)
    w[f.assignment[i]] += mu.weight(i);
  return DiscreteMeasure(f.target, std::move(w));
}

}  // namespace metriclab
