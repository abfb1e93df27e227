#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "metriclab/assembly.hpp"
#include "metriclab/common.hpp"
#include "metriclab/euclid.hpp"
#include "metriclab/hyperspace.hpp"
#include "metriclab/metric_space.hpp"

namespace metriclab {

// The contradiction machinery: how cheaply can a finite glued space be
// retracted onto its Euclidean part? The objective is the worst pair ratio
//
//     max over pairs (w,w') of  max(0, |r(w) - r(w')| - eps) / d(w, w')
//
// with r pinned to the identity on anchors. It is a pointwise max of
// convex functions of the free placements, so every local minimum found is
// global; the solver is plain subgradient descent with a decaying step and
// full certificate sweeps (every pair term is evaluated at every step).

struct RetractionInstance {
  SpaceRef space;
  std::vector<std::optional<Vec>> anchor_coords;  // engaged entries are anchors
  std::size_t dim = 0;
  double epsilon = 0.0;
  // native coordinates of free points, when the construction knows them
  // (inner shell vertices do); used as the default initializer
  std::vector<std::optional<Vec>> own_coords;

  RetractionInstance(SpaceRef s, std::vector<std::optional<Vec>> anchors,
                     std::size_t d, double eps,
                     std::vector<std::optional<Vec>> own = {})
      : space(std::move(s)),
        anchor_coords(std::move(anchors)),
        dim(d),
        epsilon(eps),
        own_coords(std::move(own)) {
    if (!space) throw argument_error("RetractionInstance requires a space");
    if (anchor_coords.size() != space->size())
      throw argument_error("RetractionInstance: anchor table size mismatch");
    if (eps < 0) throw argument_error("RetractionInstance: epsilon must be >= 0");
    if (own_coords.empty()) own_coords.assign(space->size(), std::nullopt);
    if (own_coords.size() != space->size())
      throw argument_error("RetractionInstance: own-coordinate table size mismatch");
    std::size_t count = 0;
    for (const auto& a : anchor_coords)
      if (a) {
        ++count;
        if (a->size() != dim)
          throw argument_error("RetractionInstance: anchor coordinate dimension");
      }
    if (count == 0) throw argument_error("RetractionInstance: no anchors");
  }

  std::vector<std::size_t> anchors() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < anchor_coords.size(); ++i)
      if (anchor_coords[i]) out.push_back(i);
    return out;
  }
  std::vector<std::size_t> free_points() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < anchor_coords.size(); ++i)
      if (!anchor_coords[i]) out.push_back(i);
    return out;
  }
};

/// Anchors are the Euclidean sample of an assembly (which, for the glued
/// spaces, contains every outer corner); free points are the graph-only
/// vertices.
inline RetractionInstance make_retraction_instance(const SpaceAssembly& a,
                                                   double epsilon) {
  if (a.params.kind != AssemblyKind::x_n && a.params.kind != AssemblyKind::xprime_slice)
    throw argument_error("make_retraction_instance expects an x_n or slice assembly");
  const std::size_t dim = a.params.kind == AssemblyKind::x_n
                              ? static_cast<std::size_t>(a.params.ambient_dim)
                              : a.tags.empty() ? 0 : a.tags.front().coords.size();
  std::vector<std::optional<Vec>> anchors(a.tags.size());
  std::vector<std::optional<Vec>> own(a.tags.size());
  for (std::size_t i = 0; i < a.tags.size(); ++i) {
    Vec padded(dim, 0.0);
    for (std::size_t c = 0; c < dim && c < a.tags[i].coords.size(); ++c)
      padded[c] = a.tags[i].coords[c];
    if (a.tags[i].origin == PointOrigin::euclid_sample)
      anchors[i] = padded;
    else
      own[i] = padded;
  }
  auto ref = make_space(a.space);
  return RetractionInstance(std::move(ref), std::move(anchors), dim, epsilon,
                            std::move(own));
}

struct SubgradientOptions {
  std::size_t max_iters = 120000;
  std::size_t cycles = 3;          // restarts from the incumbent with smaller steps
  double improvement_tol = 1e-6;   // convergence test over one sweep window
  std::size_t window = 4000;
  int init_mode = 0;  // 0: own coordinates (integer shells), 1: origin, 2: anchor centroid
};

struct ObstructionResult {
  double lambda_min = 0.0;
  std::vector<std::size_t> free_ids;
  std::vector<Vec> placement;  // aligned with free_ids
  double certificate_gap = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
  std::pair<std::size_t, std::size_t> witness{0, 0};  // active pair at the end
};

namespace detail {

struct PairTerm {
  std::size_t i, j;       // point indices
  std::ptrdiff_t fi, fj;  // free slot or -1 for anchored
  double inv_d;
};

struct RetractionObjective {
  const RetractionInstance& inst;
  std::vector<std::size_t> free_ids;
  std::vector<std::ptrdiff_t> free_slot;  // point -> slot or -1
  std::vector<PairTerm> terms;            // pairs touching a free point
  double anchor_lambda = 0.0;             // constant part of the max
  std::pair<std::size_t, std::size_t> anchor_witness{0, 0};

  explicit RetractionObjective(const RetractionInstance& instance) : inst(instance) {
    const auto& X = *inst.space;
    free_ids = inst.free_points();
    free_slot.assign(X.size(), -1);
    for (std::size_t s = 0; s < free_ids.size(); ++s)
      free_slot[free_ids[s]] = static_cast<std::ptrdiff_t>(s);
    for (std::size_t i = 0; i < X.size(); ++i)
      for (std::size_t j = i + 1; j < X.size(); ++j) {
        const double d = X.dist(i, j);
        if (d <= 0) continue;
        if (inst.anchor_coords[i] && inst.anchor_coords[j]) {
          const double v = std::max(
              0.0, (euclidean(*inst.anchor_coords[i], *inst.anchor_coords[j]) -
                    inst.epsilon)) / d;
          if (v > anchor_lambda) {
            anchor_lambda = v;
            anchor_witness = {i, j};
          }
        } else {
          terms.push_back({i, j, free_slot[i], free_slot[j], 1.0 / d});
        }
      }
  }

  const Vec& position(const std::vector<Vec>& z, std::size_t point) const {
    const auto slot = free_slot[point];
    return slot >= 0 ? z[static_cast<std::size_t>(slot)] : *inst.anchor_coords[point];
  }

  // full certificate sweep; also returns the active pair and its gap vector
  double evaluate(const std::vector<Vec>& z, std::pair<std::size_t, std::size_t>& witness,
                  const PairTerm** active) const {
    double best = anchor_lambda;
    witness = anchor_witness;
    *active = nullptr;
    for (const auto& t : terms) {
      const double gap = euclidean(position(z, t.i), position(z, t.j));
      const double v = std::max(0.0, gap - inst.epsilon) * t.inv_d;
      if (v > best) {
        best = v;
        witness = {t.i, t.j};
        *active = &t;
      }
    }
    return best;
  }
};

}  // namespace detail

/// Objective value of an explicit placement (used by tests and reports).
inline double retraction_objective(const RetractionInstance& inst,
                                   const std::vector<Vec>& placement) {
  detail::RetractionObjective obj(inst);
  if (placement.size() != obj.free_ids.size())
    throw argument_error("retraction_objective: placement size mismatch");
  std::pair<std::size_t, std::size_t> w;
  const detail::PairTerm* active = nullptr;
  return obj.evaluate(placement, w, &active);
}

/// Global minimization of the retraction objective over free placements.
/// Deterministic for a fixed instance and init_mode. The reported value is
/// always an upper bound on the true minimum (it is the objective at the
/// best placement seen, certified by a full sweep).
inline ObstructionResult retraction_lower_bound(const RetractionInstance& inst,
                                                const SubgradientOptions& opt = {}) {
  if (!verify_metric(*inst.space).pass)
    throw validation_error("retraction_lower_bound: instance is not a metric space");

  detail::RetractionObjective obj(inst);
  ObstructionResult out;
  out.free_ids = obj.free_ids;

  if (obj.free_ids.empty()) {
    out.lambda_min = obj.anchor_lambda;
    out.witness = obj.anchor_witness;
    out.converged = true;
    return out;
  }

  // anchor geometry sets the step scale
  Vec centroid(inst.dim, 0.0);
  std::size_t anchor_count = 0;
  for (const auto& a : inst.anchor_coords)
    if (a) {
      centroid = add(centroid, *a);
      ++anchor_count;
    }
  centroid = scale(centroid, 1.0 / static_cast<double>(anchor_count));
  double radius = 1.0;
  for (const auto& a : inst.anchor_coords)
    if (a) radius = std::max(radius, euclidean(*a, centroid));

  std::vector<Vec> z(obj.free_ids.size());
  for (std::size_t s = 0; s < z.size(); ++s) {
    switch (opt.init_mode) {
      case 1:
        z[s] = Vec(inst.dim, 0.0);
        break;
      case 2:
        z[s] = centroid;
        break;
      default:
        // own coordinates when the construction knows them, centroid otherwise
        z[s] = inst.own_coords[obj.free_ids[s]].value_or(centroid);
        break;
    }
  }

  std::pair<std::size_t, std::size_t> witness;
  const detail::PairTerm* active = nullptr;
  double best = obj.evaluate(z, witness, &active);
  std::vector<Vec> best_z = z;
  out.witness = witness;

  const std::size_t per_cycle = std::max<std::size_t>(1, opt.max_iters / std::max<std::size_t>(1, opt.cycles));
  double window_best = best;
  bool converged = false;
  std::size_t iters_done = 0;

  for (std::size_t cycle = 0; cycle < opt.cycles; ++cycle) {
    z = best_z;
    const double step_start = radius * std::pow(0.25, static_cast<double>(cycle)) * 0.5;
    const double step_end = 1e-10 * radius;
    const double decay =
        std::pow(step_end / step_start, 1.0 / static_cast<double>(per_cycle));
    double step = step_start;
    for (std::size_t it = 0; it < per_cycle; ++it, ++iters_done) {
      const double val = obj.evaluate(z, witness, &active);
      if (val < best) {
        best = val;
        best_z = z;
        out.witness = witness;
      }
      if (iters_done % opt.window == opt.window - 1) {
        if (window_best - best < opt.improvement_tol) converged = true;
        window_best = best;
      }
      if (active == nullptr) {
        // the anchor-pair constant is the active term; nothing any placement
        // does can go below it, so this value is exactly optimal
        converged = true;
        window_best = best;
        break;
      }

      // subgradient of the active term
      const Vec& pi = obj.position(z, active->i);
      const Vec& pj = obj.position(z, active->j);
      Vec g = sub(pi, pj);
      const double gn = norm(g);
      if (gn < 1e-15) {
        step *= decay;
        continue;
      }
      const double coef = step / gn;
      if (active->fi >= 0)
        z[static_cast<std::size_t>(active->fi)] =
            sub(z[static_cast<std::size_t>(active->fi)], scale(g, coef));
      if (active->fj >= 0)
        z[static_cast<std::size_t>(active->fj)] =
            add(z[static_cast<std::size_t>(active->fj)], scale(g, coef));
      step *= decay;
    }
  }

  out.lambda_min = best;
  out.placement = std::move(best_z);
  out.iterations = iters_done;
  out.converged = converged;
  out.certificate_gap = std::max(0.0, window_best - best);
  return out;
}

/// The composed map: push the hull along the ambient projection, take the
/// barycenter image, then the nearest point to the origin. Returns the
/// resulting point table and its measured Lipschitz behaviour against the
/// assembly metric.
struct ComposedRetraction {
  std::vector<Vec> image;
  LipschitzReport report;
};

inline ComposedRetraction composed_retraction(const std::vector<ConvexMeasureSet>& F,
                                              std::size_t n,
                                              const SpaceAssembly& assembly,
                                              double epsilon = 0.0) {
  if (F.size() != assembly.space.size())
    throw argument_error("composed_retraction: F must cover every point");
  if (n == 0) throw argument_error("composed_retraction: n must be >= 1");

  // p_n of every point's ambient coordinates
  std::vector<Vec> projected(assembly.tags.size());
  for (std::size_t i = 0; i < assembly.tags.size(); ++i) {
    const Vec& c = assembly.tags[i].coords;
    Vec p(n, 0.0);
    for (std::size_t k = 0; k < n && k < c.size(); ++k) p[k] = c[k];
    projected[i] = std::move(p);
  }

  ComposedRetraction out;
  out.image.resize(F.size());
  for (std::size_t w = 0; w < F.size(); ++w) {
    const Polytope b_image = barycenter_image(F[w], projected);
    out.image[w] = min_norm_point(b_image);
  }
  out.report = lipschitz_constant(assembly.space, out.image, epsilon);
  return out;
}

/// The canonical candidate extension: x maps to the singleton {delta_x}.
inline std::vector<ConvexMeasureSet> dirac_extension(const SpaceAssembly& assembly) {
  auto ref = make_space(assembly.space);
  std::vector<ConvexMeasureSet> F;
  F.reserve(assembly.space.size());
  for (std::size_t i = 0; i < assembly.space.size(); ++i)
    F.push_back(ConvexMeasureSet::dirac(ref, i));
  return F;
}

}  // namespace metriclab
