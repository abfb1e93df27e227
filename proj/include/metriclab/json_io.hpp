#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "metriclab/assembly.hpp"
#include "metriclab/common.hpp"
#include "metriclab/euclid.hpp"
#include "metriclab/gnk.hpp"
#include "metriclab/hyperspace.hpp"
#include "metriclab/metric_space.hpp"
#include "metriclab/obstruction.hpp"
#include "metriclab/transport.hpp"

// JSON wire formats. nlohmann::json objects keep keys sorted, which is what
// makes every report byte-stable for a fixed seed.

namespace metriclab {

using json = nlohmann::json;

inline json to_json(const FiniteMetricSpace& s) {
  json dist = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < s.size(); ++j) row.push_back(s.dist(i, j));
    dist.push_back(std::move(row));
  }
  return json{{"labels", s.labels()}, {"dist", std::move(dist)}};
}

inline FiniteMetricSpace space_from_json(const json& j) {
  std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
  std::vector<std::vector<double>> dist =
      j.at("dist").get<std::vector<std::vector<double>>>();
  return FiniteMetricSpace(std::move(labels), dist);
}

/// Stable identifier for a space, used by measure files to reference it.
inline std::string space_digest(const FiniteMetricSpace& s) {
  return hex64(fnv1a(to_json(s).dump()));
}

inline json to_json(const DiscreteMeasure& m) {
  return json{{"space", space_digest(*m.space())}, {"weights", m.weights()}};
}

inline DiscreteMeasure measure_from_json(const json& j, const SpaceRef& space) {
  if (j.contains("space") && j.at("space").get<std::string>() != space_digest(*space))
    throw validation_error("measure references a different space digest");
  return DiscreteMeasure(space, j.at("weights").get<Vec>());
}

inline json to_json(const ConvexMeasureSet& a) {
  json gens = json::array();
  for (const auto& g : a.generators()) gens.push_back(g);
  return json{{"space", space_digest(*a.space())}, {"generators", std::move(gens)}};
}

inline ConvexMeasureSet cms_from_json(const json& j, const SpaceRef& space) {
  if (j.contains("space") && j.at("space").get<std::string>() != space_digest(*space))
    throw validation_error("generator set references a different space digest");
  return ConvexMeasureSet(space, j.at("generators").get<std::vector<Vec>>());
}

inline json to_json(const Polytope& p) {
  json verts = json::array();
  for (const auto& v : p.vertices) verts.push_back(v);
  return json{{"dim", p.dim}, {"vertices", std::move(verts)}};
}

inline Polytope polytope_from_json(const json& j) {
  return Polytope(j.at("dim").get<std::size_t>(),
                  j.at("vertices").get<std::vector<Vec>>());
}

inline json to_json(const MetricReport& r) {
  json viols = json::array();
  for (const auto& v : r.violations) {
    const char* kind = v.kind == MetricViolation::Kind::triangle   ? "triangle"
                       : v.kind == MetricViolation::Kind::diagonal ? "diagonal"
                                                                   : "positivity";
    viols.push_back(json{{"kind", kind},
                         {"points", json::array({v.a, v.b, v.c})},
                         {"amount", v.amount}});
  }
  return json{{"pass", r.pass},
              {"tolerance", r.tolerance},
              {"total_violations", r.total_violations},
              {"violations", std::move(viols)}};
}

inline json to_json(const LipschitzReport& r) {
  return json{{"epsilon", r.epsilon},
              {"lambda_star", r.lambda_star},
              {"witness", json::array({r.witness.first, r.witness.second})}};
}

inline json to_json(const ChainReport& r) {
  return json{{"C", r.C},
              {"components", r.components},
              {"component_count", r.components.size()},
              {"max_diameter", r.max_diameter}};
}

inline json to_json(const KantorovichResult& r) {
  return json{{"value", r.value},
              {"plan", json{{"coupling", r.plan.coupling}, {"cost", r.plan.cost}}},
              {"potential", json{{"phi", r.potential.phi}, {"value", r.potential.value}}},
              {"duality_gap", r.duality_gap},
              {"lp_pivots", r.lp_pivots}};
}

inline json to_json(const HullDistanceResult& r) {
  return json{{"distance", r.distance}, {"mixture", r.mixture}};
}

inline json to_json(const GnkGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back(json{{"a", e.a}, {"b", e.b}, {"weight", e.weight}});
  return json{{"n", g.n},
              {"k", g.k},
              {"inner", g.inner},
              {"outer", g.outer},
              {"edges", std::move(edges)}};
}

inline const char* to_string(AssemblyKind k) {
  switch (k) {
    case AssemblyKind::xprime_slice: return "xprime_slice";
    case AssemblyKind::x_trunc: return "x_trunc";
    case AssemblyKind::y_trunc: return "y_trunc";
    case AssemblyKind::x_n: return "x_n";
  }
  return "?";
}

inline const char* to_string(PointOrigin o) {
  switch (o) {
    case PointOrigin::euclid_sample: return "euclid_sample";
    case PointOrigin::graph_inner: return "graph_inner";
    case PointOrigin::graph_outer: return "graph_outer";
  }
  return "?";
}

inline json to_json(const SpaceAssembly& a, bool include_matrix = true) {
  json tags = json::array();
  for (const auto& t : a.tags)
    tags.push_back(json{{"origin", to_string(t.origin)},
                        {"level", t.level},
                        {"graph_n", t.graph_n},
                        {"graph_k", t.graph_k},
                        {"coords", t.coords}});
  json dis = json::array();
  for (const auto& d : a.disagreements)
    dis.push_back(json{{"i", d.i},
                       {"j", d.j},
                       {"part", d.part},
                       {"supplied", d.supplied},
                       {"glued", d.glued}});
  json out{{"kind", to_string(a.params.kind)},
           {"points", a.space.size()},
           {"tags", std::move(tags)},
           {"disagreement_count", a.disagreement_count},
           {"disagreements", std::move(dis)}};
  if (include_matrix) out["space"] = to_json(a.space);
  return out;
}

inline json to_json(const ProbeReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json e{{"a", to_json(s.a)},
           {"b", to_json(s.b)},
           {"skipped", s.skipped},
           {"fixed", s.fixed}};
    if (!s.skipped) {
      e["pi_a"] = s.pi_a;
      e["pi_b"] = s.pi_b;
      e["hausdorff"] = s.hausdorff;
      e["ratio"] = s.ratio;
    }
    samples.push_back(std::move(e));
  }
  return json{{"trials", r.trials},
              {"seed", r.seed},
              {"max_ratio", r.max_ratio},
              {"max_index", r.max_index},
              {"family_max_ratio", r.family_max_ratio},
              {"fixed_ratio", r.fixed_ratio},
              {"shortness_violated", r.shortness_violated},
              {"samples", std::move(samples)}};
}

inline json to_json(const ObstructionResult& r) {
  json placement = json::array();
  for (std::size_t i = 0; i < r.free_ids.size(); ++i)
    placement.push_back(json{{"point", r.free_ids[i]}, {"coords", r.placement[i]}});
  return json{{"lambda_min", r.lambda_min},
              {"placement", std::move(placement)},
              {"certificate_gap", r.certificate_gap},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"witness", json::array({r.witness.first, r.witness.second})}};
}

}  // namespace metriclab
