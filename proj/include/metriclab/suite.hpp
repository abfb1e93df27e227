#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "metriclab/json_io.hpp"
#include "metriclab/obstruction.hpp"

namespace metriclab {

// Batch verification driver. Every cell is a pure computation seeded from
// (config.seed, fixed cell index), run sequentially and merged in sorted
// order, so a report is a deterministic function of its config.

enum class SuiteKind { metrics, transport, hyperspace, euclid, chains, obstruction, all };

inline const char* to_string(SuiteKind k) {
  switch (k) {
    case SuiteKind::metrics: return "metrics";
    case SuiteKind::transport: return "transport";
    case SuiteKind::hyperspace: return "hyperspace";
    case SuiteKind::euclid: return "euclid";
    case SuiteKind::chains: return "chains";
    case SuiteKind::obstruction: return "obstruction";
    case SuiteKind::all: return "all";
  }
  return "?";
}

inline SuiteKind suite_from_string(const std::string& s) {
  for (SuiteKind k : {SuiteKind::metrics, SuiteKind::transport, SuiteKind::hyperspace,
                      SuiteKind::euclid, SuiteKind::chains, SuiteKind::obstruction,
                      SuiteKind::all})
    if (s == to_string(k)) return k;
  throw usage_error("unknown suite '" + s + "'");
}

struct ExperimentConfig {
  SuiteKind suite = SuiteKind::all;
  int n_lo = 2, n_hi = 3;
  int k_lo = 1, k_hi = 4;
  int c_lo = 1, c_hi = 50;
  std::vector<double> eps_grid{0.0};
  std::uint64_t seed = 7;
  std::size_t trials = 40;
  double tol_metric = tol::metric;
  double tol_duality = tol::duality;
  std::string out_path;

  void validate() const {
    if (n_lo < 2 || n_hi < n_lo) throw usage_error("invalid field: n");
    if (k_lo < 1 || k_hi < k_lo) throw usage_error("invalid field: k");
    if (c_lo < 1 || c_hi < c_lo) throw usage_error("invalid field: C");
    if (eps_grid.empty()) throw usage_error("invalid field: eps");
    for (double e : eps_grid)
      if (e < 0) throw usage_error("invalid field: eps");
    if (trials < 1) throw usage_error("invalid field: trials");
    if (!(tol_metric > 0) || !(tol_duality > 0)) throw usage_error("invalid field: tol");
  }
};

inline ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  if (j.contains("suite")) c.suite = suite_from_string(j.at("suite").get<std::string>());
  if (j.contains("n_range")) {
    c.n_lo = j.at("n_range").at(0).get<int>();
    c.n_hi = j.at("n_range").at(1).get<int>();
  }
  if (j.contains("k_range")) {
    c.k_lo = j.at("k_range").at(0).get<int>();
    c.k_hi = j.at("k_range").at(1).get<int>();
  }
  if (j.contains("c_range")) {
    c.c_lo = j.at("c_range").at(0).get<int>();
    c.c_hi = j.at("c_range").at(1).get<int>();
  }
  if (j.contains("eps_grid")) c.eps_grid = j.at("eps_grid").get<std::vector<double>>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (t.contains("metric")) c.tol_metric = t.at("metric").get<double>();
    if (t.contains("duality")) c.tol_duality = t.at("duality").get<double>();
  }
  if (j.contains("out")) c.out_path = j.at("out").get<std::string>();
  return c;
}

inline json to_json(const ExperimentConfig& c) {
  return json{{"suite", to_string(c.suite)},
              {"n_range", json::array({c.n_lo, c.n_hi})},
              {"k_range", json::array({c.k_lo, c.k_hi})},
              {"c_range", json::array({c.c_lo, c.c_hi})},
              {"eps_grid", c.eps_grid},
              {"seed", c.seed},
              {"trials", c.trials},
              {"tolerances", json{{"metric", c.tol_metric}, {"duality", c.tol_duality}}}};
}

struct CheckRecord {
  std::string suite;
  std::string name;
  std::string digest;  // FNV of the cell's inputs
  double value = 0.0;
  double bound = 0.0;
  std::string status;   // pass | fail | measured
  std::string witness;  // short payload, mandatory for failures
  double tolerance = 0.0;
};

struct SuiteReport {
  ExperimentConfig config;
  std::vector<CheckRecord> records;
  std::map<std::string, std::string> environment;
  double total_runtime_ms = 0.0;  // stderr/log only, never in canonical bytes

  bool any_fail() const {
    for (const auto& r : records)
      if (r.status == "fail") return true;
    return false;
  }
};

/// Canonical serialization: sorted records, sorted keys, no volatile fields
/// (runtime is deliberately absent so that equal seeds give equal bytes).
inline json to_json(const SuiteReport& r) {
  json recs = json::array();
  for (const auto& c : r.records)
    recs.push_back(json{{"suite", c.suite},
                        {"name", c.name},
                        {"digest", c.digest},
                        {"value", c.value},
                        {"bound", c.bound},
                        {"status", c.status},
                        {"witness", c.witness},
                        {"tolerance", c.tolerance}});
  return json{{"config", to_json(r.config)},
              {"environment", r.environment},
              {"records", std::move(recs)}};
}

inline std::string report_csv(const SuiteReport& r) {
  std::string out = "suite,name,digest,value,bound,status,tolerance,witness\n";
  char buf[64];
  for (const auto& c : r.records) {
    out += c.suite + "," + c.name + "," + c.digest + ",";
    std::snprintf(buf, sizeof(buf), "%.17g", c.value);
    out += std::string(buf) + ",";
    std::snprintf(buf, sizeof(buf), "%.17g", c.bound);
    out += std::string(buf) + "," + c.status + ",";
    std::snprintf(buf, sizeof(buf), "%.17g", c.tolerance);
    std::string w = c.witness;
    std::replace(w.begin(), w.end(), ',', ';');
    out += std::string(buf) + "," + w + "\n";
  }
  return out;
}

namespace detail {

struct CellSink {
  std::vector<CheckRecord>& records;
  std::string suite;

  void add(const std::string& name, const json& inputs, double value, double bound,
           bool pass, double tolerance, const std::string& witness = "") {
    records.push_back({suite, name, hex64(fnv1a(name + inputs.dump())), value, bound,
                       pass ? "pass" : "fail", witness, tolerance});
  }
  void measured(const std::string& name, const json& inputs, double value,
                const std::string& witness = "") {
    records.push_back({suite, name, hex64(fnv1a(name + inputs.dump())), value, 0.0,
                       "measured", witness, 0.0});
  }
  void error_cell(const std::string& name, const json& inputs, const std::string& what) {
    records.push_back({suite, name, hex64(fnv1a(name + inputs.dump())), 0.0, 0.0,
                       "fail", what, 0.0});
  }
};

inline FiniteMetricSpace seeded_euclid_space(Rng& rng, std::size_t n_pts,
                                             std::size_t dim) {
  std::vector<Vec> pts;
  while (pts.size() < n_pts) {
    Vec p(dim);
    for (auto& x : p) x = rng.uniform(-4.0, 4.0);
    bool dup = false;
    for (const auto& q : pts)
      if (euclidean(p, q) < 1e-3) dup = true;
    if (!dup) pts.push_back(std::move(p));
  }
  std::vector<std::string> labels(n_pts);
  std::vector<std::vector<double>> d(n_pts, Vec(n_pts, 0.0));
  for (std::size_t i = 0; i < n_pts; ++i) {
    labels[i] = "p" + std::to_string(i);
    for (std::size_t j = 0; j < n_pts; ++j) d[i][j] = euclidean(pts[i], pts[j]);
  }
  return FiniteMetricSpace(labels, d);
}

inline Vec seeded_weights(Rng& rng, std::size_t n) {
  Vec w(n, 0.0);
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.next_unit());
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

inline void run_metrics_suite(const ExperimentConfig& cfg, CellSink sink) {
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n)
    for (int k = cfg.k_lo; k <= cfg.k_hi; ++k) {
      const json inputs{{"n", n}, {"k", k}};
      try {
        auto rep = verify_metric(gnk_metric(build_gnk(n, k)), cfg.tol_metric);
        sink.add("gnk_metric_axioms_n" + std::to_string(n) + "_k" + std::to_string(k),
                 inputs, static_cast<double>(rep.total_violations), 0.0, rep.pass,
                 cfg.tol_metric);
      } catch (const std::exception& e) {
        sink.error_cell("gnk_metric_axioms", inputs, e.what());
      }
    }

  {
    const json inputs{{"kind", "xprime_slice"}, {"level", 4}};
    auto slice = build_xprime_slice(4, {{0, 0}, {1, 0}, {0, 2}, {3, 3}, {-2, 1}});
    auto rep = verify_metric(slice.space, cfg.tol_metric);
    sink.add("xprime_slice_axioms", inputs, static_cast<double>(rep.total_violations),
             0.0, rep.pass, cfg.tol_metric);
  }
  {
    const json inputs{{"kind", "x_trunc"}, {"n", json::array({cfg.n_lo, cfg.n_hi})},
                      {"k_hi", cfg.k_hi}};
    auto x = build_x_trunc(cfg.n_lo, cfg.n_hi, std::max(cfg.n_hi, cfg.k_hi));
    auto rep = verify_metric(x.space, cfg.tol_metric);
    sink.add("x_trunc_axioms", inputs, static_cast<double>(rep.total_violations), 0.0,
             rep.pass, cfg.tol_metric);
  }
  {
    // the level-(n_lo^2) truncation keeps this cell comfortably small
    const json inputs{{"kind", "y_trunc"}, {"n", cfg.n_lo}, {"k_hi", cfg.k_hi}};
    auto y = build_y_trunc(cfg.n_lo, cfg.n_lo, std::max(cfg.n_lo, cfg.k_hi));
    auto rep = verify_metric(y.space, cfg.tol_metric);
    sink.add("y_trunc_axioms", inputs, static_cast<double>(rep.total_violations), 0.0,
             rep.pass, cfg.tol_metric);
    sink.measured("y_trunc_disagreements", inputs,
                  static_cast<double>(y.disagreement_count));
  }
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    std::vector<int> ks;
    for (int k = cfg.k_lo; k <= cfg.k_hi; ++k) ks.push_back(k);
    const json inputs{{"kind", "x_n"}, {"n", n}, {"ks", ks}};
    try {
      auto a = build_x_n(n, ks, default_xn_sample(n, ks));
      auto rep = verify_metric(a.space, cfg.tol_metric);
      sink.add("x_n_axioms_n" + std::to_string(n), inputs,
               static_cast<double>(rep.total_violations), 0.0, rep.pass, cfg.tol_metric);
    } catch (const std::exception& e) {
      sink.error_cell("x_n_axioms_n" + std::to_string(n), inputs, e.what());
    }
  }
}

inline void run_transport_suite(const ExperimentConfig& cfg, CellSink sink) {
  Rng seed_rng = Rng::stream(cfg.seed, 1001);
  auto space = make_space(seeded_euclid_space(seed_rng, 5, 2));
  const json space_inputs{{"space", space_digest(*space)}};

  double worst_gap = 0.0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng r = Rng::stream(cfg.seed, 2000 + t);
    DiscreteMeasure mu(space, seeded_weights(r, 5));
    DiscreteMeasure nu(space, seeded_weights(r, 5));
    worst_gap = std::max(worst_gap, kantorovich(mu, nu).duality_gap);
  }
  sink.add("duality_gap_max", space_inputs, worst_gap, cfg.tol_duality,
           worst_gap <= cfg.tol_duality, cfg.tol_duality);

  double worst_dirac = 0.0;
  for (std::size_t i = 0; i < space->size(); ++i)
    for (std::size_t j = 0; j < space->size(); ++j)
      worst_dirac = std::max(
          worst_dirac, std::fabs(kantorovich(DiscreteMeasure::dirac(space, i),
                                             DiscreteMeasure::dirac(space, j))
                                     .value -
                                 space->dist(i, j)));
  sink.add("dirac_isometry_max_error", space_inputs, worst_dirac, cfg.tol_metric,
           worst_dirac <= cfg.tol_metric, cfg.tol_metric);

  double worst_triangle = 0.0, worst_symmetry = 0.0;
  for (std::size_t t = 0; t < cfg.trials / 4 + 1; ++t) {
    Rng r = Rng::stream(cfg.seed, 3000 + t);
    DiscreteMeasure a(space, seeded_weights(r, 5));
    DiscreteMeasure b(space, seeded_weights(r, 5));
    DiscreteMeasure c(space, seeded_weights(r, 5));
    const double ab = kantorovich(a, b).value;
    const double ba = kantorovich(b, a).value;
    const double ac = kantorovich(a, c).value;
    const double cb = kantorovich(c, b).value;
    worst_symmetry = std::max(worst_symmetry, std::fabs(ab - ba));
    worst_triangle = std::max(worst_triangle, ab - ac - cb);
  }
  sink.add("measure_metric_symmetry", space_inputs, worst_symmetry, cfg.tol_duality,
           worst_symmetry <= cfg.tol_duality, cfg.tol_duality);
  sink.add("measure_metric_triangle", space_inputs, worst_triangle, cfg.tol_duality,
           worst_triangle <= cfg.tol_duality, cfg.tol_duality);
}

inline void run_hyperspace_suite(const ExperimentConfig& cfg, CellSink sink) {
  Rng seed_rng = Rng::stream(cfg.seed, 4001);
  auto space = make_space(seeded_euclid_space(seed_rng, 5, 2));
  const json inputs{{"space", space_digest(*space)}};

  double worst_dirac = 0.0;
  for (std::size_t i = 0; i < space->size(); ++i)
    for (std::size_t j = 0; j < space->size(); ++j)
      worst_dirac = std::max(
          worst_dirac,
          std::fabs(hausdorff_ccp(ConvexMeasureSet::dirac(space, i),
                                  ConvexMeasureSet::dirac(space, j)) -
                    space->dist(i, j)));
  sink.add("dirac_hyperspace_isometry", inputs, worst_dirac, cfg.tol_metric,
           worst_dirac <= cfg.tol_metric, cfg.tol_metric);

  auto random_cms = [&](Rng& r) {
    std::vector<Vec> gens;
    const std::size_t count = 1 + r.below(3);
    for (std::size_t g = 0; g < count; ++g) gens.push_back(seeded_weights(r, 5));
    return ConvexMeasureSet(space, std::move(gens));
  };

  double worst_triangle = 0.0, worst_symmetry = 0.0;
  for (std::size_t t = 0; t < cfg.trials / 4 + 1; ++t) {
    Rng r = Rng::stream(cfg.seed, 5000 + t);
    auto A = random_cms(r), B = random_cms(r), C = random_cms(r);
    const double ab = hausdorff_ccp(A, B);
    worst_symmetry = std::max(worst_symmetry, std::fabs(ab - hausdorff_ccp(B, A)));
    worst_triangle =
        std::max(worst_triangle, ab - hausdorff_ccp(A, C) - hausdorff_ccp(C, B));
  }
  sink.add("hyperspace_symmetry", inputs, worst_symmetry, cfg.tol_duality,
           worst_symmetry <= cfg.tol_duality, cfg.tol_duality);
  sink.add("hyperspace_triangle", inputs, worst_triangle, cfg.tol_duality,
           worst_triangle <= cfg.tol_duality, cfg.tol_duality);

  // shortness transfer through a collapse onto a 1-Lipschitz chain
  double worst_transfer = 0.0;
  {
    auto line = make_space(FiniteMetricSpace(
        {"u0", "u1", "u2"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
    PointMap constant(space, line, std::vector<std::size_t>(space->size(), 1));
    for (std::size_t t = 0; t < cfg.trials / 4 + 1; ++t) {
      Rng r = Rng::stream(cfg.seed, 6000 + t);
      auto A = random_cms(r), B = random_cms(r);
      const double before = hausdorff_ccp(A, B);
      const double after = hausdorff_ccp(ccp_pushforward(constant, A),
                                         ccp_pushforward(constant, B));
      worst_transfer = std::max(worst_transfer, after - before);
    }
  }
  sink.add("pushforward_contraction", inputs, worst_transfer, cfg.tol_duality,
           worst_transfer <= cfg.tol_duality, cfg.tol_duality);
}

inline void run_euclid_suite(const ExperimentConfig& cfg, CellSink sink) {
  // nearest-point certificates
  double worst_vi = 0.0;
  for (std::size_t t = 0; t < cfg.trials * 2; ++t) {
    Rng r = Rng::stream(cfg.seed, 7000 + t);
    const std::size_t dim = 1 + r.below(6);
    const std::size_t count = 1 + r.below(12);
    std::vector<Vec> verts;
    for (std::size_t i = 0; i < count; ++i) {
      Vec p(dim);
      for (auto& c : p) c = r.uniform(-2, 2);
      verts.push_back(std::move(p));
    }
    Polytope A(dim, std::move(verts));
    const Vec y = min_norm_point(A);
    for (const auto& v : A.vertices) {
      double ip = 0.0;
      for (std::size_t c = 0; c < y.size(); ++c) ip += y[c] * (v[c] - y[c]);
      worst_vi = std::min(worst_vi, ip);
    }
  }
  sink.add("min_norm_variational_certificate", json{{"trials", cfg.trials * 2}},
           worst_vi, -tol::nearest, worst_vi >= -tol::nearest, tol::nearest);

  // barycenter contraction
  double worst_bary = 0.0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng r = Rng::stream(cfg.seed, 8100 + t);
    const std::size_t pts = 3 + r.below(4), dim = 1 + r.below(3);
    std::vector<Vec> coords;
    for (std::size_t i = 0; i < pts; ++i) {
      Vec p(dim);
      for (auto& c : p) c = r.uniform(-3, 3);
      coords.push_back(std::move(p));
    }
    std::vector<std::string> labels(pts);
    std::vector<std::vector<double>> d(pts, Vec(pts));
    for (std::size_t i = 0; i < pts; ++i) {
      labels[i] = "e" + std::to_string(i);
      for (std::size_t j = 0; j < pts; ++j) d[i][j] = euclidean(coords[i], coords[j]);
    }
    auto sp = make_space(FiniteMetricSpace(labels, d));
    Vec wa = seeded_weights(r, pts), wb = seeded_weights(r, pts);
    const double w1 = kantorovich(DiscreteMeasure(sp, wa), DiscreteMeasure(sp, wb)).value;
    const double gap = euclidean(barycenter(EmbeddedMeasure(coords, wa)),
                                 barycenter(EmbeddedMeasure(coords, wb)));
    worst_bary = std::max(worst_bary, gap - w1);
  }
  sink.add("barycenter_contraction", json{{"trials", cfg.trials}}, worst_bary,
           cfg.tol_duality, worst_bary <= cfg.tol_duality, cfg.tol_duality);

  // the nearest-point map probe: evidence records, not assertions
  auto probe = pi_lemma_probe(cfg.trials, cfg.seed);
  sink.measured("pi_probe_fixed_ratio", json{{"seed", cfg.seed}}, probe.fixed_ratio,
                probe.shortness_violated ? "shortness empirically violated" : "");
  sink.measured("pi_probe_max_ratio", json{{"seed", cfg.seed}}, probe.max_ratio);
}

inline void run_chains_suite(const ExperimentConfig& cfg, CellSink sink) {
  const json inputs{{"n", json::array({cfg.n_lo, cfg.n_hi})},
                    {"k_hi", cfg.k_hi},
                    {"C", json::array({cfg.c_lo, cfg.c_hi})}};
  auto y = build_y_trunc(cfg.n_lo, cfg.n_hi, std::max(cfg.n_hi, cfg.k_hi));
  const double root10 = std::sqrt(10.0);
  std::size_t prev_components = y.space.size() + 1;
  double prev_diam = 0.0;
  bool monotone = true;
  double sup_ratio = 0.0;
  for (int C = cfg.c_lo; C <= cfg.c_hi; ++C) {
    auto rep = chain_components(y.space, static_cast<double>(C));
    const double bound = root10 * C;
    sup_ratio = std::max(sup_ratio, rep.max_diameter / C);
    std::string witness;
    if (rep.max_diameter > bound + cfg.tol_metric)
      witness = "component diameter " + std::to_string(rep.max_diameter) +
                " exceeds sqrt(10)*C";
    char cbuf[8];
    std::snprintf(cbuf, sizeof(cbuf), "%03d", C);
    sink.add(std::string("chain_diameter_C") + cbuf, inputs, rep.max_diameter, bound,
             rep.max_diameter <= bound + cfg.tol_metric, cfg.tol_metric, witness);
    if (rep.components.size() > prev_components || rep.max_diameter < prev_diam - 1e-9)
      monotone = false;
    prev_components = rep.components.size();
    prev_diam = rep.max_diameter;
  }
  sink.add("chain_monotone_in_C", inputs, monotone ? 1.0 : 0.0, 1.0, monotone, 0.0);
  sink.measured("chain_sup_diameter_over_C", inputs, sup_ratio,
                "sqrt(10) = 3.16228 is the asserted constant");
}

inline void run_obstruction_suite(const ExperimentConfig& cfg, CellSink sink) {
  // pinned bridge instance
  {
    auto s = make_space(FiniteMetricSpace(
        {"s1", "s2", "v"}, {{0, 2, 1}, {2, 0, 1}, {1, 1, 0}}));
    std::vector<std::optional<Vec>> anchors(3);
    anchors[0] = Vec{0.0, 0.0};
    anchors[1] = Vec{4.0, 0.0};
    RetractionInstance inst(s, anchors, 2, 0.0);
    auto res = retraction_lower_bound(inst);
    sink.add("bridge_lambda", json{{"instance", "bridge"}}, res.lambda_min, 2.0,
             std::fabs(res.lambda_min - 2.0) <= 1e-3, 1e-3);
    const double place_err = res.placement.empty()
                                 ? 1.0
                                 : euclidean(res.placement[0], {2.0, 0.0});
    sink.add("bridge_placement", json{{"instance", "bridge"}}, place_err, 0.0,
             place_err <= 1e-3, 1e-3);

    double spread_lo = kInf, spread_hi = -kInf;
    for (int mode : {0, 1, 2}) {
      SubgradientOptions opt;
      opt.init_mode = mode;
      const double v = retraction_lower_bound(inst, opt).lambda_min;
      spread_lo = std::min(spread_lo, v);
      spread_hi = std::max(spread_hi, v);
    }
    sink.add("bridge_multistart_spread", json{{"instance", "bridge"}},
             spread_hi - spread_lo, 2e-3, spread_hi - spread_lo <= 2e-3, 2e-3);
  }

  // the (n, k) trend table with nested anchor sets
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n)
    for (int k = cfg.k_lo; k <= cfg.k_hi; ++k)
      for (double eps : cfg.eps_grid) {
        const json inputs{{"n", n}, {"k", k}, {"eps", eps}};
        try {
          auto small = build_x_n(n, {k}, default_xn_sample(n, {k}, false));
          auto large = build_x_n(n, {k}, default_xn_sample(n, {k}, true));
          auto rs = retraction_lower_bound(make_retraction_instance(small, eps));
          auto rl = retraction_lower_bound(make_retraction_instance(large, eps));
          const std::string tag = "_n" + std::to_string(n) + "_k" + std::to_string(k);
          sink.measured("lambda_min" + tag, inputs, rl.lambda_min,
                        rl.converged ? "" : "unconverged");
          sink.add("anchor_monotone" + tag, inputs, rl.lambda_min - rs.lambda_min,
                   0.0, rs.lambda_min <= rl.lambda_min + 1e-3, 1e-3);
        } catch (const std::exception& e) {
          sink.error_cell("lambda_min", inputs, e.what());
        }
      }
}

}  // namespace detail

inline SuiteReport run_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  SuiteReport report;
  report.config = cfg;
  report.environment = {
      {"artifact", "metriclab 0.1.0"},
      {"float", "ieee754-binary64"},
      {"pointer_bits", std::to_string(8 * sizeof(void*))},
  };

  auto want = [&](SuiteKind k) {
    return cfg.suite == SuiteKind::all || cfg.suite == k;
  };
  using detail::CellSink;
  if (want(SuiteKind::metrics))
    detail::run_metrics_suite(cfg, CellSink{report.records, "metrics"});
  if (want(SuiteKind::transport))
    detail::run_transport_suite(cfg, CellSink{report.records, "transport"});
  if (want(SuiteKind::hyperspace))
    detail::run_hyperspace_suite(cfg, CellSink{report.records, "hyperspace"});
  if (want(SuiteKind::euclid))
    detail::run_euclid_suite(cfg, CellSink{report.records, "euclid"});
  if (want(SuiteKind::chains))
    detail::run_chains_suite(cfg, CellSink{report.records, "chains"});
  if (want(SuiteKind::obstruction))
    detail::run_obstruction_suite(cfg, CellSink{report.records, "obstruction"});

  std::sort(report.records.begin(), report.records.end(),
            [](const CheckRecord& a, const CheckRecord& b) {
              if (a.suite != b.suite) return a.suite < b.suite;
              if (a.name != b.name) return a.name < b.name;
              return a.digest < b.digest;
            });

  const auto t1 = std::chrono::steady_clock::now();
  report.total_runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return report;
}

}  // namespace metriclab
