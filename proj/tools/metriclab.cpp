// Command-line front end: build the glued spaces, run the metric/transport
// machinery on files, and drive the verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "metriclab/json_io.hpp"
#include "metriclab/suite.hpp"

using namespace metriclab;

namespace {

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  const auto colon = text.find(':');
  std::string lo = text, hi = text;
  if (dots != std::string::npos) {
    lo = text.substr(0, dots);
    hi = text.substr(dots + 2);
  } else if (colon != std::string::npos) {
    lo = text.substr(0, colon);
    hi = text.substr(colon + 1);
  }
  try {
    return {std::stoi(lo), std::stoi(hi)};
  } catch (const std::exception&) {
    throw usage_error("bad range '" + text + "', expected a..b");
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_output(const json& j, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw usage_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

SpaceRef load_space_file(const std::string& path) {
  const json j = load_json(path);
  // accept either a bare space or an assembly file
  if (j.contains("space") && j.at("space").is_object())
    return make_space(space_from_json(j.at("space")));
  return make_space(space_from_json(j));
}

int cmd_gnk(int n, int k, const std::string& out) {
  auto g = build_gnk(n, k);
  auto metric = gnk_metric(g);
  auto rep = verify_metric(metric);
  json j{{"graph", to_json(g)},
         {"metric", to_json(metric)},
         {"axioms", to_json(rep)}};
  write_output(j, out);
  std::printf("G_{%d,%d}: %zu vertices, %zu edges, diameter %.6g, axioms %s\n", n, k,
              g.vertex_count(), g.edges.size(), metric.diameter(),
              rep.pass ? "pass" : "FAIL");
  return rep.pass ? 0 : 1;
}

int cmd_space(const std::string& kind, std::pair<int, int> n_range,
              std::pair<int, int> k_range, bool general, bool no_midpoints,
              int level, double spacing, double extent, bool no_matrix,
              const std::string& out) {
  std::optional<SpaceAssembly> a;
  if (kind == "xprime_slice") {
    const int dim_sq = level;
    int dim = 0;
    while ((dim + 1) * (dim + 1) <= dim_sq) ++dim;
    if (dim * dim != dim_sq) throw usage_error("level must be a perfect square");
    if (spacing <= 0) throw usage_error("invalid field: sample-spacing");
    std::vector<Vec> sample;
    // lattice over [-extent, extent]^2 in the first two slice coordinates
    for (double x = -extent; x <= extent + 1e-9; x += spacing)
      for (double y = -extent; y <= extent + 1e-9; y += spacing) {
        Vec p(static_cast<std::size_t>(dim), 0.0);
        p[0] = x;
        if (dim > 1) p[1] = y;
        sample.push_back(std::move(p));
        if (dim == 1) break;
      }
    a = build_xprime_slice(level, std::move(sample));
  } else if (kind == "x_trunc" || kind == "y_trunc") {
    AssemblyParams p;
    p.kind = kind == "x_trunc" ? AssemblyKind::x_trunc : AssemblyKind::y_trunc;
    if (general) {
      for (int n = n_range.first; n <= n_range.second; ++n)
        for (int k = k_range.first; k <= k_range.second; ++k) {
          p.graphs.push_back({n, k});
          p.levels.push_back(n * n);
        }
    } else {
      for (auto [n, k] :
           squared_pairs(n_range.first, n_range.second, k_range.second, k_range.first)) {
        p.graphs.push_back({n * n, k * k});
        p.levels.push_back(n * n);
      }
    }
    if (p.graphs.empty()) throw usage_error("invalid field: k");
    a = build_assembly(p);
  } else if (kind == "x_n") {
    std::vector<int> ks;
    for (int k = k_range.first; k <= k_range.second; ++k) ks.push_back(k);
    if (ks.empty()) throw usage_error("invalid field: k");
    const int n = n_range.first;
    a = build_x_n(n, ks, default_xn_sample(n, ks, !no_midpoints));
  } else {
    throw usage_error("unknown kind '" + kind + "'");
  }

  auto rep = verify_metric(a->space);
  json j = to_json(*a, !no_matrix);
  j["axioms"] = to_json(rep);
  write_output(j, out);
  std::printf("%s: %zu points, diameter %.6g, %zu glue disagreements, axioms %s\n",
              kind.c_str(), a->space.size(), a->space.diameter(),
              a->disagreement_count, rep.pass ? "pass" : "FAIL");
  return rep.pass ? 0 : 1;
}

int cmd_ot(const std::string& space_path, const std::string& mu_path,
           const std::string& nu_path, const std::string& out) {
  auto space = load_space_file(space_path);
  auto mu = measure_from_json(load_json(mu_path), space);
  auto nu = measure_from_json(load_json(nu_path), space);
  auto res = kantorovich(mu, nu);
  write_output(to_json(res), out);
  std::printf("kantorovich = %.12g (dual %.12g, gap %.3g, %zu pivots)\n", res.value,
              res.potential.value, res.duality_gap, res.lp_pivots);
  return res.duality_gap <= tol::duality ? 0 : 1;
}

int cmd_hyper(const std::string& space_path, const std::string& a_path,
              const std::string& b_path, const std::string& out) {
  auto space = load_space_file(space_path);
  auto A = cms_from_json(load_json(a_path), space);
  auto B = cms_from_json(load_json(b_path), space);
  const double ab = directed_hausdorff_ccp(A, B);
  const double ba = directed_hausdorff_ccp(B, A);
  json j{{"hausdorff", std::max(ab, ba)},
         {"directed_ab", ab},
         {"directed_ba", ba},
         {"a_canonical", to_json(canonicalize(A))},
         {"b_canonical", to_json(canonicalize(B))}};
  write_output(j, out);
  std::printf("hausdorff_ccp = %.12g (directed %.12g / %.12g)\n", std::max(ab, ba), ab,
              ba);
  return 0;
}

int cmd_pi_probe(std::size_t trials, std::uint64_t seed, const std::string& family,
                 std::size_t dim, const std::string& out) {
  ProbeFamily fam;
  if (family == "thin") fam.kind = ProbeFamily::Kind::thin_segment_pairs;
  else if (family == "singletons") fam.kind = ProbeFamily::Kind::singleton_translates;
  else if (family == "identical") fam.kind = ProbeFamily::Kind::identical_pairs;
  else throw usage_error("unknown family '" + family + "'");
  fam.dim = dim;
  auto rep = pi_lemma_probe(trials, seed, fam);
  write_output(to_json(rep), out);
  std::printf("pi probe: fixed ratio %.6g, family max %.6g, shortness %s\n",
              rep.fixed_ratio, rep.family_max_ratio,
              rep.shortness_violated ? "VIOLATED (evidence recorded)" : "not contradicted");
  return 0;  // evidence, not a failure
}

int cmd_asdim(std::pair<int, int> n_range, int k_max, std::pair<int, int> c_range,
              std::uint64_t seed, const std::string& out) {
  ExperimentConfig cfg;
  cfg.suite = SuiteKind::chains;
  cfg.n_lo = n_range.first;
  cfg.n_hi = n_range.second;
  cfg.k_hi = k_max;
  cfg.c_lo = c_range.first;
  cfg.c_hi = c_range.second;
  cfg.seed = seed;
  auto rep = run_suite(cfg);
  write_output(to_json(rep), out);
  std::size_t fails = 0;
  for (const auto& r : rep.records)
    if (r.status == "fail") ++fails;
  std::fprintf(stderr, "asdim scan finished in %.0f ms\n", rep.total_runtime_ms);
  std::printf("asdim: %zu records, %zu bound violations\n", rep.records.size(), fails);
  return fails == 0 ? 0 : 1;
}

int cmd_lip(const std::string& space_path, const std::string& map_path, double eps,
            const std::string& out) {
  auto source = load_space_file(space_path);
  const json mj = load_json(map_path);
  SpaceRef target = source;
  if (mj.contains("target")) target = make_space(space_from_json(mj.at("target")));
  PointMap f(source, target, mj.at("assignment").get<std::vector<std::size_t>>());
  auto rep = lipschitz_constant(f, eps);
  write_output(to_json(rep), out);
  std::printf("lambda*(%.6g) = %.12g at pair (%zu, %zu)\n", eps, rep.lambda_star,
              rep.witness.first, rep.witness.second);
  return 0;
}

int cmd_obstruct(int n, std::pair<int, int> k_range, double eps, bool no_midpoints,
                 const std::string& out) {
  json table = json::array();
  double prev = -1.0;
  bool monotone_in_k = true;
  for (int k = k_range.first; k <= k_range.second; ++k) {
    auto a = build_x_n(n, {k}, default_xn_sample(n, {k}, !no_midpoints));
    auto inst = make_retraction_instance(a, eps);
    auto res = retraction_lower_bound(inst);
    std::printf("n=%d k=%d  lambda_min=%.6f  converged=%s  gap=%.2g  iters=%zu\n", n, k,
                res.lambda_min, res.converged ? "yes" : "no", res.certificate_gap,
                res.iterations);
    json row = to_json(res);
    row["n"] = n;
    row["k"] = k;
    row["eps"] = eps;
    row["points"] = a.space.size();
    table.push_back(std::move(row));
    if (prev >= 0 && res.lambda_min < prev - 1e-6) monotone_in_k = false;
    prev = res.lambda_min;
  }
  json j{{"n", n},
         {"eps", eps},
         {"rows", std::move(table)},
         {"monotone_in_k", monotone_in_k}};
  write_output(j, out);
  return 0;
}

int cmd_suite(const std::string& config_path, const std::string& suite_name,
              std::optional<std::uint64_t> seed, std::optional<double> tol_override,
              const std::string& out, const std::string& csv) {
  ExperimentConfig cfg;
  if (!config_path.empty()) cfg = config_from_json(load_json(config_path));
  if (!suite_name.empty()) cfg.suite = suite_from_string(suite_name);
  if (seed) cfg.seed = *seed;
  if (tol_override) {
    cfg.tol_metric = *tol_override;
    cfg.tol_duality = *tol_override;
  }
  if (!out.empty()) cfg.out_path = out;

  auto rep = run_suite(cfg);
  if (!cfg.out_path.empty()) write_output(to_json(rep), cfg.out_path);
  if (!csv.empty()) {
    std::ofstream c(csv);
    if (!c) throw usage_error("cannot write " + csv);
    c << report_csv(rep);
  }
  std::size_t pass = 0, fail = 0, measured = 0;
  for (const auto& r : rep.records) {
    if (r.status == "pass") ++pass;
    else if (r.status == "fail") ++fail;
    else ++measured;
  }
  std::fprintf(stderr, "suite '%s' finished in %.0f ms\n", to_string(cfg.suite),
               rep.total_runtime_ms);
  std::printf("suite %s: %zu pass, %zu fail, %zu measured\n", to_string(cfg.suite),
              pass, fail, measured);
  for (const auto& r : rep.records)
    if (r.status == "fail")
      std::printf("  FAIL %s/%s: value %.6g vs bound %.6g %s\n", r.suite.c_str(),
                  r.name.c_str(), r.value, r.bound, r.witness.c_str());
  return fail == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metriclab: finite-truncation laboratory for glued graph spaces, "
               "Kantorovich hyperspaces, and retraction obstructions"};
  app.require_subcommand(1);

  // gnk
  auto* gnk = app.add_subcommand("gnk", "build a corner graph and its path metric");
  int gnk_n = 2, gnk_k = 1;
  std::string gnk_out;
  gnk->add_option("--n", gnk_n, "dimension")->required();
  gnk->add_option("--k", gnk_k, "inner shell radius")->required();
  gnk->add_option("--out", gnk_out, "output JSON path");

  // space
  auto* space = app.add_subcommand("space", "build an assembly (slice, X, Y, X_N)");
  std::string sp_kind = "x_trunc", sp_n = "2..3", sp_k = "1..4", sp_out;
  bool sp_general = false, sp_nomid = false, sp_nomatrix = false;
  int sp_level = 4;
  double sp_spacing = 1.0, sp_extent = 2.0;
  space->add_option("--kind", sp_kind, "xprime_slice | x_trunc | y_trunc | x_n")
      ->required();
  space->add_option("--n-range", sp_n, "n range a..b (x_n uses the low end)");
  space->add_option("--k-range", sp_k, "k range a..b");
  space->add_flag("--general", sp_general, "literal G_{n,k} instead of G_{n^2,k^2}");
  space->add_flag("--no-midpoints", sp_nomid, "x_n sample without edge midpoints");
  space->add_option("--level", sp_level, "slice level (xprime_slice)");
  space->add_option("--sample-spacing", sp_spacing, "lattice spacing (xprime_slice)");
  space->add_option("--extent", sp_extent, "lattice half-width (xprime_slice)");
  space->add_flag("--no-matrix", sp_nomatrix, "omit the distance matrix (large builds)");
  space->add_option("--out", sp_out, "output JSON path");

  // ot
  auto* ot = app.add_subcommand("ot", "optimal transport between two measures");
  std::string ot_space, ot_mu, ot_nu, ot_out;
  ot->add_option("--space", ot_space, "space JSON")->required();
  ot->add_option("--mu", ot_mu, "measure JSON")->required();
  ot->add_option("--nu", ot_nu, "measure JSON")->required();
  ot->add_option("--out", ot_out, "output JSON path");

  // hyper
  auto* hyper = app.add_subcommand("hyper", "Hausdorff distance between measure hulls");
  std::string hy_space, hy_a, hy_b, hy_out;
  hyper->add_option("--space", hy_space, "space JSON")->required();
  hyper->add_option("--a", hy_a, "generator-set JSON")->required();
  hyper->add_option("--b", hy_b, "generator-set JSON")->required();
  hyper->add_option("--out", hy_out, "output JSON path");

  // pi-probe
  auto* probe = app.add_subcommand("pi-probe", "nearest-point map Lipschitz probe");
  std::size_t pr_trials = 200, pr_dim = 2;
  std::uint64_t pr_seed = 7;
  std::string pr_family = "thin", pr_out;
  probe->add_option("--trials", pr_trials, "family samples");
  probe->add_option("--seed", pr_seed, "rng seed");
  probe->add_option("--family", pr_family, "thin | singletons | identical");
  probe->add_option("--dim", pr_dim, "ambient dimension for point families");
  probe->add_option("--out", pr_out, "output JSON path");

  // asdim
  auto* asdim = app.add_subcommand("asdim", "chain-diameter scan of a Y truncation");
  std::string as_n = "2..3", as_c = "1..50", as_out;
  int as_kmax = 4;
  std::uint64_t as_seed = 7;
  asdim->add_option("--n-range", as_n, "n range a..b");
  asdim->add_option("--k-max", as_kmax, "largest k");
  asdim->add_option("--c-range", as_c, "C range a..b");
  asdim->add_option("--seed", as_seed, "rng seed");
  asdim->add_option("--out", as_out, "output JSON path");

  // lip
  auto* lip = app.add_subcommand("lip", "measure a map's (lambda, eps) behaviour");
  std::string lp_space, lp_map, lp_out;
  double lp_eps = 0.0;
  lip->add_option("--space", lp_space, "source space JSON")->required();
  lip->add_option("--map", lp_map, "map JSON: {assignment, target?}")->required();
  lip->add_option("--eps", lp_eps, "epsilon");
  lip->add_option("--out", lp_out, "output JSON path");

  // obstruct
  auto* obstruct = app.add_subcommand("obstruct", "retraction lower bounds for X_N");
  int ob_n = 2;
  std::string ob_k = "1..4", ob_out;
  double ob_eps = 0.0;
  bool ob_nomid = false;
  obstruct->add_option("--n", ob_n, "ambient dimension")->required();
  obstruct->add_option("--k-range", ob_k, "k range a..b");
  obstruct->add_option("--eps", ob_eps, "epsilon");
  obstruct->add_flag("--no-midpoints", ob_nomid, "anchor sample without midpoints");
  obstruct->add_option("--out", ob_out, "output JSON path");

  // suite
  auto* suite = app.add_subcommand("suite", "run a verification suite");
  std::string su_config, su_name, su_out, su_csv;
  std::optional<std::uint64_t> su_seed;
  std::optional<double> su_tol;
  suite->add_option("--config", su_config, "config JSON path");
  suite->add_option("--suite", su_name,
                    "metrics | transport | hyperspace | euclid | chains | obstruction | all");
  suite->add_option("--seed", su_seed, "rng seed override");
  suite->add_option("--tol", su_tol, "tolerance override (metric and duality)");
  suite->add_option("--out", su_out, "report JSON path");
  suite->add_option("--csv", su_csv, "flattened CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (gnk->parsed()) return cmd_gnk(gnk_n, gnk_k, gnk_out);
    if (space->parsed())
      return cmd_space(sp_kind, parse_range(sp_n), parse_range(sp_k), sp_general,
                       sp_nomid, sp_level, sp_spacing, sp_extent, sp_nomatrix, sp_out);
    if (ot->parsed()) return cmd_ot(ot_space, ot_mu, ot_nu, ot_out);
    if (hyper->parsed()) return cmd_hyper(hy_space, hy_a, hy_b, hy_out);
    if (probe->parsed()) return cmd_pi_probe(pr_trials, pr_seed, pr_family, pr_dim, pr_out);
    if (asdim->parsed())
      return cmd_asdim(parse_range(as_n), as_kmax, parse_range(as_c), as_seed, as_out);
    if (lip->parsed()) return cmd_lip(lp_space, lp_map, lp_eps, lp_out);
    if (obstruct->parsed())
      return cmd_obstruct(ob_n, parse_range(ob_k), ob_eps, ob_nomid, ob_out);
    if (suite->parsed()) return cmd_suite(su_config, su_name, su_seed, su_tol, su_out, su_csv);
  } catch (const usage_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const argument_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
