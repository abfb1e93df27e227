#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "metriclab/gnk.hpp"
#include "metriclab/metric_space.hpp"
#include "oracles.hpp"

using namespace metriclab;

namespace {

FiniteMetricSpace line_space(const Vec& positions) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> d(positions.size(), Vec(positions.size()));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    labels.push_back("x" + std::to_string(i));
    for (std::size_t j = 0; j < positions.size(); ++j)
      d[i][j] = std::fabs(positions[i] - positions[j]);
  }
  return FiniteMetricSpace(labels, d);
}

}  // namespace

TEST_CASE("verify_metric passes an equilateral triple") {
  FiniteMetricSpace s({"a", "b", "c"},
                      {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  auto rep = verify_metric(s);
  CHECK(rep.pass);
  CHECK(rep.total_violations == 0);
}

TEST_CASE("verify_metric reports the violating triple") {
  // d(a,c)=5 > d(a,b)+d(b,c)=2
  FiniteMetricSpace s({"a", "b", "c"},
                      {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
  auto rep = verify_metric(s);
  CHECK_FALSE(rep.pass);
  REQUIRE(!rep.violations.empty());
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.kind == MetricViolation::Kind::triangle && v.a == 0 && v.b == 1 && v.c == 2)
      found = true;
  CHECK(found);
}

TEST_CASE("verify_metric flags diagonal and positivity, not just triangle") {
  FiniteMetricSpace diag({"a", "b"}, {{0.5, 1}, {1, 0}});
  auto rep = verify_metric(diag);
  CHECK_FALSE(rep.pass);
  CHECK(rep.violations.front().kind == MetricViolation::Kind::diagonal);

  FiniteMetricSpace zero({"a", "b"}, {{0, 0}, {0, 0}});
  auto rep2 = verify_metric(zero);
  CHECK_FALSE(rep2.pass);
  CHECK(rep2.violations.front().kind == MetricViolation::Kind::positivity);
}

TEST_CASE("structural problems are errors, not axiom failures") {
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {{0, 1}}), structural_error);
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {{0, 1, 2}, {1, 0, 2}}),
                  structural_error);
  FiniteMetricSpace asym({"a", "b"}, {{0, 1}, {2, 0}});
  CHECK_THROWS_AS(verify_metric(asym), structural_error);
  FiniteMetricSpace nan_space = FiniteMetricSpace::from_flat(
      {"a", "b"}, {0.0, std::nan(""), std::nan(""), 0.0});
  CHECK_THROWS_AS(verify_metric(nan_space), structural_error);
}

TEST_CASE("the G_{2,1} path metric is a metric") {
  auto g = build_gnk(2, 1);
  auto m = gnk_metric(g);
  CHECK(verify_metric(m).pass);
}

TEST_CASE("lipschitz_constant: identity and constant maps") {
  auto s = make_space(line_space({0, 1, 3, 7}));
  auto id = identity_map(s);
  CHECK(lipschitz_constant(id, 0.0).lambda_star == doctest::Approx(1.0));

  PointMap constant(s, s, {2, 2, 2, 2});
  CHECK(lipschitz_constant(constant, 0.0).lambda_star == doctest::Approx(0.0));
  CHECK(lipschitz_constant(constant, 5.0).lambda_star == doctest::Approx(0.0));
}

TEST_CASE("lipschitz_constant: witness is the lowest tied pair") {
  // doubling map on a 3-point line: every pair attains lambda = 2
  auto src = make_space(line_space({0, 1, 2}));
  auto tgt = make_space(line_space({0, 2, 4}));
  PointMap dbl(src, tgt, {0, 1, 2});
  auto rep = lipschitz_constant(dbl, 0.0);
  CHECK(rep.lambda_star == doctest::Approx(2.0));
  CHECK(rep.witness == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("lipschitz_constant is antitone in epsilon") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    Rng r = Rng::stream(41, static_cast<std::uint64_t>(trial));
    auto src = make_space(oracle::random_euclid_space(r, 6, 3));
    auto tgt = make_space(oracle::random_euclid_space(r, 5, 2));
    std::vector<std::size_t> assign(6);
    for (auto& a : assign) a = r.below(5);
    PointMap f(src, tgt, assign);
    double prev = kInf;
    for (double eps : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const double cur = lipschitz_constant(f, eps).lambda_star;
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("composition of short maps is short") {
  for (int trial = 0; trial < 25; ++trial) {
    Rng r = Rng::stream(77, static_cast<std::uint64_t>(trial));
    auto x = make_space(oracle::random_integer_space(r, 7));

    // McShane construction on integer distances: phi(x) = min_j (c_j + d(x, x_j))
    // stays exactly 1-Lipschitz, and all values are integers.
    auto mcshane_map = [&](const SpaceRef& space) {
      const std::size_t n = space->size();
      std::vector<int> c(n);
      for (auto& v : c) v = static_cast<int>(r.below(12));
      std::vector<int> phi(n);
      for (std::size_t i = 0; i < n; ++i) {
        int best = c[i];
        for (std::size_t j = 0; j < n; ++j)
          best = std::min(best, c[j] + static_cast<int>(std::lround(space->dist(i, j))));
        phi[i] = best;
      }
      std::vector<int> values;
      for (int v : phi)
        if (std::find(values.begin(), values.end(), v) == values.end())
          values.push_back(v);
      std::sort(values.begin(), values.end());
      std::vector<std::string> labels;
      std::vector<std::vector<double>> d(values.size(), Vec(values.size()));
      for (std::size_t i = 0; i < values.size(); ++i) {
        labels.push_back("v" + std::to_string(values[i]));
        for (std::size_t j = 0; j < values.size(); ++j)
          d[i][j] = std::abs(values[i] - values[j]);
      }
      auto target = make_space(FiniteMetricSpace(labels, d));
      std::vector<std::size_t> assign(n);
      for (std::size_t i = 0; i < n; ++i)
        assign[i] = static_cast<std::size_t>(
            std::find(values.begin(), values.end(), phi[i]) - values.begin());
      return PointMap(space, target, assign);
    };

    PointMap f = mcshane_map(x);
    if (f.target->size() < 2) continue;
    PointMap g = mcshane_map(f.target);
    if (g.target->size() < 2) continue;
    CHECK(is_short(f));
    CHECK(is_short(g));
    CHECK(lipschitz_constant(compose(g, f), 0.0).lambda_star <= 1.0 + tol::metric);
  }
}

TEST_CASE("chain_components: forced adjacency on a line") {
  auto s = line_space({0, 1, 5, 6});
  auto rep = chain_components(s, 1.0);
  REQUIRE(rep.components.size() == 2);
  CHECK(rep.components[0] == std::vector<std::size_t>{0, 1});
  CHECK(rep.components[1] == std::vector<std::size_t>{2, 3});
  CHECK(rep.max_diameter == doctest::Approx(1.0));
}

TEST_CASE("chain_components: C at least the diameter gives one component") {
  Rng r(9);
  auto s = oracle::random_euclid_space(r, 8, 2);
  auto rep = chain_components(s, s.diameter());
  CHECK(rep.components.size() == 1);
  CHECK(rep.max_diameter == doctest::Approx(s.diameter()));
}

TEST_CASE("chain_components rejects non-positive C") {
  auto s = line_space({0, 1});
  CHECK_THROWS_AS(chain_components(s, 0.0), argument_error);
  CHECK_THROWS_AS(chain_components(s, -2.0), argument_error);
}

TEST_CASE("chain_components matches a BFS oracle and is monotone in C") {
  for (int trial = 0; trial < 20; ++trial) {
    Rng r = Rng::stream(123, static_cast<std::uint64_t>(trial));
    auto s = oracle::random_euclid_space(r, 10, 2, 6.0);
    std::size_t prev_count = s.size() + 1;
    double prev_diam = 0.0;
    for (double C : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
      auto rep = chain_components(s, C);
      auto expect = oracle::bfs_chain_components(s, C);
      CHECK(rep.components == expect);
      CHECK(rep.components.size() <= prev_count);
      CHECK(rep.max_diameter >= prev_diam - 1e-12);
      prev_count = rep.components.size();
      prev_diam = rep.max_diameter;
    }
  }
}

TEST_CASE("glue_maximal chains two segments") {
  FiniteMetricSpace ab({"a", "b"}, {{0, 2}, {2, 0}});
  FiniteMetricSpace bc({"b", "c"}, {{0, 2}, {2, 0}});
  auto glued = glue_maximal({ab, bc});
  CHECK(glued.space.size() == 3);
  CHECK(glued.space.dist(0, 2) == doctest::Approx(4.0));
  CHECK(glued.disagreement_count == 0);
  CHECK(verify_metric(glued.space).pass);
}

TEST_CASE("glue_maximal is idempotent on a single metric space") {
  Rng r(5);
  auto s = oracle::random_euclid_space(r, 9, 3);
  auto glued = glue_maximal({s});
  CHECK(glued.disagreement_count == 0);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      CHECK(glued.space.dist(i, j) == doctest::Approx(s.dist(i, j)).epsilon(1e-12));
}

TEST_CASE("glue_maximal: G_{2,1} path metric against Euclidean corners") {
  auto g = build_gnk(2, 1);
  auto path_metric = gnk_metric(g);

  // Euclidean part on the four outer corners, labels matching the graph's
  std::vector<std::string> labels;
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (!g.is_inner(i)) {
      labels.push_back(g.label(i));
      const auto& v = g.vertex(i);
      pts.push_back({static_cast<double>(v[0]), static_cast<double>(v[1])});
    }
  std::vector<std::vector<double>> de(labels.size(), Vec(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j)
      de[i][j] = euclidean(pts[i], pts[j]);
  FiniteMetricSpace euclid_part(labels, de);

  auto glued = glue_maximal({path_metric, euclid_part});
  CHECK(verify_metric(glued.space).pass);

  // frozen oracle values: Floyd-Warshall over the 8-vertex union
  std::vector<oracle::WeightedEdge> union_edges;
  for (const auto& e : g.edges) union_edges.push_back({e.a, e.b, e.weight});
  std::vector<std::size_t> outer_idx;
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (!g.is_inner(i)) outer_idx.push_back(i);
  for (std::size_t a = 0; a < outer_idx.size(); ++a)
    for (std::size_t b = a + 1; b < outer_idx.size(); ++b) {
      Vec pa{static_cast<double>(g.vertex(outer_idx[a])[0]),
             static_cast<double>(g.vertex(outer_idx[a])[1])};
      Vec pb{static_cast<double>(g.vertex(outer_idx[b])[0]),
             static_cast<double>(g.vertex(outer_idx[b])[1])};
      union_edges.push_back({outer_idx[a], outer_idx[b], euclidean(pa, pb)});
    }
  auto fw = oracle::floyd_warshall(g.vertex_count(), union_edges);

  const auto at = [&](const std::string& lab) {
    const auto& ls = glued.space.labels();
    return static_cast<std::size_t>(
        std::find(ls.begin(), ls.end(), lab) - ls.begin());
  };
  const std::size_t pp = at("T(2,2)"), mm = at("T(-2,-2)");
  CHECK(glued.space.dist(pp, mm) == doctest::Approx(std::sqrt(32.0)));
  CHECK(glued.space.dist(pp, mm) < 6.0);

  // glued agrees with the independent all-pairs run on every vertex pair
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    for (std::size_t j = 0; j < g.vertex_count(); ++j) {
      const std::size_t gi = at(g.label(i)), gj = at(g.label(j));
      CHECK(glued.space.dist(gi, gj) == doctest::Approx(fw[i][j]).epsilon(1e-12));
    }

  // the path metric said 6 for opposite outer corners; glue reports shrinkage
  CHECK(glued.disagreement_count > 0);
  bool reported = false;
  for (const auto& dis : glued.disagreements)
    if (dis.part == 0 && ((dis.i == pp && dis.j == mm) || (dis.i == mm && dis.j == pp)))
      reported = true;
  CHECK(reported);
}

TEST_CASE("glue_maximal output never exceeds any supplied distance") {
  for (int trial = 0; trial < 15; ++trial) {
    Rng r = Rng::stream(2024, static_cast<std::uint64_t>(trial));
    auto a = oracle::random_integer_space(r, 6);
    // second part shares labels q2..q5 and adds two fresh points
    std::vector<std::string> labels{"q2", "q3", "q4", "q5", "r0", "r1"};
    auto b_raw = oracle::random_integer_space(r, 6);
    FiniteMetricSpace b(labels, [&] {
      std::vector<std::vector<double>> d(6, Vec(6));
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) d[i][j] = b_raw.dist(i, j);
      return d;
    }());
    auto glued = glue_maximal({a, b});
    CHECK(verify_metric(glued.space).pass);
    const auto& ls = glued.space.labels();
    auto at = [&](const std::string& lab) {
      return static_cast<std::size_t>(
          std::find(ls.begin(), ls.end(), lab) - ls.begin());
    };
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        CHECK(glued.space.dist(at(a.labels()[i]), at(a.labels()[j])) <=
              a.dist(i, j) + 1e-12);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        CHECK(glued.space.dist(at(b.labels()[i]), at(b.labels()[j])) <=
              b.dist(i, j) + 1e-12);
  }
}

TEST_CASE("glue_maximal names disconnected label classes") {
  FiniteMetricSpace ab({"a", "b"}, {{0, 1}, {1, 0}});
  FiniteMetricSpace cd({"c", "d"}, {{0, 1}, {1, 0}});
  CHECK_THROWS_WITH_AS(glue_maximal({ab, cd}),
                       doctest::Contains("disconnected"), validation_error);
}
