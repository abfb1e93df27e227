#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "metriclab/obstruction.hpp"
#include "oracles.hpp"

using namespace metriclab;

namespace {

// the pinned two-anchor / one-free instance: d(s1,s2)=2 through v
RetractionInstance bridge_instance(double eps) {
  auto s = make_space(FiniteMetricSpace(
      {"s1", "s2", "v"}, {{0, 2, 1}, {2, 0, 1}, {1, 1, 0}}));
  std::vector<std::optional<Vec>> anchors(3);
  anchors[0] = Vec{0.0, 0.0};
  anchors[1] = Vec{4.0, 0.0};
  return RetractionInstance(s, anchors, 2, eps);
}

// 2-variable grid search over the placement of the single free point
std::pair<double, Vec> bridge_grid_oracle(double eps, double step = 1e-3) {
  double best = metriclab::kInf;
  Vec best_z{0, 0};
  const Vec s1{0, 0}, s2{4, 0};
  for (double x = -1.0; x <= 5.0 + 1e-12; x += step)
    for (double y = -0.5; y <= 0.5 + 1e-12; y += step) {
      const Vec z{x, y};
      const double anchor_term = std::max(0.0, euclidean(s1, s2) - eps) / 2.0;
      const double v = std::max(
          {anchor_term, std::max(0.0, euclidean(z, s1) - eps) / 1.0,
           std::max(0.0, euclidean(z, s2) - eps) / 1.0});
      if (v < best) {
        best = v;
        best_z = z;
      }
    }
  return {best, best_z};
}

}  // namespace

TEST_CASE("no free points: the identity on Euclidean anchors is forced") {
  Rng r(1);
  std::vector<Vec> pts;
  for (int i = 0; i < 5; ++i) pts.push_back({r.uniform(-2, 2), r.uniform(-2, 2)});
  std::vector<std::string> labels;
  std::vector<std::vector<double>> d(5, Vec(5));
  for (std::size_t i = 0; i < 5; ++i) {
    labels.push_back("a" + std::to_string(i));
    for (std::size_t j = 0; j < 5; ++j) d[i][j] = euclidean(pts[i], pts[j]);
  }
  auto s = make_space(FiniteMetricSpace(labels, d));
  std::vector<std::optional<Vec>> anchors(5);
  for (std::size_t i = 0; i < 5; ++i) anchors[i] = pts[i];
  auto res = retraction_lower_bound(RetractionInstance(s, anchors, 2, 0.0));
  CHECK(res.lambda_min == doctest::Approx(1.0));
  CHECK(res.converged);
  CHECK(res.iterations == 0);
}

TEST_CASE("bridge instance: lambda 2 at placement (2,0), via the grid oracle") {
  auto inst = bridge_instance(0.0);
  auto res = retraction_lower_bound(inst);
  CHECK(res.lambda_min == doctest::Approx(2.0).epsilon(5e-4));
  REQUIRE(res.placement.size() == 1);
  CHECK(std::fabs(res.placement[0][0] - 2.0) <= 1e-3);
  CHECK(std::fabs(res.placement[0][1] - 0.0) <= 1e-3);

  auto [oracle_val, oracle_z] = bridge_grid_oracle(0.0);
  CHECK(std::fabs(res.lambda_min - oracle_val) <= 2e-3);
  CHECK(std::fabs(oracle_z[0] - 2.0) <= 2e-3);
  // the anchor pair alone already forces 2
  CHECK(res.lambda_min >= 2.0 - 1e-9);
}

TEST_CASE("bridge instance: three fixed initializations agree") {
  auto inst = bridge_instance(0.0);
  Vec values;
  for (int mode : {0, 1, 2}) {
    SubgradientOptions opt;
    opt.init_mode = mode;
    auto res = retraction_lower_bound(inst, opt);
    values.push_back(res.lambda_min);
  }
  for (double v : values)
    for (double w : values) CHECK(std::fabs(v - w) <= 2e-3);
}

TEST_CASE("objective evaluation matches a hand computation") {
  auto inst = bridge_instance(0.0);
  CHECK(retraction_objective(inst, {Vec{2.0, 0.0}}) == doctest::Approx(2.0));
  CHECK(retraction_objective(inst, {Vec{0.0, 0.0}}) == doctest::Approx(4.0));
  // epsilon is subtracted before dividing, clamped at zero
  auto inst_eps = bridge_instance(4.0);
  CHECK(retraction_objective(inst_eps, {Vec{2.0, 0.0}}) == doctest::Approx(0.0));
}

TEST_CASE("lambda_min is monotone non-increasing in epsilon") {
  double prev = metriclab::kInf;
  for (double eps : {0.0, 1.0, 5.0}) {
    auto res = retraction_lower_bound(bridge_instance(eps));
    CHECK(res.lambda_min <= prev + 1e-9);
    prev = res.lambda_min;
  }
}

TEST_CASE("an anchor-dominated objective converges exactly and says so") {
  // at eps = 4 every term can reach zero; the optimum is the anchor constant
  auto res = retraction_lower_bound(bridge_instance(4.0));
  CHECK(res.lambda_min == doctest::Approx(0.0));
  CHECK(res.converged);
  CHECK(res.certificate_gap == doctest::Approx(0.0));

  // eps = 0.5 on the glued X_2 instance: the worst anchor pair pins the value
  auto a = build_x_n(2, {1}, default_xn_sample(2, {1}));
  auto inst = make_retraction_instance(a, 0.5);
  auto r2 = retraction_lower_bound(inst);
  CHECK(r2.converged);
  const double expect = (std::sqrt(32.0) - 0.5) / std::sqrt(32.0);
  CHECK(r2.lambda_min == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("retraction_lower_bound refuses non-metric input") {
  auto bad = make_space(FiniteMetricSpace(
      {"a", "b", "c"}, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}));
  std::vector<std::optional<Vec>> anchors(3);
  anchors[0] = Vec{0.0};
  CHECK_THROWS_AS(
      retraction_lower_bound(RetractionInstance(bad, anchors, 1, 0.0)),
      validation_error);
}

TEST_CASE("iteration starvation is reported as unconverged") {
  SubgradientOptions opt;
  opt.max_iters = 30;
  opt.cycles = 1;
  opt.window = 10;
  opt.improvement_tol = 0.0;  // unreachable, so only a certificate can converge
  opt.init_mode = 1;          // origin start, away from the optimum
  auto res = retraction_lower_bound(bridge_instance(0.0), opt);
  CHECK_FALSE(res.converged);
  // still a certified upper bound
  CHECK(res.lambda_min >= 2.0 - 1e-9);
}

TEST_CASE("x_n instance over G_{2,1}: anchors force lambda near one") {
  auto a = build_x_n(2, {1}, default_xn_sample(2, {1}, false));
  auto inst = make_retraction_instance(a, 0.0);
  CHECK(inst.anchors().size() == 5);
  CHECK(inst.free_points().size() == 4);
  auto res = retraction_lower_bound(inst);
  CHECK(res.lambda_min >= 1.0 - 1e-3);
  CHECK(res.converged);
}

TEST_CASE("enlarging the anchor sample never lowers lambda_min") {
  // nested samples: corners+origin, then +midpoints; the objective gains terms
  for (int k : {1, 2}) {
    auto small = build_x_n(2, {k}, default_xn_sample(2, {k}, false));
    auto large = build_x_n(2, {k}, default_xn_sample(2, {k}, true));
    const double lam_small =
        retraction_lower_bound(make_retraction_instance(small, 0.0)).lambda_min;
    const double lam_large =
        retraction_lower_bound(make_retraction_instance(large, 0.0)).lambda_min;
    CHECK(lam_small <= lam_large + 1e-3);
  }
}

TEST_CASE("free points start at their own shell coordinates") {
  auto a = build_x_n(2, {1}, default_xn_sample(2, {1}, false));
  auto inst = make_retraction_instance(a, 0.0);
  for (std::size_t f : inst.free_points()) {
    REQUIRE(inst.own_coords[f].has_value());
    CHECK(inst.own_coords[f]->size() == 2);
  }
}

TEST_CASE("composed_retraction: Dirac pipeline is the identity on anchors") {
  auto a = build_x_n(2, {1}, default_xn_sample(2, {1}));
  auto F = dirac_extension(a);
  auto comp = composed_retraction(F, 2, a);
  for (std::size_t i = 0; i < a.space.size(); ++i) {
    if (a.tags[i].origin != PointOrigin::euclid_sample) continue;
    CHECK(euclidean(comp.image[i], a.tags[i].coords) <= 1e-9);
  }
}

TEST_CASE("composed_retraction: constant hull collapses to one point") {
  auto a = build_x_n(2, {1}, default_xn_sample(2, {1}));
  auto ref = make_space(a.space);
  std::vector<ConvexMeasureSet> F(a.space.size(), ConvexMeasureSet::dirac(ref, 0));
  auto comp = composed_retraction(F, 2, a);
  CHECK(comp.report.lambda_star == doctest::Approx(0.0));
  for (const auto& img : comp.image)
    CHECK(euclidean(img, comp.image.front()) <= 1e-12);
}

TEST_CASE("composed_retraction: Dirac embedding on a 3-anchor toy is an isometry") {
  auto toy = build_xprime_slice(4, {{0, 0}, {3, 0}, {0, 4}});
  auto F = dirac_extension(toy);
  auto comp = composed_retraction(F, 2, toy);
  CHECK(comp.report.lambda_star == doctest::Approx(1.0));
}
