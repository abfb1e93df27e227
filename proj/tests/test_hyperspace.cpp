#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "metriclab/hyperspace.hpp"
#include "oracles.hpp"

using namespace metriclab;

namespace {

SpaceRef two_point_space(double d_ab) {
  return make_space(FiniteMetricSpace({"a", "b"}, {{0, d_ab}, {d_ab, 0}}));
}

double grid_directed_2pt(const ConvexMeasureSet& A, const ConvexMeasureSet& B,
                         double d_ab, double step = 1e-3) {
  return oracle::lambda_grid_directed_2pt(A.generators(), B.generators(), d_ab, step);
}

ConvexMeasureSet random_cms(Rng& r, const SpaceRef& s, std::size_t max_gens = 3) {
  std::vector<Vec> gens;
  const std::size_t count = 1 + r.below(max_gens);
  for (std::size_t i = 0; i < count; ++i)
    gens.push_back(oracle::random_weights(r, s->size()));
  return ConvexMeasureSet(s, std::move(gens));
}

}  // namespace

TEST_CASE("dist_point_to_hull: membership gives zero") {
  auto s = two_point_space(1.0);
  ConvexMeasureSet B(s, std::vector<Vec>{{1.0, 0.0}, {0.25, 0.75}});
  CHECK(dist_point_to_hull(DiscreteMeasure(s, {0.25, 0.75}), B).distance ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK(dist_point_to_hull(DiscreteMeasure::dirac(s, 0),
                           ConvexMeasureSet(s, std::vector<Vec>{{1.0, 0.0}, {0.0, 1.0}}))
            .distance == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("dist_point_to_hull: the quarter-gap instance with its mixture") {
  // B = hull{ delta_a, (1/4 on a, 3/4 on b) }; nearest point of the hull to
  // delta_b is the second generator, at transport cost 1/4
  auto s = two_point_space(1.0);
  ConvexMeasureSet B(s, std::vector<Vec>{{1.0, 0.0}, {0.25, 0.75}});
  auto res = dist_point_to_hull(DiscreteMeasure::dirac(s, 1), B);
  CHECK(res.distance == doctest::Approx(0.25));
  REQUIRE(res.mixture.size() == 2);
  CHECK(res.mixture[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(res.mixture[1] == doctest::Approx(1.0).epsilon(1e-9));
  // lambda-grid confirmation
  ConvexMeasureSet A(s, std::vector<Vec>{{0.0, 1.0}});
  CHECK(grid_directed_2pt(A, B, 1.0) == doctest::Approx(0.25).epsilon(2e-3));
}

TEST_CASE("dist_point_to_hull rejects mismatched spaces") {
  auto s = two_point_space(1.0);
  auto t = two_point_space(2.0);
  CHECK_THROWS_AS(dist_point_to_hull(DiscreteMeasure::dirac(t, 0),
                                     ConvexMeasureSet::dirac(s, 0)),
                  argument_error);
}

TEST_CASE("hausdorff_ccp: identical hulls with different generator lists") {
  auto s = two_point_space(1.0);
  ConvexMeasureSet A(s, std::vector<Vec>{{1.0, 0.0}, {0.0, 1.0}});
  ConvexMeasureSet B(s, std::vector<Vec>{{1.0, 0.0}, {0.5, 0.5}, {0.0, 1.0}});
  CHECK(hausdorff_ccp(A, B) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("hausdorff_ccp: Dirac singletons reproduce the ground distance") {
  Rng r(6);
  auto s = make_space(oracle::random_euclid_space(r, 7, 3));
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      CHECK(hausdorff_ccp(ConvexMeasureSet::dirac(s, i), ConvexMeasureSet::dirac(s, j)) ==
            doctest::Approx(s->dist(i, j)).epsilon(1e-12));
}

TEST_CASE("hausdorff_ccp: directed distance attained at a generator") {
  auto s = two_point_space(1.0);
  ConvexMeasureSet A(s, std::vector<Vec>{{1.0, 0.0}});
  ConvexMeasureSet B(s, std::vector<Vec>{{1.0, 0.0}, {0.0, 1.0}});
  CHECK(hausdorff_ccp(A, B) == doctest::Approx(1.0));
}

TEST_CASE("hausdorff_ccp matches the lambda-grid oracle on 2-point spaces") {
  for (int trial = 0; trial < 25; ++trial) {
    Rng r = Rng::stream(4242, static_cast<std::uint64_t>(trial));
    const double d_ab = r.uniform(0.5, 3.0);
    auto s = two_point_space(d_ab);
    auto A = random_cms(r, s, 3);
    auto B = random_cms(r, s, 3);
    const double fast = hausdorff_ccp(A, B);
    const double slow =
        std::max(grid_directed_2pt(A, B, d_ab), grid_directed_2pt(B, A, d_ab));
    CHECK(std::fabs(fast - slow) <= 2e-3);
    CHECK(fast <= slow + 1e-9);  // the grid can only overshoot the true value
  }
}

TEST_CASE("hausdorff_ccp behaves as a pseudometric on random triples") {
  Rng r(17);
  auto s = make_space(oracle::random_euclid_space(r, 5, 2));
  for (int trial = 0; trial < 12; ++trial) {
    Rng rt = Rng::stream(17, static_cast<std::uint64_t>(trial));
    auto A = random_cms(rt, s);
    auto B = random_cms(rt, s);
    auto C = random_cms(rt, s);
    const double ab = hausdorff_ccp(A, B);
    const double ba = hausdorff_ccp(B, A);
    const double ac = hausdorff_ccp(A, C);
    const double cb = hausdorff_ccp(C, B);
    CHECK(std::fabs(ab - ba) <= tol::duality);
    CHECK(ab <= ac + cb + tol::duality);
    CHECK(hausdorff_ccp(A, A) <= tol::duality);
  }
}

TEST_CASE("zero hausdorff distance pins hull equality via mutual distances") {
  auto s = two_point_space(2.0);
  ConvexMeasureSet A(s, std::vector<Vec>{{0.9, 0.1}, {0.2, 0.8}});
  ConvexMeasureSet B(s, std::vector<Vec>{{0.9, 0.1}, {0.55, 0.45}, {0.2, 0.8}});
  REQUIRE(hausdorff_ccp(A, B) <= 1e-9);
  for (std::size_t l = 0; l < A.num_generators(); ++l)
    CHECK(dist_point_to_hull(A.generator(l), B).distance <= 1e-9);
  for (std::size_t l = 0; l < B.num_generators(); ++l)
    CHECK(dist_point_to_hull(B.generator(l), A).distance <= 1e-9);
}

TEST_CASE("random mixtures never exceed the generator maximum") {
  for (int trial = 0; trial < 15; ++trial) {
    Rng r = Rng::stream(31337, static_cast<std::uint64_t>(trial));
    auto s = make_space(oracle::random_euclid_space(r, 4, 2));
    auto A = random_cms(r, s);
    auto B = random_cms(r, s);
    double gen_max = 0.0;
    for (std::size_t l = 0; l < A.num_generators(); ++l)
      gen_max = std::max(gen_max, dist_point_to_hull(A.generator(l), B).distance);
    for (int mix_trial = 0; mix_trial < 5; ++mix_trial) {
      Vec mix = oracle::random_weights(r, A.num_generators());
      const double d = dist_point_to_hull(A.mixture(mix), B).distance;
      CHECK(d <= gen_max + tol::duality);
    }
  }
}

TEST_CASE("ccp_pushforward: identity, constant, and merge maps") {
  auto s = two_point_space(1.0);
  ConvexMeasureSet A(s, std::vector<Vec>{{1.0, 0.0}, {0.0, 1.0}});

  auto id = identity_map(s);
  auto same = ccp_pushforward(id, A);
  CHECK(same.num_generators() == 2);
  CHECK(hausdorff_ccp(same, A) <= 1e-12);

  PointMap constant(s, s, {1, 1});
  auto c = ccp_pushforward(constant, A);
  CHECK(c.num_generators() == 1);
  CHECK(c.generators()[0][1] == doctest::Approx(1.0));

  // three-point space, a,b -> c
  auto s3 = make_space(FiniteMetricSpace(
      {"a", "b", "c"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  ConvexMeasureSet AB(s3, std::vector<Vec>{{1, 0, 0}, {0, 1, 0}});
  PointMap merge(s3, s3, {2, 2, 2});
  auto merged = ccp_pushforward(merge, AB);
  CHECK(merged.num_generators() == 1);  // both generators push to delta_c
  CHECK(merged.generators()[0][2] == doctest::Approx(1.0));
}

TEST_CASE("ccp_pushforward along a short map contracts the hyperspace metric") {
  for (int trial = 0; trial < 15; ++trial) {
    Rng r = Rng::stream(90210, static_cast<std::uint64_t>(trial));
    auto x = make_space(oracle::random_integer_space(r, 5));
    auto f = oracle::mcshane_short_map(r, x);
    if (!f) continue;
    REQUIRE(is_short(*f));
    auto A = random_cms(r, x);
    auto B = random_cms(r, x);
    const double before = hausdorff_ccp(A, B);
    const double after = hausdorff_ccp(ccp_pushforward(*f, A), ccp_pushforward(*f, B));
    CHECK(after <= before + tol::duality);
  }
}

TEST_CASE("canonicalize prunes hull-interior generators") {
  auto s = two_point_space(1.0);
  ConvexMeasureSet A(s, std::vector<Vec>{{1.0, 0.0}, {0.5, 0.5}, {0.0, 1.0}});
  auto canon = canonicalize(A);
  CHECK(canon.num_generators() == 2);
  CHECK(hausdorff_ccp(canon, A) <= 1e-9);

  // duplicates disappear already at construction
  ConvexMeasureSet dup(s, std::vector<Vec>{{1.0, 0.0}, {1.0, 0.0}});
  CHECK(dup.num_generators() == 1);
}
