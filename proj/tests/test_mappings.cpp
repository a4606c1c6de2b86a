#include <gtest/gtest.h>

#include "sgh/errors.hpp"
#include "sgh/mappings.hpp"
#include "sgh/zoo.hpp"

using namespace sgh;

namespace {
const SpaceSpec kLine(1, 2.0);
const SpaceSpec kPlane(2, 2.0);
Vector v2(double a, double b) { return Vector(kPlane, {a, b}); }
Vector v1(double a) { return Vector(kLine, {a}); }
}  // namespace

TEST(Mapping, Examples) {
  const Mapping id = Mapping::identity(ConvexDomain::whole_space(kPlane));
  EXPECT_EQ(id(v2(1, 2)), v2(1, 2));
  const Mapping half = Mapping::scaling(ConvexDomain::whole_space(kLine), 0.5);
  EXPECT_EQ(half(v1(1.0))[0], 0.5);
  const Mapping proj =
      Mapping::projection(ConvexDomain::whole_space(kPlane), ConvexDomain::ball(Vector::zero(kPlane), 1.0));
  const Vector p = proj(v2(3, 4));
  EXPECT_NEAR(p[0], 0.6, 1e-15);
  EXPECT_NEAR(p[1], 0.8, 1e-15);
}

TEST(MetricProjection, Examples) {
  const ConvexDomain box = ConvexDomain::box(kPlane, {0, 0}, {1, 1});
  EXPECT_EQ(metric_projection(box, v2(2, -1)), v2(1, 0));
  const ConvexDomain unit = ConvexDomain::ball(Vector::zero(kPlane), 1.0);
  EXPECT_EQ(metric_projection(unit, v2(0.3, -0.2)), v2(0.3, -0.2));
  const Vector q = metric_projection(ConvexDomain::ball(Vector::zero(kPlane), 2.0), v2(3, 4));
  EXPECT_NEAR(q[0], 1.2, 1e-15);
  EXPECT_NEAR(q[1], 1.6, 1e-15);
}

TEST(MetricProjection, IdempotentAndNonHilbertRejected) {
  Rng rng(4);
  const ConvexDomain ball = ConvexDomain::ball(v2(0.5, -0.5), 1.5);
  const ConvexDomain box = ConvexDomain::box(kPlane, {-1, 0}, {2, 1});
  for (int k = 0; k < 1000; ++k) {
    const Vector x(kPlane, {rng.uniform(-10, 10), rng.uniform(-10, 10)});
    for (const ConvexDomain* c : {&ball, &box}) {
      const Vector once = metric_projection(*c, x);
      const Vector twice = metric_projection(*c, once);
      EXPECT_LE(distance(once, twice), 1e-15);
      EXPECT_TRUE(c->contains(once, 1e-12));
    }
  }
  const SpaceSpec l3(2, 3.0);
  EXPECT_THROW(metric_projection(ConvexDomain::ball(Vector::zero(l3), 1.0), Vector(l3, {2.0, 0.0})),
               ConfigError);
}

TEST(Mapping, SelfMapAndFixedPointChecks) {
  // x -> x + 1 does not map [0, 1] into itself.
  EXPECT_THROW(Mapping::affine(ConvexDomain::box(kLine, {0}, {1}), {{1.0}}, {1.0}), ConfigError);
  // 1 is not fixed by x/2.
  EXPECT_THROW(Mapping::scaling(ConvexDomain::whole_space(kLine), 0.5, {v1(1.0)}), ConfigError);
  const Mapping half = Mapping::scaling(ConvexDomain::box(kLine, {-1}, {1}), 0.5);
  EXPECT_THROW(half(v1(3.0)), DomainError);
  EXPECT_THROW(Mapping::table(ConvexDomain::point_set(kLine, {v1(0), v1(1)}), {v1(0), v1(5)}), ConfigError);
}

TEST(FixedPointsBruteforce, Examples) {
  const Mapping half = Mapping::scaling(ConvexDomain::whole_space(kLine), 0.5);
  const auto grid = fixed_points_bruteforce(half, 1e-12, GridSpec{{-1.0}, {1.0}, 0.25});
  ASSERT_EQ(grid.size(), 1u);
  EXPECT_EQ(grid[0][0], 0.0);

  const Mapping id = Mapping::identity(ConvexDomain::point_set(kLine, {v1(-2.0), v1(3.0)}));
  const auto both = fixed_points_bruteforce(id, 1e-12);
  ASSERT_EQ(both.size(), 2u);

  // (I - A) x = b with A = diag(1/2, 1/3), b = (1, 1): x = (1/(1/2), 1/(2/3)).
  const Mapping affine =
      Mapping::affine(ConvexDomain::whole_space(kPlane), {{0.5, 0.0}, {0.0, 1.0 / 3.0}}, {1.0, 1.0});
  const auto solved = fixed_points_bruteforce(affine, 1e-12);
  ASSERT_EQ(solved.size(), 1u);
  EXPECT_NEAR(solved[0][0], 1.0 / 0.5, 1e-14);
  EXPECT_NEAR(solved[0][1], 1.0 / (1.0 - 1.0 / 3.0), 1e-14);

  EXPECT_THROW(fixed_points_bruteforce(Mapping::identity(ConvexDomain::whole_space(kPlane)), 1e-12),
               ConfigError);
}

TEST(Sampling, DeterministicAndInsideDomain) {
  const ConvexDomain ball = ConvexDomain::ball(v2(1, 1), 2.0);
  const auto a = sample_points(ball, SamplePlan{42, 200, 10.0});
  const auto b = sample_points(ball, SamplePlan{42, 200, 10.0});
  ASSERT_EQ(a.size(), 200u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_TRUE(ball.contains(a[i]));
  }
  const ConvexDomain set = ConvexDomain::point_set(kLine, {v1(0), v1(1), v1(2)});
  EXPECT_EQ(sample_pairs(set, SamplePlan{1, 5, 1.0}).size(), 6u);
  EXPECT_THROW(sample_pairs(ball, SamplePlan{1, 0, 1.0}), ConfigError);
}

TEST(Zoo, DeclaredFixedPointsAreFixed) {
  for (const ZooEntry& entry : standard_zoo()) {
    for (const Vector& q : entry.mapping.declared_fixed_points()) {
      EXPECT_LE(entry.mapping.residual(q), 1e-12) << entry.name;
    }
  }
}
