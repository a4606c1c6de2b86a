#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "sgh/banach_space.hpp"
#include "sgh/errors.hpp"

using namespace sgh;

namespace {

double hand_norm(const std::vector<double>& v, double p) {
  double sum = 0.0;
  for (double c : v) sum += std::pow(std::abs(c), p);
  return std::pow(sum, 1.0 / p);
}

Vector random_vector(const SpaceSpec& space, Rng& rng, double radius) {
  std::vector<double> v(space.n());
  for (double& c : v) c = rng.uniform(-radius, radius);
  return Vector(space, v);
}

}  // namespace

TEST(SpaceSpec, RejectsBadExponents) {
  EXPECT_THROW(SpaceSpec(2, 1.0), ConfigError);
  EXPECT_THROW(SpaceSpec(2, 0.5), ConfigError);
  EXPECT_THROW(SpaceSpec(2, std::numeric_limits<double>::infinity()), ConfigError);
  EXPECT_THROW(SpaceSpec(0, 2.0), ConfigError);
  const SpaceSpec s(3, 3.0);
  EXPECT_DOUBLE_EQ(s.q(), 1.5);
  EXPECT_TRUE(s.opial());
  EXPECT_TRUE(s.uniformly_convex());
  EXPECT_FALSE(s.is_hilbert());
}

TEST(Vector, DimensionAndSpaceMismatch) {
  EXPECT_THROW(Vector(SpaceSpec(2, 2.0), {1.0}), DimensionError);
  EXPECT_THROW(Vector(SpaceSpec(1, 2.0), {std::nan("")}), ConfigError);
  const Vector a(SpaceSpec(2, 2.0), {1.0, 2.0});
  const Vector b(SpaceSpec(2, 3.0), {1.0, 2.0});
  EXPECT_THROW(distance(a, b), DimensionError);
}

TEST(Norm, Examples) {
  EXPECT_EQ(norm(Vector::zero(SpaceSpec(3, 2.0))), 0.0);
  EXPECT_DOUBLE_EQ(norm(Vector(SpaceSpec(2, 2.0), {3.0, 4.0})), 5.0);
  EXPECT_NEAR(norm(Vector(SpaceSpec(2, 4.0), {1.0, 1.0})), std::pow(2.0, 0.25), 1e-15);
}

TEST(Norm, MatchesHandFormulaAndAxioms) {
  Rng rng(7);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const SpaceSpec space(4, p);
    for (int k = 0; k < 500; ++k) {
      const Vector x = random_vector(space, rng, 5.0);
      const Vector y = random_vector(space, rng, 5.0);
      const double c = rng.uniform(-3.0, 3.0);
      std::vector<double> coords(x.coords().begin(), x.coords().end());
      EXPECT_NEAR(norm(x), hand_norm(coords, p), 1e-12 * (1.0 + norm(x)));
      EXPECT_NEAR(norm(c * x), std::abs(c) * norm(x), 1e-12 * (1.0 + norm(x)));
      EXPECT_LE(norm(x + y), norm(x) + norm(y) + 1e-12);
      EXPECT_DOUBLE_EQ(distance(x, y), distance(y, x));
    }
  }
}

TEST(DualityMap, Examples) {
  const Vector x(SpaceSpec(2, 2.0), {2.0, -1.0});
  const DualVector jx = duality_map(x);
  EXPECT_EQ(jx[0], 2.0);
  EXPECT_EQ(jx[1], -1.0);

  const DualVector j0 = duality_map(Vector::zero(SpaceSpec(3, 3.0)));
  for (double c : j0.coords()) EXPECT_EQ(c, 0.0);

  const Vector y(SpaceSpec(2, 4.0), {1.0, 1.0});
  const DualVector jy = duality_map(y);
  EXPECT_NEAR(jy[0], std::pow(2.0, -0.5), 1e-15);
  EXPECT_NEAR(jy[1], std::pow(2.0, -0.5), 1e-15);
  EXPECT_NEAR(pairing(y, jy), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(norm_squared(y), std::sqrt(2.0), 1e-15);
}

TEST(DualityMap, NormalizationIdentities) {
  Rng rng(11);
  for (double p : {1.5, 3.0, 4.0}) {
    const SpaceSpec space(5, p);
    for (int k = 0; k < 300; ++k) {
      const Vector x = random_vector(space, rng, 4.0);
      const DualVector j = duality_map(x);
      const double n2 = norm_squared(x);
      EXPECT_NEAR(pairing(x, j), n2, 1e-11 * (1.0 + n2));
      EXPECT_NEAR(dual_norm(j), norm(x), 1e-11 * (1.0 + norm(x)));
      // Hand formula ||x||^{2-p} |x_i|^{p-1} sign(x_i)
      const double scale = std::pow(norm(x), 2.0 - p);
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double expected = scale * std::pow(std::abs(x[i]), p - 1.0) * (x[i] < 0 ? -1.0 : 1.0);
        EXPECT_NEAR(j[i], expected, 1e-11 * (1.0 + std::abs(expected)));
      }
    }
  }
}

TEST(DualityGap, Examples) {
  const SpaceSpec l2(2, 2.0);
  const Vector x(l2, {1.0, 0.0});
  EXPECT_EQ(duality_gap(x, Vector::zero(l2)), 1.0);
  const Vector z(SpaceSpec(3, 3.0), {0.3, -1.0, 2.0});
  EXPECT_NEAR(duality_gap(z, z), 0.0, 1e-14);
}

TEST(DualityGap, NonnegativeOnRandomPairs) {
  Rng rng(3);
  const SpaceSpec space(3, 3.0);
  for (int k = 0; k < 10000; ++k) {
    const Vector x = random_vector(space, rng, 10.0);
    const Vector y = random_vector(space, rng, 10.0);
    EXPECT_GE(duality_gap(x, y), -1e-10 * (1.0 + norm_squared(x) + norm_squared(y)));
  }
}

TEST(XuGap, HilbertIsExactAndEndpointsVanish) {
  Rng rng(5);
  const SpaceSpec l2(3, 2.0);
  const Modulus g = hilbert_modulus();
  for (int k = 0; k < 1000; ++k) {
    const Vector x = sample_ball(l2, 1.0, rng);
    const Vector y = sample_ball(l2, 1.0, rng);
    EXPECT_NEAR(xu_gap(x, y, rng.uniform(), g), 0.0, 1e-12);
  }
  const SpaceSpec l3(2, 3.0);
  const Vector x(l3, {0.4, -0.2});
  const Vector y(l3, {-0.1, 0.7});
  const Modulus any = [](double s) { return 5.0 * s * s; };
  EXPECT_NEAR(xu_gap(x, y, 0.0, any), 0.0, 1e-15);
  EXPECT_NEAR(xu_gap(x, y, 1.0, any), 0.0, 1e-15);
  EXPECT_THROW(xu_gap(x, y, 1.5, any), PreconditionError);
}

TEST(EstimateG, HilbertCaseTracksSquareAwayFromZero) {
  const SpaceSpec l2(2, 2.0);
  const PiecewiseLinear g = estimate_g(l2, 1.0, ModulusFitPlan{1, 10000, 1.0});
  EXPECT_EQ(g(0.0), 0.0);
  // A convex piecewise-linear minorant of s^2 through the origin cannot track
  // s^2 to 5% at its first nodes, so the comparison starts at s = 0.25.
  std::size_t compared = 0;
  for (const auto& node : g.nodes()) {
    if (node.s < 0.25) continue;
    EXPECT_NEAR(node.value, node.s * node.s, 0.05 * node.s * node.s) << "s = " << node.s;
    ++compared;
  }
  EXPECT_GT(compared, 3u);
}

TEST(EstimateG, ShapeAndValidation) {
  for (double p : {1.5, 3.0, 4.0}) {
    const SpaceSpec space(2, p);
    const PiecewiseLinear g = estimate_g(space, 1.0, ModulusFitPlan{2, 10000, 0.5});
    EXPECT_EQ(g(0.0), 0.0);
    EXPECT_TRUE(g.is_nondecreasing());
    EXPECT_TRUE(g.is_convex(1e-12));
    Rng rng(derive_seed(2, 99));
    const Modulus m = [&g](double s) { return g(s); };
    for (int k = 0; k < 10000; ++k) {
      const Vector x = sample_ball(space, 1.0, rng);
      const Vector y = sample_ball(space, 1.0, rng);
      EXPECT_GE(xu_gap(x, y, rng.uniform(), m), -1e-9);
    }
  }
}

TEST(EstimateG, RejectsBadPlans) {
  const SpaceSpec l3(2, 3.0);
  EXPECT_THROW(estimate_g(l3, 0.0, {}), ConfigError);
  EXPECT_THROW(estimate_g(l3, 1.0, ModulusFitPlan{1, 0, 0.5}), ConfigError);
  EXPECT_THROW(estimate_g(l3, 1.0, ModulusFitPlan{1, 10, 1.5}), ConfigError);
}

TEST(EstimateG, DeterministicForSeed) {
  const SpaceSpec l4(3, 4.0);
  const auto a = estimate_g(l4, 2.0, ModulusFitPlan{9, 2000, 0.5});
  const auto b = estimate_g(l4, 2.0, ModulusFitPlan{9, 2000, 0.5});
  ASSERT_EQ(a.nodes().size(), b.nodes().size());
  for (std::size_t i = 0; i < a.nodes().size(); ++i) {
    EXPECT_EQ(a.nodes()[i].s, b.nodes()[i].s);
    EXPECT_EQ(a.nodes()[i].value, b.nodes()[i].value);
  }
}

TEST(PiecewiseLinear, RejectsBadNodes) {
  EXPECT_THROW(PiecewiseLinear({{0.5, 0.0}}), ConfigError);
  EXPECT_THROW(PiecewiseLinear({{0.0, 0.0}, {1.0, 1.0}, {1.0, 2.0}}), ConfigError);
  const PiecewiseLinear f({{0.0, 0.0}, {1.0, 1.0}, {2.0, 3.0}});
  EXPECT_DOUBLE_EQ(f(0.5), 0.5);
  EXPECT_DOUBLE_EQ(f(3.0), 5.0);
  EXPECT_TRUE(f.is_convex());
  EXPECT_FALSE(PiecewiseLinear({{0.0, 0.0}, {1.0, 2.0}, {2.0, 3.0}}).is_convex());
}
