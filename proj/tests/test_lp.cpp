#include <gtest/gtest.h>

#include "sgh/lp.hpp"

using namespace sgh;

TEST(Simplex, SmallOptimum) {
  // max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, x <= 3
  const lp::Solution s = lp::solve({{{1, 1}, {1, 3}, {1, 0}}, {4, 6, 3}, {3, 2}});
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.objective, 11.0, 1e-12);
  EXPECT_NEAR(s.x[0], 3.0, 1e-12);
  EXPECT_NEAR(s.x[1], 1.0, 1e-12);
}

TEST(Simplex, NegativeRightHandSideNeedsPhaseOne) {
  // max -x - y  s.t. -x - y <= -2, x <= 5  -> optimum -2
  const lp::Solution s = lp::solve({{{-1, -1}, {1, 0}}, {-2, 5}, {-1, -1}});
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.objective, -2.0, 1e-12);
}

TEST(Simplex, InfeasibleWithFarkasCertificate) {
  // x <= 1 and -x <= -3
  const lp::Problem p{{{1}, {-1}}, {1, -3}, {1}};
  const lp::Solution s = lp::solve(p);
  ASSERT_EQ(s.status, lp::Status::infeasible);
  ASSERT_EQ(s.farkas.size(), 2u);
  double aty = 0.0;
  double bty = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_GE(s.farkas[i], 0.0);
    aty += p.a[i][0] * s.farkas[i];
    bty += p.b[i] * s.farkas[i];
  }
  EXPECT_GE(aty, -1e-12);
  EXPECT_LT(bty, 0.0);
}

TEST(Simplex, Unbounded) {
  const lp::Solution s = lp::solve({{{1, -1}}, {1}, {1, 0}});
  EXPECT_EQ(s.status, lp::Status::unbounded);
}

TEST(Simplex, DegenerateCycleProneProblem) {
  // Beale's example, which cycles under the textbook largest-coefficient rule.
  const lp::Problem p{{{0.25, -60, -1.0 / 25, 9}, {0.5, -90, -1.0 / 50, 3}, {0, 0, 1, 0}},
                      {0, 0, 1},
                      {0.75, -150, 1.0 / 50, -6}};
  const lp::Solution s = lp::solve(p);
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.objective, 0.05, 1e-12);
}
