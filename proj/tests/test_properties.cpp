#include <gtest/gtest.h>

#include <cmath>

#include "sgh/errors.hpp"
#include "sgh/properties.hpp"
#include "sgh/zoo.hpp"

using namespace sgh;

namespace {
const SpaceSpec kLine(1, 2.0);
const SpaceSpec kPlane(2, 2.0);
Vector v1(double a) { return Vector(kLine, {a}); }
const ZooEntry& zoo(const std::string& name) {
  static const std::vector<ZooEntry> entries = standard_zoo();
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw std::runtime_error("no zoo entry " + name);
}
}  // namespace

TEST(QuasiNonexpansive, Examples) {
  const Mapping half = Mapping::scaling(ConvexDomain::whole_space(kLine), 0.5, {v1(0)});
  const QuasiNeReport r = check_quasi_nonexpansive(half, {v1(0)}, SamplePlan{1, 1000, 10});
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.max_excess, 0.0);

  const Mapping& ball = zoo("projection-ball-l2").mapping;
  EXPECT_TRUE(check_quasi_nonexpansive(ball, {Vector::zero(kPlane)}, SamplePlan{1, 1000, 5}).passed);

  const ZooEntry dbl = doubling_control();
  const SamplePlan plan{1, 1000, 10};
  const QuasiNeReport bad = check_quasi_nonexpansive(dbl.mapping, {v1(0)}, plan);
  EXPECT_FALSE(bad.passed);
  double largest = 0.0;
  for (const Vector& y : sample_points(dbl.mapping.domain(), plan)) largest = std::max(largest, std::abs(y[0]));
  EXPECT_NEAR(bad.max_excess, largest, 1e-12);
}

TEST(QuasiNonexpansive, Preconditions) {
  const Mapping half = Mapping::scaling(ConvexDomain::whole_space(kLine), 0.5);
  EXPECT_THROW(check_quasi_nonexpansive(half, {}, SamplePlan{}), PreconditionError);
  EXPECT_THROW(check_quasi_nonexpansive(half, {v1(1)}, SamplePlan{}), PreconditionError);
}

TEST(Embedding, NamedClassesAtUnitVertices) {
  EXPECT_EQ(firmly_ne_embedding_params(1, 0), named_class(NamedClass::nonexpansive));
  EXPECT_EQ(firmly_ne_embedding_params(0, 1), named_class(NamedClass::nonspreading));
  EXPECT_EQ(firmly_ne_embedding_params(1, 1), named_class(NamedClass::hybrid));
  EXPECT_EQ(firmly_ne_embedding_params_swapped(0, 1), named_class(NamedClass::nonexpansive));
  EXPECT_EQ(firmly_ne_embedding_params_swapped(1, 0), named_class(NamedClass::nonspreading));
  EXPECT_THROW(firmly_ne_embedding_params(0, 0), PreconditionError);
  EXPECT_THROW(firmly_ne_embedding_params(-1, 1), PreconditionError);
}

TEST(Embedding, ConditionIdentitiesHoldExactly) {
  for (double z : {0.0, 0.5, 1.0, 2.0}) {
    for (double e : {0.0, 0.5, 1.0, 2.0}) {
      if (z + e == 0.0) continue;
      for (const SghParams& p : {firmly_ne_embedding_params(z, e), firmly_ne_embedding_params_swapped(z, e)}) {
        const ConditionReport r = validate_conditions(p);
        EXPECT_EQ(r.alpha_2beta_gamma, 0.0);
        EXPECT_EQ(r.alpha_beta, z + e);
        EXPECT_TRUE(r.all());
      }
    }
  }
}

TEST(FirmlyNonexpansive, Examples) {
  const Mapping& id = zoo("identity-l3").mapping;
  const FirmlyNeReport a = check_firmly_nonexpansive(id, SamplePlan{2, 500, 5});
  EXPECT_TRUE(a.passed);
  EXPECT_NEAR(a.max_excess, 0.0, 1e-12);
  const FirmlyNeReport b = check_firmly_nonexpansive(zoo("constant-l4").mapping, SamplePlan{2, 500, 5});
  EXPECT_EQ(b.max_excess, 0.0);
  EXPECT_TRUE(check_firmly_nonexpansive(zoo("projection-box-l2").mapping, SamplePlan{3, 10000, 5}).passed);
  // Negation: |Tx - Ty|^2 = |x-y|^2 but <x - y, J(y - x)> = -|x - y|^2.
  EXPECT_FALSE(check_firmly_nonexpansive(zoo("negation-l2").mapping, SamplePlan{2, 100, 5}).passed);
}

TEST(OrbitProbe, Examples) {
  const Mapping half = Mapping::scaling(ConvexDomain::whole_space(kLine), 0.5, {v1(0)});
  const ProbeReport r = orbit_boundedness_probe(half, v1(1), 50, 1.0);
  EXPECT_EQ(r.verdict, ProbeVerdict::pass);
  ASSERT_TRUE(r.limit_candidate.has_value());
  EXPECT_LE(r.candidate_residual, 1e-12);

  const ZooEntry shift = translation_control();
  const ProbeReport u = orbit_boundedness_probe(shift.mapping, v1(0), 200, 100.0);
  EXPECT_EQ(u.verdict, ProbeVerdict::fail);
  EXPECT_EQ(u.steps, 101u);  // |T^n 0| = n first exceeds 100 at n = 101

  const Mapping neg = Mapping::negation(ConvexDomain::whole_space(kLine), {v1(0)});
  const ProbeReport n = orbit_boundedness_probe(neg, v1(1), 20, 1.0, {std::nullopt, false});
  EXPECT_EQ(n.verdict, ProbeVerdict::pass);
  for (double res : n.residuals) EXPECT_EQ(res, 2.0);
}

TEST(Demiclosedness, Examples) {
  const Mapping id = Mapping::identity(ConvexDomain::whole_space(kLine));
  const SequenceGenerator to_three = [](const Mapping&) {
    GeneratedSequence s;
    for (int n = 0; n < 60; ++n) s.points.push_back(v1(3.0 + std::ldexp(1.0, -n)));
    s.limit = v1(3.0);
    return s;
  };
  EXPECT_EQ(demiclosedness_probe(id, to_three, 1e-10).verdict, ProbeVerdict::pass);

  const Mapping half = Mapping::scaling(ConvexDomain::whole_space(kLine), 0.5);
  const SequenceGenerator powers = [](const Mapping&) {
    GeneratedSequence s;
    for (int n = 1; n <= 60; ++n) s.points.push_back(v1(std::ldexp(1.0, -n)));
    s.limit = v1(0.0);
    return s;
  };
  const ProbeReport r = demiclosedness_probe(half, powers, 1e-12);
  EXPECT_EQ(r.verdict, ProbeVerdict::pass);
  // |x_n - T x_n| = 2^{-n-1}
  EXPECT_EQ(r.residuals.front(), 0.25);
  EXPECT_EQ(r.candidate_residual, 0.0);

  // A sequence that does not settle gives no verdict.
  const SequenceGenerator far = [](const Mapping&) {
    GeneratedSequence s;
    s.points = {v1(1.0), v1(2.0)};
    return s;
  };
  EXPECT_EQ(demiclosedness_probe(half, far, 1e-10).verdict, ProbeVerdict::inconclusive);
}

TEST(Demiclosedness, TableMappingLimitIsBruteForceFixedPoint) {
  const Mapping& table = zoo("nonspreading-table").mapping;
  const auto fixed = fixed_points_bruteforce(table, 1e-12);
  ASSERT_EQ(fixed.size(), 1u);
  EXPECT_EQ(fixed[0][0], 0.0);
  for (const Vector& x0 : table.domain().as_point_set()->points) {
    const auto gen = ishikawa_generator(
        x0, Schedules{Schedule::constant(1.0), Schedule::constant(1.0), std::nullopt}, StopRule{1e-12, 100});
    const ProbeReport r = demiclosedness_probe(table, gen, 1e-10);
    EXPECT_EQ(r.verdict, ProbeVerdict::pass);
    ASSERT_TRUE(r.limit_candidate.has_value());
    EXPECT_EQ(*r.limit_candidate, fixed[0]);
  }
}
