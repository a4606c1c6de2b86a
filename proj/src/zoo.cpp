#include "sgh/zoo.hpp"

namespace sgh {

namespace {

Vector vec(const SpaceSpec& space, std::vector<double> coords) {
  return Vector(space, std::move(coords));
}

ConvexDomain cube(const SpaceSpec& space, double half_width) {
  return ConvexDomain::box(space, std::vector<double>(space.n(), -half_width),
                           std::vector<double>(space.n(), half_width));
}

}  // namespace

std::vector<ZooEntry> standard_zoo() {
  std::vector<ZooEntry> zoo;

  const SpaceSpec l2(2, 2.0);
  const SpaceSpec l3(3, 3.0);
  const SpaceSpec l4(2, 4.0);
  const SpaceSpec l15(2, 1.5);
  const SpaceSpec line(1, 2.0);

  zoo.push_back({"identity-l2", Mapping::identity(cube(l2, 5.0), {Vector::zero(l2), vec(l2, {1.5, -2.0})}),
                 true});
  zoo.push_back({"identity-l3", Mapping::identity(cube(l3, 5.0), {Vector::zero(l3)}), true});
  zoo.push_back({"constant-l2",
                 Mapping::constant(cube(l2, 5.0), vec(l2, {1.0, -2.0}), {vec(l2, {1.0, -2.0})}),
                 true});
  zoo.push_back({"constant-l4",
                 Mapping::constant(cube(l4, 5.0), vec(l4, {0.5, 0.25}), {vec(l4, {0.5, 0.25})}),
                 true});
  zoo.push_back({"half-scaling-l2",
                 Mapping::scaling(ConvexDomain::whole_space(l2), 0.5, {Vector::zero(l2)}), true});
  zoo.push_back({"half-scaling-l3",
                 Mapping::scaling(ConvexDomain::whole_space(l3), 0.5, {Vector::zero(l3)}), true});
  zoo.push_back({"negation-l2", Mapping::negation(ConvexDomain::whole_space(l2), {Vector::zero(l2)}),
                 false});
  zoo.push_back({"negation-l1.5",
                 Mapping::negation(ConvexDomain::whole_space(l15), {Vector::zero(l15)}), false});
  zoo.push_back({"affine-diag-l2",
                 Mapping::affine(ConvexDomain::whole_space(l2), {{0.5, 0.0}, {0.0, 1.0 / 3.0}},
                                 {1.0, 1.0}, {vec(l2, {2.0, 1.5})}),
                 true});
  zoo.push_back({"affine-diag-l4",
                 Mapping::affine(ConvexDomain::whole_space(l4), {{0.5, 0.0}, {0.0, 1.0 / 3.0}},
                                 {1.0, 1.0}, {vec(l4, {2.0, 1.5})}),
                 false});
  zoo.push_back({"rotation-l2",
                 Mapping::affine(ConvexDomain::whole_space(l2), {{0.0, -1.0}, {1.0, 0.0}},
                                 {0.0, 0.0}, {Vector::zero(l2)}),
                 false});
  zoo.push_back({"projection-ball-l2",
                 Mapping::projection(ConvexDomain::whole_space(l2),
                                     ConvexDomain::ball(Vector::zero(l2), 1.0),
                                     {Vector::zero(l2), vec(l2, {0.6, 0.8}), vec(l2, {-0.5, 0.25})}),
                 true, 5.0});
  zoo.push_back({"projection-box-l2",
                 Mapping::projection(ConvexDomain::whole_space(l2),
                                     ConvexDomain::box(l2, {0.0, 0.0}, {1.0, 1.0}),
                                     {vec(l2, {0.0, 0.0}), vec(l2, {0.5, 0.5}), vec(l2, {1.0, 1.0})}),
                 true, 5.0});

  // 0 on [0, 2], 1 on (2, 3]: nonspreading, but |T2 - T2.5| = 1 > 0.5.
  std::vector<Vector> points;
  std::vector<Vector> images;
  for (auto [x, tx] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {2.5, 1.0}, {3.0, 1.0}}) {
    points.push_back(vec(line, {x}));
    images.push_back(vec(line, {tx}));
  }
  zoo.push_back({"nonspreading-table",
                 Mapping::table(ConvexDomain::point_set(line, points), images, {vec(line, {0.0})}),
                 false});
  return zoo;
}

ZooEntry doubling_control() {
  const SpaceSpec line(1, 2.0);
  return {"doubling-control",
          Mapping::scaling(ConvexDomain::whole_space(line), 2.0, {Vector::zero(line)}), false};
}

ZooEntry translation_control() {
  const SpaceSpec line(1, 2.0);
  return {"translation-control",
          Mapping::affine(ConvexDomain::whole_space(line), {{1.0}}, {1.0}), false};
}

}  // namespace sgh
