#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sgh/banach_space.hpp"

namespace sgh {

enum class DomainKind { whole_space, box, ball, finite_point_set };

const char* to_string(DomainKind kind);

/// A nonempty closed subset C of an l^p space on which a mapping acts.
///
/// Box, ball and whole space are convex. A finite point set is kept for
/// table-defined mappings; it is convex only when it holds a single point.
class ConvexDomain {
 public:
  struct WholeSpace {};
  struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
  };
  /// Closed ball in the space's own p-norm.
  struct Ball {
    Vector center;
    double radius;
  };
  struct PointSet {
    std::vector<Vector> points;
  };

  static ConvexDomain whole_space(SpaceSpec space);
  /// Throws ConfigError unless lo <= hi componentwise.
  static ConvexDomain box(SpaceSpec space, std::vector<double> lo, std::vector<double> hi);
  /// Throws ConfigError unless radius > 0.
  static ConvexDomain ball(Vector center, double radius);
  /// Throws ConfigError when empty.
  static ConvexDomain point_set(SpaceSpec space, std::vector<Vector> points);

  const SpaceSpec& space() const { return space_; }
  DomainKind kind() const;
  bool is_bounded() const { return kind() != DomainKind::whole_space; }
  bool is_convex() const;

  bool contains(const Vector& x, double tol = 0.0) const;

  /// Pulls a point that left the domain by at most `tol` back onto it
  /// (clamp for boxes, radial scaling for balls, nearest point for point
  /// sets). Returns nullopt when the point is farther out than `tol`.
  std::optional<Vector> snap(const Vector& x, double tol) const;

  /// Index of `x` in a point-set domain, matched exactly.
  std::optional<std::size_t> index_of(const Vector& x) const;

  const Box* as_box() const { return std::get_if<Box>(&shape_); }
  const Ball* as_ball() const { return std::get_if<Ball>(&shape_); }
  const PointSet* as_point_set() const { return std::get_if<PointSet>(&shape_); }

 private:
  using Shape = std::variant<WholeSpace, Box, Ball, PointSet>;
  ConvexDomain(SpaceSpec space, Shape shape) : space_(space), shape_(std::move(shape)) {}

  SpaceSpec space_;
  Shape shape_;
};

/// Euclidean metric projection onto a box or ball of a p = 2 space.
/// Throws ConfigError for p != 2 (the projection need not be firmly
/// nonexpansive there) or for unsupported target kinds.
Vector metric_projection(const ConvexDomain& target, const Vector& x);

enum class MappingKind { identity, constant, scaling, negation, affine, metric_projection, table };

const char* to_string(MappingKind kind);

/// x -> A x + b with A stored row-major.
struct AffineForm {
  std::vector<double> matrix;
  std::vector<double> offset;
};

/// A self-map T of a domain C, drawn from a closed set of analytic kinds.
///
/// Construction verifies the self-map property on 1000 seeded samples of
/// bounded domains (exactly, for point sets) and that every declared fixed
/// point q satisfies ||Tq - q|| <= 1e-12.
class Mapping {
 public:
  static Mapping identity(ConvexDomain domain, std::vector<Vector> fixed_points = {});
  static Mapping constant(ConvexDomain domain, Vector value, std::vector<Vector> fixed_points = {});
  static Mapping scaling(ConvexDomain domain, double factor, std::vector<Vector> fixed_points = {});
  static Mapping negation(ConvexDomain domain, std::vector<Vector> fixed_points = {});
  /// `matrix` is given by rows.
  static Mapping affine(ConvexDomain domain, const std::vector<std::vector<double>>& matrix,
                        std::vector<double> offset, std::vector<Vector> fixed_points = {});
  static Mapping projection(ConvexDomain domain, ConvexDomain target,
                            std::vector<Vector> fixed_points = {});
  /// `images[i]` is the image of the i-th point of a point-set domain.
  static Mapping table(ConvexDomain domain, std::vector<Vector> images,
                       std::vector<Vector> fixed_points = {});

  MappingKind kind() const { return kind_; }
  const ConvexDomain& domain() const { return domain_; }
  const SpaceSpec& space() const { return domain_.space(); }
  const std::vector<Vector>& declared_fixed_points() const { return fixed_points_; }

  /// Throws DomainError when x lies outside the domain.
  Vector operator()(const Vector& x) const;

  /// ||x - Tx||.
  double residual(const Vector& x) const;

  /// Exact affine representation, when the kind has one.
  std::optional<AffineForm> affine_form() const;

  /// Target set of a metric projection.
  const ConvexDomain* projection_target() const { return target_ ? &*target_ : nullptr; }
  const std::vector<Vector>& table_images() const { return images_; }

 private:
  Mapping(MappingKind kind, ConvexDomain domain) : kind_(kind), domain_(std::move(domain)) {}
  Vector apply(const Vector& x) const;
  void finish(std::vector<Vector> fixed_points);

  MappingKind kind_;
  ConvexDomain domain_;
  double factor_ = 1.0;
  std::vector<double> matrix_;
  std::vector<double> offset_;
  std::optional<Vector> value_;
  std::optional<ConvexDomain> target_;
  std::vector<Vector> images_;
  std::vector<Vector> fixed_points_;
};

/// Free-function spelling of T(x).
inline Vector evaluate(const Mapping& mapping, const Vector& x) { return mapping(x); }

/// Seeded sampling of domain points. Whole-space domains are sampled from
/// the cube [-radius, radius]^n.
struct SamplePlan {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  double radius = 10.0;
};

Vector sample_point(const ConvexDomain& domain, double radius, Rng& rng);

/// `plan.count` points; a point-set domain returns all its points.
std::vector<Vector> sample_points(const ConvexDomain& domain, const SamplePlan& plan);

/// `plan.count` pairs; a point-set domain returns every unordered pair
/// (including the diagonal). Throws ConfigError for an empty plan.
std::vector<std::pair<Vector, Vector>> sample_pairs(const ConvexDomain& domain,
                                                    const SamplePlan& plan);

/// Regular grid over [lo, hi] with spacing `step`.
struct GridSpec {
  std::vector<double> lo;
  std::vector<double> hi;
  double step;
};

/// Every grid (or table) point with ||Tx - x|| <= tol, plus the exact fixed
/// point of an affine map whose A - I is nonsingular. Box and ball domains
/// without a grid throw ConfigError, as does a whole-space domain that has
/// no direct solution.
std::vector<Vector> fixed_points_bruteforce(const Mapping& mapping, double tol,
                                            const std::optional<GridSpec>& grid = std::nullopt);

}  // namespace sgh
