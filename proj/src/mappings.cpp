#include "sgh/mappings.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgh/errors.hpp"

namespace sgh {

namespace {

constexpr std::uint64_t kSelfMapSeed = 0x5e1f3a9ULL;
constexpr std::size_t kSelfMapSamples = 1000;
constexpr double kSelfMapTol = 1e-12;
constexpr double kFixedPointTol = 1e-12;

Vector from_coords(const SpaceSpec& space, std::vector<double> coords) {
  return Vector(space, std::move(coords));
}

std::vector<double> to_std(const Vector& v) { return {v.coords().begin(), v.coords().end()}; }

}  // namespace

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::whole_space: return "whole-space";
    case DomainKind::box: return "box";
    case DomainKind::ball: return "ball";
    case DomainKind::finite_point_set: return "finite-point-set";
  }
  return "?";
}

const char* to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::identity: return "identity";
    case MappingKind::constant: return "constant";
    case MappingKind::scaling: return "scaling";
    case MappingKind::negation: return "negation";
    case MappingKind::affine: return "affine";
    case MappingKind::metric_projection: return "metric-projection";
    case MappingKind::table: return "table";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ConvexDomain

ConvexDomain ConvexDomain::whole_space(SpaceSpec space) { return ConvexDomain(space, WholeSpace{}); }

ConvexDomain ConvexDomain::box(SpaceSpec space, std::vector<double> lo, std::vector<double> hi) {
  if (lo.size() != space.n() || hi.size() != space.n()) {
    throw DimensionError("box bounds must have one entry per coordinate");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || lo[i] > hi[i]) {
      throw ConfigError("box bounds must be finite with lo <= hi");
    }
  }
  return ConvexDomain(space, Box{std::move(lo), std::move(hi)});
}

ConvexDomain ConvexDomain::ball(Vector center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("ball radius must be positive");
  const SpaceSpec space = center.space();
  return ConvexDomain(space, Ball{std::move(center), radius});
}

ConvexDomain ConvexDomain::point_set(SpaceSpec space, std::vector<Vector> points) {
  if (points.empty()) throw ConfigError("finite point set must be nonempty");
  for (const auto& p : points) require_same_space(space, p.space());
  return ConvexDomain(space, PointSet{std::move(points)});
}

DomainKind ConvexDomain::kind() const {
  switch (shape_.index()) {
    case 0: return DomainKind::whole_space;
    case 1: return DomainKind::box;
    case 2: return DomainKind::ball;
    default: return DomainKind::finite_point_set;
  }
}

bool ConvexDomain::is_convex() const {
  if (const auto* set = as_point_set()) return set->points.size() == 1;
  return true;
}

bool ConvexDomain::contains(const Vector& x, double tol) const {
  require_same_space(space_, x.space());
  if (const auto* b = as_box()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < b->lo[i] - tol || x[i] > b->hi[i] + tol) return false;
    }
    return true;
  }
  if (const auto* b = as_ball()) return distance(x, b->center) <= b->radius + tol;
  if (const auto* set = as_point_set()) {
    return std::any_of(set->points.begin(), set->points.end(),
                       [&](const Vector& p) { return distance(p, x) <= tol; });
  }
  return true;
}

std::optional<Vector> ConvexDomain::snap(const Vector& x, double tol) const {
  if (!contains(x, tol)) return std::nullopt;
  if (const auto* b = as_box()) {
    std::vector<double> out = to_std(x);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], b->lo[i], b->hi[i]);
    return from_coords(space_, std::move(out));
  }
  if (const auto* b = as_ball()) {
    const double d = distance(x, b->center);
    if (d <= b->radius) return x;
    return b->center + (b->radius / d) * (x - b->center);
  }
  if (const auto* set = as_point_set()) {
    const auto nearest = std::min_element(
        set->points.begin(), set->points.end(),
        [&](const Vector& a, const Vector& b) { return distance(a, x) < distance(b, x); });
    return *nearest;
  }
  return x;
}

std::optional<std::size_t> ConvexDomain::index_of(const Vector& x) const {
  const auto* set = as_point_set();
  if (!set) return std::nullopt;
  for (std::size_t i = 0; i < set->points.size(); ++i) {
    if (set->points[i] == x) return i;
  }
  return std::nullopt;
}

Vector metric_projection(const ConvexDomain& target, const Vector& x) {
  if (!target.space().is_hilbert()) {
    throw ConfigError("metric projection is only supported in p = 2 spaces");
  }
  require_same_space(target.space(), x.space());
  switch (target.kind()) {
    case DomainKind::box:
    case DomainKind::ball: {
      auto projected = target.snap(x, std::numeric_limits<double>::infinity());
      return *projected;
    }
    default:
      throw ConfigError(std::string("metric projection onto a ") + to_string(target.kind()) +
                        " domain is unsupported");
  }
}

// ---------------------------------------------------------------------------
// Mapping

Mapping Mapping::identity(ConvexDomain domain, std::vector<Vector> fixed_points) {
  Mapping m(MappingKind::identity, std::move(domain));
  m.finish(std::move(fixed_points));
  return m;
}

Mapping Mapping::constant(ConvexDomain domain, Vector value, std::vector<Vector> fixed_points) {
  require_same_space(domain.space(), value.space());
  Mapping m(MappingKind::constant, std::move(domain));
  m.value_ = std::move(value);
  m.finish(std::move(fixed_points));
  return m;
}

Mapping Mapping::scaling(ConvexDomain domain, double factor, std::vector<Vector> fixed_points) {
  if (!std::isfinite(factor)) throw ConfigError("scaling factor must be finite");
  Mapping m(MappingKind::scaling, std::move(domain));
  m.factor_ = factor;
  m.finish(std::move(fixed_points));
  return m;
}

Mapping Mapping::negation(ConvexDomain domain, std::vector<Vector> fixed_points) {
  Mapping m(MappingKind::negation, std::move(domain));
  m.factor_ = -1.0;
  m.finish(std::move(fixed_points));
  return m;
}

Mapping Mapping::affine(ConvexDomain domain, const std::vector<std::vector<double>>& matrix,
                        std::vector<double> offset, std::vector<Vector> fixed_points) {
  const std::size_t n = domain.space().n();
  if (matrix.size() != n || offset.size() != n) {
    throw DimensionError("affine map needs an n x n matrix and an n-vector offset");
  }
  Mapping m(MappingKind::affine, std::move(domain));
  for (const auto& row : matrix) {
    if (row.size() != n) throw DimensionError("affine matrix rows must have n entries");
    for (double a : row) {
      if (!std::isfinite(a)) throw ConfigError("affine matrix entries must be finite");
    }
    m.matrix_.insert(m.matrix_.end(), row.begin(), row.end());
  }
  for (double b : offset) {
    if (!std::isfinite(b)) throw ConfigError("affine offset entries must be finite");
  }
  m.offset_ = std::move(offset);
  m.finish(std::move(fixed_points));
  return m;
}

Mapping Mapping::projection(ConvexDomain domain, ConvexDomain target,
                            std::vector<Vector> fixed_points) {
  require_same_space(domain.space(), target.space());
  if (!domain.space().is_hilbert()) {
    throw ConfigError("metric projection is only supported in p = 2 spaces");
  }
  if (target.kind() != DomainKind::box && target.kind() != DomainKind::ball) {
    throw ConfigError("metric projection target must be a box or a ball");
  }
  Mapping m(MappingKind::metric_projection, std::move(domain));
  m.target_ = std::move(target);
  m.finish(std::move(fixed_points));
  return m;
}

Mapping Mapping::table(ConvexDomain domain, std::vector<Vector> images,
                       std::vector<Vector> fixed_points) {
  const auto* set = domain.as_point_set();
  if (!set) throw ConfigError("table mappings require a finite-point-set domain");
  if (images.size() != set->points.size()) {
    throw ConfigError("table must give exactly one image per domain point");
  }
  for (const auto& image : images) require_same_space(domain.space(), image.space());
  Mapping m(MappingKind::table, std::move(domain));
  m.images_ = std::move(images);
  m.finish(std::move(fixed_points));
  return m;
}

void Mapping::finish(std::vector<Vector> fixed_points) {
  // Self-map closure.
  if (const auto* set = domain_.as_point_set()) {
    for (const auto& x : set->points) {
      if (!domain_.index_of(apply(x))) {
        throw ConfigError(std::string(to_string(kind_)) + " mapping is not a self-map of its point set");
      }
    }
  } else if (domain_.is_bounded()) {
    Rng rng(kSelfMapSeed);
    for (std::size_t k = 0; k < kSelfMapSamples; ++k) {
      const Vector x = sample_point(domain_, 0.0, rng);
      if (!domain_.contains(apply(x), kSelfMapTol)) {
        throw ConfigError(std::string(to_string(kind_)) + " mapping is not a self-map of its " +
                          to_string(domain_.kind()) + " domain");
      }
    }
  }
  for (const auto& q : fixed_points) {
    require_same_space(domain_.space(), q.space());
    if (!domain_.contains(q)) throw ConfigError("declared fixed point lies outside the domain");
    const double r = distance(apply(q), q);
    if (!(r <= kFixedPointTol)) {
      std::ostringstream msg;
      msg << "declared fixed point has residual " << r << " > " << kFixedPointTol;
      throw ConfigError(msg.str());
    }
  }
  fixed_points_ = std::move(fixed_points);
}

Vector Mapping::apply(const Vector& x) const {
  switch (kind_) {
    case MappingKind::identity: return x;
    case MappingKind::constant: return *value_;
    case MappingKind::scaling:
    case MappingKind::negation: return factor_ * x;
    case MappingKind::affine: {
      const std::size_t n = x.size();
      std::vector<double> out(offset_);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[i] += matrix_[i * n + j] * x[j];
      }
      return from_coords(x.space(), std::move(out));
    }
    case MappingKind::metric_projection: return metric_projection(*target_, x);
    case MappingKind::table: {
      const auto index = domain_.index_of(x);
      if (!index) throw DomainError("table mapping has no entry for this point");
      return images_[*index];
    }
  }
  throw Error("unknown mapping kind");
}

Vector Mapping::operator()(const Vector& x) const {
  require_same_space(domain_.space(), x.space());
  if (!domain_.contains(x)) throw DomainError("point lies outside the mapping's domain");
  return apply(x);
}

double Mapping::residual(const Vector& x) const { return distance(x, (*this)(x)); }

std::optional<AffineForm> Mapping::affine_form() const {
  const std::size_t n = space().n();
  auto diagonal = [n](double d) {
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] = d;
    return a;
  };
  switch (kind_) {
    case MappingKind::identity: return AffineForm{diagonal(1.0), std::vector<double>(n, 0.0)};
    case MappingKind::constant: return AffineForm{diagonal(0.0), to_std(*value_)};
    case MappingKind::scaling:
    case MappingKind::negation: return AffineForm{diagonal(factor_), std::vector<double>(n, 0.0)};
    case MappingKind::affine: return AffineForm{matrix_, offset_};
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Sampling

Vector sample_point(const ConvexDomain& domain, double radius, Rng& rng) {
  const SpaceSpec& space = domain.space();
  if (const auto* b = domain.as_box()) {
    std::vector<double> out(space.n());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = rng.uniform(b->lo[i], b->hi[i]);
    return from_coords(space, std::move(out));
  }
  if (const auto* b = domain.as_ball()) {
    Vector offset = sample_ball(space, b->radius, rng);
    Vector x = b->center + offset;
    // Sphere draws can land an ulp outside after rounding.
    while (!domain.contains(x)) {
      offset *= 1.0 - 1e-15;
      x = b->center + offset;
    }
    return x;
  }
  if (const auto* set = domain.as_point_set()) return set->points[rng.index(set->points.size())];
  std::vector<double> out(space.n());
  for (double& c : out) c = rng.uniform(-radius, radius);
  return from_coords(space, std::move(out));
}

std::vector<Vector> sample_points(const ConvexDomain& domain, const SamplePlan& plan) {
  if (const auto* set = domain.as_point_set()) return set->points;
  if (plan.count == 0) throw ConfigError("sampling plan must request at least one point");
  Rng rng(plan.seed);
  std::vector<Vector> out;
  out.reserve(plan.count);
  for (std::size_t k = 0; k < plan.count; ++k) out.push_back(sample_point(domain, plan.radius, rng));
  return out;
}

std::vector<std::pair<Vector, Vector>> sample_pairs(const ConvexDomain& domain,
                                                    const SamplePlan& plan) {
  std::vector<std::pair<Vector, Vector>> out;
  if (const auto* set = domain.as_point_set()) {
    for (std::size_t i = 0; i < set->points.size(); ++i) {
      for (std::size_t j = i; j < set->points.size(); ++j) {
        out.emplace_back(set->points[i], set->points[j]);
      }
    }
    return out;
  }
  if (plan.count == 0) throw ConfigError("sampling plan must request at least one pair");
  Rng rng(plan.seed);
  out.reserve(plan.count);
  for (std::size_t k = 0; k < plan.count; ++k) {
    Vector x = sample_point(domain, plan.radius, rng);
    Vector y = sample_point(domain, plan.radius, rng);
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed-point search

std::vector<Vector> fixed_points_bruteforce(const Mapping& mapping, double tol,
                                            const std::optional<GridSpec>& grid) {
  const ConvexDomain& domain = mapping.domain();
  const SpaceSpec& space = mapping.space();
  const std::size_t n = space.n();
  std::vector<Vector> found;
  auto add = [&](Vector v) {
    for (const auto& f : found) {
      if (distance(f, v) <= tol) return;
    }
    found.push_back(std::move(v));
  };

  bool solved = false;
  if (auto form = mapping.affine_form()) {
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
      b(static_cast<Eigen::Index>(i)) = form->offset[i];
      for (std::size_t j = 0; j < n; ++j) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            (i == j ? 1.0 : 0.0) - form->matrix[i * n + j];
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.isInvertible()) {
      // (I - A) x = b
      const Eigen::VectorXd x = lu.solve(b);
      Vector candidate(space, std::vector<double>(x.data(), x.data() + n));
      if (domain.contains(candidate, tol)) add(std::move(candidate));
      solved = true;
    }
  }

  if (const auto* set = domain.as_point_set()) {
    for (const auto& x : set->points) {
      if (mapping.residual(x) <= tol) add(x);
    }
    return found;
  }

  if (!grid) {
    if (solved) return found;
    throw ConfigError(std::string("fixed-point search over a ") + to_string(domain.kind()) +
                      " domain needs a grid");
  }
  if (grid->lo.size() != n || grid->hi.size() != n) throw DimensionError("grid bounds must have n entries");
  if (!(grid->step > 0.0)) throw ConfigError("grid step must be positive");

  std::vector<std::size_t> counts(n);
  double total = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (grid->lo[i] > grid->hi[i]) throw ConfigError("grid bounds must satisfy lo <= hi");
    counts[i] = static_cast<std::size_t>(std::floor((grid->hi[i] - grid->lo[i]) / grid->step + 1e-9)) + 1;
    total *= static_cast<double>(counts[i]);
  }
  if (total > 1e7) throw ConfigError("fixed-point grid is too large");

  std::vector<std::size_t> index(n, 0);
  for (;;) {
    std::vector<double> coords(n);
    for (std::size_t i = 0; i < n; ++i) {
      coords[i] = grid->lo[i] + static_cast<double>(index[i]) * grid->step;
    }
    Vector x(space, std::move(coords));
    if (domain.contains(x) && mapping.residual(x) <= tol) add(std::move(x));
    std::size_t d = 0;
    while (d < n && ++index[d] == counts[d]) index[d++] = 0;
    if (d == n) break;
  }
  return found;
}

}  // namespace sgh
