#include "sgh/banach_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "sgh/errors.hpp"

namespace sgh {

namespace {

double lp_norm(std::span<const double> coords, double p) {
  if (p == 2.0) {
    double sum = 0.0;
    for (double c : coords) sum += c * c;
    return std::sqrt(sum);
  }
  double scale = 0.0;
  for (double c : coords) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double c : coords) sum += std::pow(std::abs(c) / scale, p);
  return scale * std::pow(sum, 1.0 / p);
}

void check_finite(std::span<const double> coords) {
  for (double c : coords) {
    if (!std::isfinite(c)) throw ConfigError("vector has a non-finite coordinate");
  }
}

void check_length(const SpaceSpec& space, std::size_t length) {
  if (length != space.n()) {
    std::ostringstream msg;
    msg << "expected " << space.n() << " coordinates, got " << length;
    throw DimensionError(msg.str());
  }
}

}  // namespace

SpaceSpec::SpaceSpec(std::size_t n, double p) : n_(n), p_(p) {
  if (n == 0) throw ConfigError("space dimension must be at least 1");
  if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("exponent p must satisfy 1 < p < inf");
}

Vector::Vector(SpaceSpec space, std::vector<double> coords)
    : space_(space), coords_(std::move(coords)) {
  check_length(space_, coords_.size());
  check_finite(coords_);
}

Vector Vector::zero(SpaceSpec space) { return Vector(space, std::vector<double>(space.n(), 0.0)); }

Vector& Vector::operator+=(const Vector& other) {
  require_same_space(space_, other.space_);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_space(space_, other.space_);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Vector& Vector::operator*=(double scale) {
  for (double& c : coords_) c *= scale;
  return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator*(double scale, Vector v) { return v *= scale; }
Vector operator-(Vector v) { return v *= -1.0; }

Vector convex_combination(double t, const Vector& x, const Vector& y) {
  require_same_space(x.space(), y.space());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = t * x[i] + (1.0 - t) * y[i];
  return Vector(x.space(), std::move(out));
}

DualVector::DualVector(SpaceSpec space, std::vector<double> coords)
    : space_(space), coords_(std::move(coords)) {
  check_length(space_, coords_.size());
  check_finite(coords_);
}

void require_same_space(const SpaceSpec& a, const SpaceSpec& b) {
  if (!(a == b)) throw DimensionError("operands belong to different spaces");
}

double norm(const Vector& x) { return lp_norm(x.coords(), x.space().p()); }

double norm_squared(const Vector& x) {
  if (x.space().is_hilbert()) {
    double sum = 0.0;
    for (double c : x.coords()) sum += c * c;
    return sum;
  }
  const double r = norm(x);
  return r * r;
}

double distance(const Vector& x, const Vector& y) { return norm(x - y); }
double distance_squared(const Vector& x, const Vector& y) { return norm_squared(x - y); }

double dual_norm(const DualVector& f) { return lp_norm(f.coords(), f.space().q()); }

double pairing(const Vector& x, const DualVector& f) {
  require_same_space(x.space(), f.space());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * f[i];
  return sum;
}

DualVector duality_map(const Vector& x) {
  const SpaceSpec& space = x.space();
  std::vector<double> out(space.n(), 0.0);
  if (space.is_hilbert()) {
    std::copy(x.coords().begin(), x.coords().end(), out.begin());
    return DualVector(space, std::move(out));
  }
  const double r = norm(x);
  if (r == 0.0) return DualVector(space, std::move(out));
  // ||x||^{2-p} |x_i|^{p-1} = ||x|| (|x_i| / ||x||)^{p-1}, which stays finite for large p.
  const double p = space.p();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double a = std::abs(x[i]);
    if (a == 0.0) continue;
    out[i] = std::copysign(r * std::pow(a / r, p - 1.0), x[i]);
  }
  return DualVector(space, std::move(out));
}

double duality_gap(const Vector& x, const Vector& y) {
  require_same_space(x.space(), y.space());
  return norm_squared(x) - norm_squared(y) - 2.0 * pairing(x - y, duality_map(y));
}

Modulus hilbert_modulus() {
  return [](double s) { return s * s; };
}

double xu_gap(const Vector& x, const Vector& y, double t, const Modulus& g) {
  if (!(t >= 0.0 && t <= 1.0)) throw PreconditionError("xu_gap: t must lie in [0, 1]");
  require_same_space(x.space(), y.space());
  const double mixed = norm_squared(convex_combination(t, x, y));
  return t * norm_squared(x) + (1.0 - t) * norm_squared(y) - t * (1.0 - t) * g(distance(x, y)) -
         mixed;
}

PiecewiseLinear::PiecewiseLinear(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty() || nodes_.front().s != 0.0 || nodes_.front().value != 0.0) {
    throw ConfigError("piecewise-linear modulus must start at (0, 0)");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i].s > nodes_[i - 1].s)) {
      throw ConfigError("piecewise-linear nodes must have strictly increasing abscissae");
    }
  }
}

double PiecewiseLinear::operator()(double s) const {
  if (nodes_.size() == 1) return 0.0;
  if (s <= 0.0) return 0.0;
  auto upper = std::upper_bound(nodes_.begin(), nodes_.end(), s,
                                [](double v, const Node& node) { return v < node.s; });
  if (upper == nodes_.end()) upper = std::prev(nodes_.end());
  const Node& right = *upper;
  const Node& left = *std::prev(upper);
  const double slope = (right.value - left.value) / (right.s - left.s);
  return left.value + slope * (s - left.s);
}

bool PiecewiseLinear::is_nondecreasing() const {
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i].value < nodes_[i - 1].value) return false;
  }
  return true;
}

bool PiecewiseLinear::is_convex(double tol) const {
  double previous = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const double slope =
        (nodes_[i].value - nodes_[i - 1].value) / (nodes_[i].s - nodes_[i - 1].s);
    if (slope < previous - tol) return false;
    previous = slope;
  }
  return true;
}

Vector sample_ball(const SpaceSpec& space, double r, Rng& rng) {
  std::vector<double> v(space.n());
  double length = 0.0;
  do {
    for (double& c : v) c = rng.uniform(-1.0, 1.0);
    length = lp_norm(v, space.p());
  } while (length == 0.0);
  const bool on_sphere = rng.uniform() < 0.5;
  const double radius =
      on_sphere ? r : r * std::pow(rng.uniform(), 1.0 / static_cast<double>(space.n()));
  for (double& c : v) c *= radius / length;
  return Vector(space, std::move(v));
}

namespace {

Vector sparse_ball(const SpaceSpec& space, double r, Rng& rng) {
  std::vector<double> v(space.n(), 0.0);
  const Vector dense = sample_ball(space, r, rng);
  bool any = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (rng.uniform() < 0.5) {
      v[i] = dense[i];
      any = any || dense[i] != 0.0;
    }
  }
  if (!any) v[rng.index(v.size())] = r;
  return Vector(space, std::move(v));
}

Vector clip_to_ball(Vector v, double r) {
  const double length = norm(v);
  if (length > r) v *= r / length;
  return v;
}

// Mode 0: independent ball points. Mode 1: two points on either side of a
// sparse centre, displaced along its zero coordinates, where the convexity
// ratio of l^p (p > 2) is flattest. Mode 2: two sparse points.
std::pair<Vector, Vector> sample_training_pair(const SpaceSpec& space, double r, std::size_t mode, Rng& rng) {
  if (mode == 0) {
    Vector x = sample_ball(space, r, rng);
    return {std::move(x), sample_ball(space, r, rng)};
  }
  Vector center = sparse_ball(space, r, rng);
  if (mode == 2) return {std::move(center), sparse_ball(space, r, rng)};
  if (rng.uniform() < 0.5) center *= r / norm(center);
  const double scale = r * std::pow(10.0, rng.uniform(-3.0, 0.0));
  auto step = [&](double sign) {
    std::vector<double> h(space.n(), 0.0);
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (center[i] == 0.0) h[i] = sign * scale * rng.uniform(0.0, 1.0);
      else if (rng.uniform() < 0.2) h[i] = 0.1 * scale * rng.uniform(-1.0, 1.0);
    }
    return clip_to_ball(center + Vector(space, std::move(h)), r);
  };
  Vector x = step(1.0);
  return {std::move(x), step(-1.0)};
}

}  // namespace

PiecewiseLinear estimate_g(const SpaceSpec& space, double r, const ModulusFitPlan& plan) {
  if (!(r > 0.0)) throw ConfigError("estimate_g: radius must be positive");
  if (plan.samples == 0) throw ConfigError("estimate_g: sampling plan has no samples");
  if (!(plan.safety > 0.0 && plan.safety <= 1.0)) {
    throw ConfigError("estimate_g: safety factor must lie in (0, 1]");
  }

  std::vector<PiecewiseLinear::Node> cloud;
  cloud.reserve(3 * plan.samples + 1);
  cloud.push_back({0.0, 0.0});
  // Distance 2r forces y = -x on the sphere, where the ratio is exactly 4r^2.
  cloud.push_back({2.0 * r, 4.0 * r * r});
  Rng rng(plan.seed);
  for (std::size_t k = 0; k < plan.samples; ++k) {
    const auto [x, y] = sample_training_pair(space, r, k % 3, rng);
    const double t = rng.uniform(1e-3, 1.0 - 1e-3);
    const double s = distance(x, y);
    if (!(s > 0.0)) continue;
    const double interior = (t * norm_squared(x) + (1.0 - t) * norm_squared(y) -
                             norm_squared(convex_combination(t, x, y))) /
                            (t * (1.0 - t));
    cloud.push_back({s, std::max(0.0, interior)});
    cloud.push_back({s, std::max(0.0, duality_gap(x, y))});
    cloud.push_back({s, std::max(0.0, duality_gap(y, x))});
  }

  std::sort(cloud.begin(), cloud.end(), [](const auto& a, const auto& b) {
    return a.s < b.s || (a.s == b.s && a.value < b.value);
  });

  // Lower convex hull (Andrew's monotone chain); the origin is the leftmost point.
  std::vector<PiecewiseLinear::Node> hull;
  for (const auto& point : cloud) {
    if (!hull.empty() && point.s == hull.back().s) continue;
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.s - a.s) * (point.value - a.value) - (b.value - a.value) * (point.s - a.s);
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(point);
  }
  for (auto& node : hull) node.value *= plan.safety;
  return PiecewiseLinear(std::move(hull));
}

}  // namespace sgh
