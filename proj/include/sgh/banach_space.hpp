#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sgh/random.hpp"

namespace sgh {

/// Finite-dimensional real l^p space, 1 < p < infinity.
///
/// Every constructible instance is uniformly convex and satisfies Opial's
/// condition (finite dimension), so both flags are constant.
class SpaceSpec {
 public:
  /// Throws ConfigError unless n >= 1 and 1 < p < infinity.
  SpaceSpec(std::size_t n, double p);

  std::size_t n() const { return n_; }
  double p() const { return p_; }
  /// Conjugate exponent q with 1/p + 1/q = 1.
  double q() const { return p_ / (p_ - 1.0); }
  bool is_hilbert() const { return p_ == 2.0; }
  bool opial() const { return true; }
  bool uniformly_convex() const { return true; }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  std::size_t n_;
  double p_;
};

/// A point of an l^p space.
class Vector {
 public:
  /// Throws DimensionError on length mismatch and ConfigError on non-finite entries.
  Vector(SpaceSpec space, std::vector<double> coords);

  static Vector zero(SpaceSpec space);

  const SpaceSpec& space() const { return space_; }
  std::size_t size() const { return coords_.size(); }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double scale);

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  SpaceSpec space_;
  std::vector<double> coords_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator*(double scale, Vector v);
Vector operator-(Vector v);

/// t*x + (1-t)*y.
Vector convex_combination(double t, const Vector& x, const Vector& y);

/// A functional on an l^p space, represented by its l^q coefficients.
class DualVector {
 public:
  DualVector(SpaceSpec space, std::vector<double> coords);

  const SpaceSpec& space() const { return space_; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

 private:
  SpaceSpec space_;
  std::vector<double> coords_;
};

/// Throws DimensionError when the two spaces differ.
void require_same_space(const SpaceSpec& a, const SpaceSpec& b);

double norm(const Vector& x);
/// ||x||^2, computed without a square root when p = 2.
double norm_squared(const Vector& x);
double distance(const Vector& x, const Vector& y);
double distance_squared(const Vector& x, const Vector& y);

/// l^q norm of the coefficients, which is the operator norm of the functional.
double dual_norm(const DualVector& f);

/// <x, f>.
double pairing(const Vector& x, const DualVector& f);

/// Normalized duality map of l^p:
///   (Jx)_i = ||x||^{2-p} |x_i|^{p-1} sign(x_i),  J0 = 0.
/// Single-valued because l^p is smooth for 1 < p < infinity.
DualVector duality_map(const Vector& x);

/// ||x||^2 - ||y||^2 - 2 <x - y, Jy>; nonnegative in every Banach space.
double duality_gap(const Vector& x, const Vector& y);

/// A modulus function g : [0, inf) -> [0, inf) with g(0) = 0.
using Modulus = std::function<double(double)>;

/// g(s) = s^2, the exact modulus of a Hilbert space.
Modulus hilbert_modulus();

/// t||x||^2 + (1-t)||y||^2 - t(1-t) g(||x-y||) - ||tx + (1-t)y||^2.
/// Nonnegative when g is a valid uniform-convexity modulus on a ball holding x and y.
/// Throws PreconditionError when t is outside [0, 1].
double xu_gap(const Vector& x, const Vector& y, double t, const Modulus& g);

/// Nondecreasing piecewise-linear function through (0, 0).
///
/// Beyond the last node the final segment is extended linearly.
class PiecewiseLinear {
 public:
  struct Node {
    double s;
    double value;
  };

  /// Nodes must start at s = 0 with value 0 and have strictly increasing s.
  explicit PiecewiseLinear(std::vector<Node> nodes);

  double operator()(double s) const;
  const std::vector<Node>& nodes() const { return nodes_; }

  bool is_nondecreasing() const;
  /// Slopes between consecutive nodes are nondecreasing (up to `tol`).
  bool is_convex(double tol = 0.0) const;

 private:
  std::vector<Node> nodes_;
};

/// Sampling plan for fitting a modulus.
struct ModulusFitPlan {
  std::uint64_t seed = 1;
  /// Number of (x, y, t) draws.
  std::size_t samples = 10000;
  /// Final minorant is scaled by this factor in (0, 1]; values < 1 leave
  /// headroom for configurations the training sample missed.
  double safety = 0.5;
};

/// Fits a modulus for the ball of radius r in `space`.
///
/// Samples (x, y, t) with ||x||, ||y|| <= r and records the convexity ratio
///   (t||x||^2 + (1-t)||y||^2 - ||tx + (1-t)y||^2) / (t(1-t))
/// against s = ||x - y||, together with its t -> 0 and t -> 1 limits. The
/// result is the greatest convex minorant of that point cloud through the
/// origin, scaled by plan.safety. Throws ConfigError for r <= 0, zero samples
/// or a safety factor outside (0, 1].
PiecewiseLinear estimate_g(const SpaceSpec& space, double r, const ModulusFitPlan& plan);

/// Point of the closed l^p ball of radius r about the origin. Half of the
/// draws land on the sphere, where convexity gaps tend to be smallest.
Vector sample_ball(const SpaceSpec& space, double r, Rng& rng);

}  // namespace sgh
