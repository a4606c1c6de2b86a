#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sgh/mappings.hpp"

namespace sgh {

/// Coefficients (alpha, beta, gamma, delta) of the symmetric generalized
/// hybrid inequality
///
///   alpha ||Tx-Ty||^2 + beta (||x-Ty||^2 + ||Tx-y||^2) + gamma ||x-y||^2
///     + delta (||x-Tx||^2 + ||y-Ty||^2) <= 0   for all x, y in C.
struct SghParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  /// Throws ConfigError on non-finite entries.
  void validate() const;
  SghParams scaled(double c) const { return {c * alpha, c * beta, c * gamma, c * delta}; }

  friend bool operator==(const SghParams&, const SghParams&) = default;
};

/// Parameter conditions used by the quasi-nonexpansiveness, demiclosedness
/// and convergence results:
///   c1: alpha + 2 beta + gamma >= 0
///   c2: alpha + beta > 0
///   c3: beta <= 0
///   c4: delta >= 0
struct ConditionReport {
  bool c1 = false;
  bool c2 = false;
  bool c3 = false;
  bool c4 = false;
  double alpha_2beta_gamma = 0.0;
  double alpha_beta = 0.0;
  /// -(beta + gamma) / (alpha + beta); lies in [0, 1] when c1 and c2 hold.
  std::optional<double> contraction_ratio;

  /// Hypotheses of the quasi-nonexpansiveness result (c1, c2, c4).
  bool quasi_nonexpansive_conditions() const { return c1 && c2 && c4; }
  bool all() const { return c1 && c2 && c3 && c4; }
};

ConditionReport validate_conditions(const SghParams& params);

enum class NamedClass { nonexpansive, nonspreading, hybrid };

/// nonexpansive (1,0,-1,0), nonspreading (2,-1,0,0), hybrid (3,-1,-1,0).
SghParams named_class(NamedClass name);
/// Throws ConfigError for unknown names.
SghParams named_class(std::string_view name);
const char* to_string(NamedClass name);
inline constexpr std::array<NamedClass, 3> kNamedClasses = {
    NamedClass::nonexpansive, NamedClass::nonspreading, NamedClass::hybrid};

/// The six squared distances entering the inequality at a pair (x, y).
struct PairTerms {
  double image = 0.0;   // ||Tx-Ty||^2
  double cross = 0.0;   // ||x-Ty||^2 + ||Tx-y||^2
  double source = 0.0;  // ||x-y||^2
  double moves = 0.0;   // ||x-Tx||^2 + ||y-Ty||^2

  double residual(const SghParams& p) const {
    return p.alpha * image + p.beta * cross + p.gamma * source + p.delta * moves;
  }
};

PairTerms pair_terms(const Mapping& mapping, const Vector& x, const Vector& y);

/// Left-hand side of the inequality; membership means <= 0 for every pair.
double sgh_residual(const Mapping& mapping, const SghParams& params, const Vector& x,
                    const Vector& y);

struct MembershipReport {
  /// Largest residual over the sampled pairs (may be negative).
  double max_violation = 0.0;
  std::optional<std::pair<Vector, Vector>> witness;
  std::size_t pairs_checked = 0;
  double tolerance = 0.0;
  bool member = false;
};

/// Per-pair record for verbose output.
struct PairResidual {
  Vector x;
  Vector y;
  double residual;
};

/// Evaluates the residual on every pair of `sample_pairs(domain, plan)`
/// plus every (declared fixed point, sample point) pair.
MembershipReport check_membership(const Mapping& mapping, const SghParams& params,
                                  const SamplePlan& plan, double tol = 1e-9,
                                  std::vector<PairResidual>* verbose = nullptr);

/// Pairs used by check_membership and fit_sgh_cone for a given plan.
std::vector<std::pair<Vector, Vector>> membership_pairs(const Mapping& mapping,
                                                        const SamplePlan& plan);

enum class Normalization { alpha_plus_beta_eq_1 };

struct ConeFitOptions {
  Normalization normalization = Normalization::alpha_plus_beta_eq_1;
  /// alpha + 2 beta + gamma >= 0.
  bool impose_c1 = false;
  /// beta <= 0.
  bool impose_c3 = false;
  /// Each coordinate restricted to [-box, box].
  double box = 10.0;
};

/// One linear constraint  row . (alpha, gamma, delta, radius) <= rhs  of the
/// Chebyshev-centre LP, after beta = 1 - alpha has been substituted.
struct ConeConstraint {
  std::string label;
  std::array<double, 4> row;
  double rhs;
};

/// Farkas certificate: multipliers y >= 0 on the listed constraints with
/// sum y_i row_i >= 0 componentwise and sum y_i (rhs_i - row_i . lower) < 0,
/// where `lower` bounds the variables from below.
struct InfeasibilityCertificate {
  std::vector<ConeConstraint> constraints;
  std::vector<double> multipliers;
  std::array<double, 4> lower;
  double value = 0.0;
  /// Whether the two inequalities above were confirmed on the returned data.
  bool verified = false;
};

struct ConeFit {
  bool feasible = false;
  std::optional<SghParams> params;
  double chebyshev_radius = 0.0;
  std::optional<InfeasibilityCertificate> certificate;
  std::size_t pairs = 0;
};

/// Finds (alpha, beta, gamma, delta) with alpha + beta = 1, delta >= 0 and a
/// nonpositive residual on every given pair, optionally under c1 and c3,
/// inside the box [-box, box]^4. Returns the Chebyshev centre of that
/// polytope, or a Farkas certificate when it is empty. Throws ConfigError on
/// an empty pair list and SolverError when the LP cannot be solved.
ConeFit fit_sgh_cone(const Mapping& mapping, const std::vector<std::pair<Vector, Vector>>& pairs,
                     const ConeFitOptions& options = {});

}  // namespace sgh
