#include "sgh/hybrid_class.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgh/errors.hpp"
#include "sgh/lp.hpp"

namespace sgh {

void SghParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma) ||
      !std::isfinite(delta)) {
    throw ConfigError("SGH parameters must be finite");
  }
}

ConditionReport validate_conditions(const SghParams& params) {
  params.validate();
  ConditionReport report;
  report.alpha_2beta_gamma = params.alpha + 2.0 * params.beta + params.gamma;
  report.alpha_beta = params.alpha + params.beta;
  report.c1 = report.alpha_2beta_gamma >= 0.0;
  report.c2 = report.alpha_beta > 0.0;
  report.c3 = params.beta <= 0.0;
  report.c4 = params.delta >= 0.0;
  if (report.c2) report.contraction_ratio = -(params.beta + params.gamma) / report.alpha_beta;
  return report;
}

SghParams named_class(NamedClass name) {
  switch (name) {
    case NamedClass::nonexpansive: return {1.0, 0.0, -1.0, 0.0};
    case NamedClass::nonspreading: return {2.0, -1.0, 0.0, 0.0};
    case NamedClass::hybrid: return {3.0, -1.0, -1.0, 0.0};
  }
  throw ConfigError("unknown named class");
}

SghParams named_class(std::string_view name) {
  for (NamedClass c : kNamedClasses) {
    if (name == to_string(c)) return named_class(c);
  }
  throw ConfigError("unknown named class '" + std::string(name) + "'");
}

const char* to_string(NamedClass name) {
  switch (name) {
    case NamedClass::nonexpansive: return "nonexpansive";
    case NamedClass::nonspreading: return "nonspreading";
    case NamedClass::hybrid: return "hybrid";
  }
  return "?";
}

PairTerms pair_terms(const Mapping& mapping, const Vector& x, const Vector& y) {
  const Vector tx = mapping(x);
  const Vector ty = mapping(y);
  PairTerms terms;
  terms.image = distance_squared(tx, ty);
  terms.cross = distance_squared(x, ty) + distance_squared(tx, y);
  terms.source = distance_squared(x, y);
  terms.moves = distance_squared(x, tx) + distance_squared(y, ty);
  return terms;
}

double sgh_residual(const Mapping& mapping, const SghParams& params, const Vector& x,
                    const Vector& y) {
  return pair_terms(mapping, x, y).residual(params);
}

std::vector<std::pair<Vector, Vector>> membership_pairs(const Mapping& mapping,
                                                        const SamplePlan& plan) {
  auto pairs = sample_pairs(mapping.domain(), plan);
  if (!mapping.declared_fixed_points().empty() && !mapping.domain().as_point_set()) {
    SamplePlan anchored = plan;
    anchored.seed = derive_seed(plan.seed, 1);
    anchored.count = std::max<std::size_t>(1, plan.count / 10);
    const auto points = sample_points(mapping.domain(), anchored);
    for (const auto& q : mapping.declared_fixed_points()) {
      for (const auto& y : points) pairs.emplace_back(q, y);
    }
  }
  return pairs;
}

MembershipReport check_membership(const Mapping& mapping, const SghParams& params,
                                  const SamplePlan& plan, double tol,
                                  std::vector<PairResidual>* verbose) {
  params.validate();
  const auto pairs = membership_pairs(mapping, plan);
  if (pairs.empty()) throw ConfigError("membership check needs at least one sample pair");
  MembershipReport report;
  report.tolerance = tol;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pairs) {
    const double r = sgh_residual(mapping, params, x, y);
    if (verbose) verbose->push_back({x, y, r});
    if (r > report.max_violation) {
      report.max_violation = r;
      report.witness = std::make_pair(x, y);
    }
  }
  report.pairs_checked = pairs.size();
  report.member = report.max_violation <= tol;
  return report;
}

// ---------------------------------------------------------------------------
// Cone fitting
//
// Unknowns z = (alpha, gamma, delta, radius) with beta = 1 - alpha. The LP
// works in shifted variables z - lower >= 0 and maximises the radius of a
// ball inside the feasible polytope (Chebyshev centre).

namespace {

constexpr double kRowZero = 1e-14;

void push_normalized(std::vector<ConeConstraint>& out, std::string label, double a_alpha,
                     double a_gamma, double a_delta, double rhs) {
  const double length = std::sqrt(a_alpha * a_alpha + a_gamma * a_gamma + a_delta * a_delta);
  out.push_back({std::move(label),
                 {a_alpha / length, a_gamma / length, a_delta / length, 1.0},
                 rhs / length});
}

}  // namespace

ConeFit fit_sgh_cone(const Mapping& mapping, const std::vector<std::pair<Vector, Vector>>& pairs,
                     const ConeFitOptions& options) {
  if (pairs.empty()) throw ConfigError("cone fitting needs at least one sample pair");
  if (!(options.box > 1.0)) throw ConfigError("cone fitting box must exceed 1");
  const double box = options.box;

  ConeFit fit;
  fit.pairs = pairs.size();

  std::vector<ConeConstraint> constraints;
  constraints.reserve(pairs.size() + 8);
  std::optional<ConeConstraint> contradiction;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const PairTerms t = pair_terms(mapping, pairs[k].first, pairs[k].second);
    // alpha*image + (1 - alpha)*cross + gamma*source + delta*moves <= 0
    const double a_alpha = t.image - t.cross;
    const double rhs = -t.cross;
    const double scale = std::max({1.0, std::abs(t.image), std::abs(t.cross), std::abs(t.source),
                                   std::abs(t.moves)});
    const double length = std::sqrt(a_alpha * a_alpha + t.source * t.source + t.moves * t.moves);
    const std::string label = "pair[" + std::to_string(k) + "]";
    if (length <= kRowZero * scale) {
      if (rhs < -kRowZero * scale && !contradiction) {
        contradiction = ConeConstraint{label, {0.0, 0.0, 0.0, 0.0}, rhs};
      }
      continue;
    }
    push_normalized(constraints, label, a_alpha, t.source, t.moves, rhs);
  }

  // alpha and beta = 1 - alpha both in [-box, box].
  const double alpha_lo = 1.0 - box;
  push_normalized(constraints, "alpha<=box", 1.0, 0.0, 0.0, box);
  push_normalized(constraints, "beta<=box", -1.0, 0.0, 0.0, box - 1.0);
  push_normalized(constraints, "gamma>=-box", 0.0, -1.0, 0.0, box);
  push_normalized(constraints, "gamma<=box", 0.0, 1.0, 0.0, box);
  push_normalized(constraints, "delta>=0", 0.0, 0.0, -1.0, 0.0);
  push_normalized(constraints, "delta<=box", 0.0, 0.0, 1.0, box);
  // alpha + 2(1 - alpha) + gamma >= 0  <=>  alpha - gamma <= 2
  if (options.impose_c1) push_normalized(constraints, "c1", 1.0, -1.0, 0.0, 2.0);
  // 1 - alpha <= 0  <=>  -alpha <= -1
  if (options.impose_c3) push_normalized(constraints, "c3", -1.0, 0.0, 0.0, -1.0);

  const std::array<double, 4> lower = {alpha_lo, -box, 0.0, 0.0};

  if (contradiction) {
    // 0 <= rhs < 0 on its own.
    InfeasibilityCertificate cert;
    cert.constraints.push_back(*contradiction);
    cert.multipliers.push_back(1.0);
    cert.lower = lower;
    cert.value = contradiction->rhs;
    cert.verified = true;
    fit.certificate = std::move(cert);
    return fit;
  }

  lp::Problem problem;
  problem.c = {0.0, 0.0, 0.0, 1.0};
  for (const auto& con : constraints) {
    double shift = 0.0;
    for (std::size_t j = 0; j < 4; ++j) shift += con.row[j] * lower[j];
    problem.a.push_back({con.row.begin(), con.row.end()});
    problem.b.push_back(con.rhs - shift);
  }
  const lp::Solution solution = lp::solve(problem);

  if (solution.status == lp::Status::unbounded) {
    throw SolverError("cone LP reported unbounded despite the bounding box");
  }
  if (solution.status == lp::Status::infeasible) {
    InfeasibilityCertificate cert;
    cert.lower = lower;
    std::array<double, 4> combined = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      const double y = solution.farkas[i];
      if (y <= 0.0) continue;
      cert.constraints.push_back(constraints[i]);
      cert.multipliers.push_back(y);
      cert.value += y * problem.b[i];
      for (std::size_t j = 0; j < 4; ++j) combined[j] += y * constraints[i].row[j];
    }
    cert.verified = cert.value < 0.0;
    for (double c : combined) cert.verified = cert.verified && c >= -1e-9;
    fit.certificate = std::move(cert);
    return fit;
  }

  const double alpha = solution.x[0] + lower[0];
  const double gamma = solution.x[1] + lower[1];
  const double delta = std::max(0.0, solution.x[2] + lower[2]);
  fit.feasible = true;
  fit.params = SghParams{alpha, 1.0 - alpha, gamma, delta};
  fit.chebyshev_radius = solution.x[3];
  return fit;
}

}  // namespace sgh
