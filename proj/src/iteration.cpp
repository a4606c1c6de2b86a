#include "sgh/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "sgh/errors.hpp"

namespace sgh {

namespace {

constexpr double kSnapTol = 1e-12;

Vector snap_or_throw(const ConvexDomain& domain, const Vector& x) {
  auto snapped = domain.snap(x, kSnapTol);
  if (!snapped) throw DomainError("iterate left the domain");
  return *snapped;
}

}  // namespace

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::picard: return "picard";
    case Scheme::mann: return "mann";
    case Scheme::ishikawa: return "ishikawa";
  }
  return "?";
}

const char* to_string(ScheduleRole role) {
  switch (role) {
    case ScheduleRole::lambda: return "lambda";
    case ScheduleRole::gamma: return "gamma";
    case ScheduleRole::alpha: return "alpha";
  }
  return "?";
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::residual_tolerance: return "residual-tolerance";
    case StopReason::max_iterations: return "max-iterations";
    case StopReason::domain_exit: return "domain-exit";
  }
  return "?";
}

const char* to_string(DecayVerdict verdict) {
  switch (verdict) {
    case DecayVerdict::pass: return "pass";
    case DecayVerdict::violated: return "violated";
    case DecayVerdict::hypothesis_failed: return "hypothesis-failed";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Schedule

Schedule::Schedule(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
  for (double v : params_) {
    if (!std::isfinite(v)) throw ConfigError("schedule parameters must be finite");
  }
}

Schedule Schedule::constant(double c) { return Schedule(Family::constant, {c}); }

Schedule Schedule::harmonic_offset(double a, double b) {
  return Schedule(Family::harmonic_offset, {a, b});
}

Schedule Schedule::table(std::vector<double> values) {
  if (values.empty()) throw ConfigError("table schedule needs at least one value");
  return Schedule(Family::table, std::move(values));
}

double Schedule::operator()(std::size_t n) const {
  switch (family_) {
    case Family::constant: return params_[0];
    case Family::harmonic_offset: return params_[0] + params_[1] / static_cast<double>(n + 1);
    case Family::table: return params_[std::min(n == 0 ? 0 : n - 1, params_.size() - 1)];
  }
  return 0.0;
}

Schedule::Flags Schedule::flags() const {
  Flags f;
  double limit = 0.0;
  switch (family_) {
    case Family::constant:
      f.infimum = f.supremum = limit = params_[0];
      break;
    case Family::harmonic_offset: {
      // Monotone in n >= 1; first term a + b/2, limit a.
      const double first = params_[0] + params_[1] / 2.0;
      limit = params_[0];
      f.infimum = std::min(first, limit);
      f.supremum = std::max(first, limit);
      break;
    }
    case Family::table:
      f.infimum = *std::min_element(params_.begin(), params_.end());
      f.supremum = *std::max_element(params_.begin(), params_.end());
      limit = params_.back();
      break;
  }
  f.in_unit_interval = f.infimum >= 0.0 && f.supremum <= 1.0;
  if (f.infimum > 0.0) f.bounded_below_by = f.infimum;
  // Every family converges, so the liminf of w(1-w) is limit*(1-limit).
  f.liminf_positive_product = limit > 0.0 && limit < 1.0;
  return f;
}

std::string Schedule::describe() const {
  std::ostringstream out;
  switch (family_) {
    case Family::constant: out << "constant(" << params_[0] << ")"; break;
    case Family::harmonic_offset:
      out << "harmonic-offset(" << params_[0] << " + " << params_[1] << "/(n+1))";
      break;
    case Family::table: out << "table[" << params_.size() << "]"; break;
  }
  return out.str();
}

std::vector<ConditionVerdict> validate_schedule(const Schedule& schedule, ScheduleRole role) {
  const auto f = schedule.flags();
  switch (role) {
    case ScheduleRole::lambda:
      return {{"0 <= lambda_n <= 1", f.in_unit_interval},
              {"liminf lambda_n(1-lambda_n) > 0", f.liminf_positive_product}};
    case ScheduleRole::gamma:
      return {{"0 < a <= gamma_n <= 1", f.in_unit_interval && f.bounded_below_by.has_value()}};
    case ScheduleRole::alpha:
      return {{"0 <= alpha_n <= 1", f.in_unit_interval}};
  }
  return {};
}

bool all_hold(const std::vector<ConditionVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.holds; });
}

// ---------------------------------------------------------------------------
// Steps

Vector mann_step(const Mapping& mapping, const Vector& x, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw PreconditionError("Mann weight must lie in [0, 1]");
  return snap_or_throw(mapping.domain(), convex_combination(alpha, x, mapping(x)));
}

IshikawaStep ishikawa_step(const Mapping& mapping, const Vector& x, double lambda, double gamma) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw PreconditionError("lambda_n must lie in [0, 1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw PreconditionError("gamma_n must lie in (0, 1]");
  Vector y = snap_or_throw(mapping.domain(), convex_combination(1.0 - lambda, x, mapping(x)));
  Vector next = snap_or_throw(mapping.domain(), convex_combination(1.0 - gamma, x, mapping(y)));
  return {std::move(y), std::move(next)};
}

// ---------------------------------------------------------------------------
// Driver

IterationTrace iterate(const Mapping& mapping, const Vector& x0, Scheme scheme,
                       const Schedules& schedules, const StopRule& stop) {
  if (scheme == Scheme::ishikawa && (!schedules.lambda || !schedules.gamma)) {
    throw ConfigError("the ishikawa scheme needs lambda and gamma schedules");
  }
  if (scheme == Scheme::mann && !schedules.alpha) {
    throw ConfigError("the mann scheme needs an alpha schedule");
  }
  if (!mapping.domain().contains(x0)) throw DomainError("starting point lies outside the domain");

  IterationTrace trace;
  trace.scheme = scheme;
  trace.schedules = schedules;
  trace.stop = stop;
  trace.fixed_points = mapping.declared_fixed_points();
  trace.fixed_point_distances.resize(trace.fixed_points.size());

  auto record = [&](const Vector& x, double residual) {
    trace.iterates.push_back(x);
    trace.residuals.push_back(residual);
    for (std::size_t j = 0; j < trace.fixed_points.size(); ++j) {
      trace.fixed_point_distances[j].push_back(distance(x, trace.fixed_points[j]));
    }
  };

  Vector x = x0;
  record(x, mapping.residual(x));
  for (std::size_t n = 1;; ++n) {
    if (trace.residuals.back() <= stop.residual_tol) {
      trace.stop_reason = StopReason::residual_tolerance;
      break;
    }
    if (n > stop.max_iter) {
      trace.stop_reason = StopReason::max_iterations;
      break;
    }
    try {
      switch (scheme) {
        case Scheme::picard: x = snap_or_throw(mapping.domain(), mapping(x)); break;
        case Scheme::mann: {
          const double a = (*schedules.alpha)(n);
          trace.alphas.push_back(a);
          x = mann_step(mapping, x, a);
          break;
        }
        case Scheme::ishikawa: {
          const double l = (*schedules.lambda)(n);
          const double g = (*schedules.gamma)(n);
          auto step = ishikawa_step(mapping, x, l, g);
          trace.lambdas.push_back(l);
          trace.gammas.push_back(g);
          trace.auxiliary.push_back(std::move(step.y));
          x = std::move(step.next);
          break;
        }
      }
    } catch (const DomainError&) {
      trace.stop_reason = StopReason::domain_exit;
      break;
    }
    record(x, mapping.residual(x));
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Diagnostics

void require_fixed_point(const Mapping& mapping, const Vector& q, double tol) {
  if (!(mapping.residual(q) <= tol)) {
    std::ostringstream msg;
    msg << "point is not a fixed point: ||Tq - q|| = " << mapping.residual(q);
    throw PreconditionError(msg.str());
  }
}

FejerReport fejer_check(const IterationTrace& trace, const Vector& q, double slack) {
  FejerReport report;
  report.worst_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < trace.iterates.size(); ++k) {
    const double increase = distance(trace.iterates[k + 1], q) - distance(trace.iterates[k], q);
    if (increase > report.worst_increase) {
      report.worst_increase = increase;
      report.worst_step = k + 1;
    }
    if (increase > slack) report.passed = false;
    ++report.steps_checked;
  }
  if (report.steps_checked == 0) report.worst_increase = 0.0;
  return report;
}

ResidualDecayReport residual_decay_check(const IterationTrace& trace, const Modulus& g,
                                         const Vector& q, double slack) {
  if (trace.scheme != Scheme::ishikawa) {
    throw PreconditionError("residual decay check applies to ishikawa traces");
  }
  ResidualDecayReport report;
  for (const auto& [schedule, role] :
       {std::pair{&trace.schedules.lambda, ScheduleRole::lambda},
        std::pair{&trace.schedules.gamma, ScheduleRole::gamma}}) {
    for (const auto& v : validate_schedule(**schedule, role)) {
      if (!v.holds) report.failed_hypotheses.push_back(v.condition);
    }
  }
  const auto gamma_flags = trace.schedules.gamma->flags();
  report.lower_bound_a = gamma_flags.bounded_below_by.value_or(0.0);

  report.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < trace.iterates.size(); ++k) {
    const double lambda = trace.lambdas[k];
    const double lhs = report.lower_bound_a * lambda * (1.0 - lambda) * g(trace.residuals[k]);
    const double d0 = distance_squared(trace.iterates[k], q);
    const double d1 = distance_squared(trace.iterates[k + 1], q);
    const double excess = lhs - (d0 - d1);
    if (excess > report.worst_excess) {
      report.worst_excess = excess;
      report.worst_step = k + 1;
    }
    if (excess > slack) report.per_step_inequality = false;
  }
  if (!report.worst_step) report.worst_excess = 0.0;
  report.final_below_tolerance = trace.final_residual() <= trace.stop.residual_tol;

  if (!report.failed_hypotheses.empty()) {
    report.verdict = DecayVerdict::hypothesis_failed;
  } else if (!report.per_step_inequality || !report.final_below_tolerance) {
    report.verdict = DecayVerdict::violated;
  }
  return report;
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_trace_csv(const IterationTrace& trace, std::ostream& out) {
  const std::size_t dim = trace.iterates.front().size();
  out << "n";
  for (std::size_t i = 0; i < dim; ++i) out << ",x_" << i;
  out << ",residual";
  for (std::size_t j = 0; j < trace.fixed_points.size(); ++j) out << ",dist_" << j;
  out << "\n";
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    out << (k + 1);
    for (double c : trace.iterates[k].coords()) out << ',' << format_number(c);
    out << ',' << format_number(trace.residuals[k]);
    for (const auto& distances : trace.fixed_point_distances) {
      out << ',' << format_number(distances[k]);
    }
    out << "\n";
  }
}

}  // namespace sgh
