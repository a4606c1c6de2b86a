#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgh/banach_space.hpp"
#include "sgh/mappings.hpp"

namespace sgh {

enum class Scheme { picard, mann, ishikawa };
const char* to_string(Scheme scheme);

/// Which weight sequence a schedule drives.
///   lambda: inner weight of the two-step scheme  y_n = (1-lambda_n) x_n + lambda_n T x_n
///   gamma:  outer weight                         x_{n+1} = (1-gamma_n) x_n + gamma_n T y_n
///   alpha:  Mann weight                          x_{n+1} = alpha_n x_n + (1-alpha_n) T x_n
enum class ScheduleRole { lambda, gamma, alpha };
const char* to_string(ScheduleRole role);

/// A weight sequence (w_n), n = 1, 2, ..., from a closed family whose
/// limiting behaviour is known in closed form.
class Schedule {
 public:
  enum class Family { constant, harmonic_offset, table };

  /// Properties derived from the family parameters, never from a finite prefix.
  struct Flags {
    bool in_unit_interval = false;
    double infimum = 0.0;
    double supremum = 0.0;
    /// The infimum, when it is a positive lower bound.
    std::optional<double> bounded_below_by;
    /// liminf w_n (1 - w_n) > 0.
    bool liminf_positive_product = false;
  };

  /// w_n = c.
  static Schedule constant(double c);
  /// w_n = a + b / (n + 1).
  static Schedule harmonic_offset(double a, double b);
  /// w_n = values[n-1], repeating the last value afterwards. Throws ConfigError when empty.
  static Schedule table(std::vector<double> values);

  /// n >= 1.
  double operator()(std::size_t n) const;
  Family family() const { return family_; }
  const std::vector<double>& parameters() const { return params_; }
  Flags flags() const;
  std::string describe() const;

 private:
  Schedule(Family family, std::vector<double> params);
  Family family_;
  std::vector<double> params_;
};

struct ConditionVerdict {
  std::string condition;
  bool holds;
};

/// Analytic checks of the hypotheses each role carries in the convergence theorem:
///   lambda: 0 <= lambda_n <= 1 and liminf lambda_n (1 - lambda_n) > 0
///   gamma:  0 < a <= gamma_n <= 1 for some a
///   alpha:  0 <= alpha_n <= 1
std::vector<ConditionVerdict> validate_schedule(const Schedule& schedule, ScheduleRole role);

bool all_hold(const std::vector<ConditionVerdict>& verdicts);

/// alpha x + (1 - alpha) T x. Throws PreconditionError unless 0 <= alpha <= 1.
Vector mann_step(const Mapping& mapping, const Vector& x, double alpha);

struct IshikawaStep {
  Vector y;
  Vector next;
};

/// y = (1 - lambda) x + lambda T x,  next = (1 - gamma) x + gamma T y.
/// Throws PreconditionError unless 0 <= lambda <= 1 and 0 < gamma <= 1, and
/// DomainError when y leaves the domain by more than 1e-12.
IshikawaStep ishikawa_step(const Mapping& mapping, const Vector& x, double lambda, double gamma);

struct Schedules {
  std::optional<Schedule> lambda;
  std::optional<Schedule> gamma;
  std::optional<Schedule> alpha;
};

struct StopRule {
  double residual_tol = 1e-10;
  std::size_t max_iter = 10000;
};

enum class StopReason { residual_tolerance, max_iterations, domain_exit };
const char* to_string(StopReason reason);

/// Record of one run. Index k of every per-iterate vector refers to x_{k+1};
/// per-step vectors (auxiliary, weights) have one entry per step.
struct IterationTrace {
  Scheme scheme = Scheme::picard;
  Schedules schedules;
  StopRule stop;
  std::vector<Vector> iterates;
  std::vector<Vector> auxiliary;
  std::vector<double> lambdas;
  std::vector<double> gammas;
  std::vector<double> alphas;
  std::vector<double> residuals;
  std::vector<Vector> fixed_points;
  /// fixed_point_distances[j][k] = ||x_{k+1} - fixed_points[j]||.
  std::vector<std::vector<double>> fixed_point_distances;
  StopReason stop_reason = StopReason::max_iterations;

  std::size_t steps() const { return iterates.empty() ? 0 : iterates.size() - 1; }
  double final_residual() const { return residuals.back(); }
  const Vector& last() const { return iterates.back(); }
};

/// Runs the scheme from x0 = x_1 until ||x_n - T x_n|| <= residual_tol or
/// max_iter steps have been taken. Distances to the mapping's declared fixed
/// points are recorded. A step that leaves a bounded domain by at most 1e-12
/// is snapped back; a larger exit ends the run with StopReason::domain_exit.
/// Throws ConfigError when the scheme lacks its schedules and DomainError
/// when x0 is outside the domain.
IterationTrace iterate(const Mapping& mapping, const Vector& x0, Scheme scheme,
                       const Schedules& schedules, const StopRule& stop = {});

/// Throws PreconditionError unless ||Tq - q|| <= tol.
void require_fixed_point(const Mapping& mapping, const Vector& q, double tol = 1e-12);

struct FejerReport {
  bool passed = true;
  /// Step n (1-based) with the largest increase ||x_{n+1}-q|| - ||x_n-q||.
  std::optional<std::size_t> worst_step;
  double worst_increase = 0.0;
  std::size_t steps_checked = 0;
};

/// Passes iff ||x_{n+1} - q|| <= ||x_n - q|| + slack for every recorded step.
FejerReport fejer_check(const IterationTrace& trace, const Vector& q, double slack);

enum class DecayVerdict { pass, violated, hypothesis_failed };
const char* to_string(DecayVerdict verdict);

struct ResidualDecayReport {
  DecayVerdict verdict = DecayVerdict::pass;
  /// Schedule hypotheses that failed (empty when all hold).
  std::vector<std::string> failed_hypotheses;
  /// Largest a lambda_n (1-lambda_n) g(r_n) - (d_n^2 - d_{n+1}^2) over the steps.
  double worst_excess = 0.0;
  std::optional<std::size_t> worst_step;
  double lower_bound_a = 0.0;
  bool per_step_inequality = true;
  bool final_below_tolerance = false;
};

/// Checks, at every step of an Ishikawa trace,
///   a lambda_n (1 - lambda_n) g(||x_n - T x_n||) <= ||x_n - q||^2 - ||x_{n+1} - q||^2 + slack
/// with a the analytic lower bound of the gamma schedule, and that the final
/// residual met the stop tolerance. A schedule outside the theorem's
/// hypotheses yields hypothesis_failed instead of violated.
/// Throws PreconditionError for non-Ishikawa traces.
ResidualDecayReport residual_decay_check(const IterationTrace& trace, const Modulus& g,
                                         const Vector& q, double slack = 1e-9);

/// Header `n,x_0,...,x_{d-1},residual,dist_0,...`; n starts at 1; numbers
/// use 17 significant digits.
void write_trace_csv(const IterationTrace& trace, std::ostream& out);

/// printf("%.17g").
std::string format_number(double value);

}  // namespace sgh
