#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgh/hybrid_class.hpp"
#include "sgh/iteration.hpp"
#include "sgh/mappings.hpp"

namespace sgh {

struct QuasiNeReport {
  /// max over (q, y) of ||q - Ty|| - ||q - y||.
  double max_excess = 0.0;
  std::optional<std::pair<Vector, Vector>> witness;
  std::size_t pairs_checked = 0;
  bool passed = false;
};

/// Samples y from the domain and compares ||q - Ty|| with ||q - y|| for every
/// given fixed point q. Throws PreconditionError when `fixed_points` is empty
/// or some q has ||Tq - q|| > 1e-12.
QuasiNeReport check_quasi_nonexpansive(const Mapping& mapping,
                                       const std::vector<Vector>& fixed_points,
                                       const SamplePlan& plan, double tol = 1e-9);

/// (zeta + 2 eta, -eta, -zeta, 0): every firmly nonexpansive map belongs to
/// this two-parameter family. Throws PreconditionError for negative inputs or
/// zeta = eta = 0.
SghParams firmly_ne_embedding_params(double zeta, double eta);

/// (2 zeta + eta, -zeta, -eta, 0), the same family with the roles swapped.
SghParams firmly_ne_embedding_params_swapped(double zeta, double eta);

struct FirmlyNeReport {
  /// max over pairs of ||Tx - Ty||^2 - <x - y, J(Tx - Ty)>.
  double max_excess = 0.0;
  std::optional<std::pair<Vector, Vector>> witness;
  std::size_t pairs_checked = 0;
  bool passed = false;
};

FirmlyNeReport check_firmly_nonexpansive(const Mapping& mapping, const SamplePlan& plan,
                                         double tol = 1e-9);

enum class ProbeVerdict { pass, fail, inconclusive };
const char* to_string(ProbeVerdict verdict);

struct ProbeReport {
  std::string probe;
  ProbeVerdict verdict = ProbeVerdict::inconclusive;
  std::string detail;
  /// Residuals ||x_n - T x_n|| along the probed sequence.
  std::vector<double> residuals;
  std::optional<Vector> limit_candidate;
  double candidate_residual = 0.0;
  /// Orbit probe only.
  double orbit_sup = 0.0;
  std::size_t steps = 0;
  bool bounded = false;
};

struct OrbitProbeOptions {
  /// Distances are measured from this point (the origin when unset).
  std::optional<Vector> center;
  /// When the orbit stays bounded, also run Ishikawa iterates with
  /// lambda = gamma = 1/2 from x0 and report their best point as candidate.
  bool ishikawa_candidate = true;
};

/// Follows the Picard orbit T^n x0 for n <= horizon and reports whether
/// ||T^n x0 - center|| stays <= bound. A bounded orbit comes with the
/// lowest-residual point seen as a fixed-point candidate. Leaving the domain
/// gives an inconclusive verdict.
ProbeReport orbit_boundedness_probe(const Mapping& mapping, const Vector& x0, std::size_t horizon,
                                    double bound, const OrbitProbeOptions& options = {});

/// A sequence together with its recorded limit.
struct GeneratedSequence {
  std::vector<Vector> points;
  std::optional<Vector> limit;
};

using SequenceGenerator = std::function<GeneratedSequence(const Mapping&)>;

/// Ishikawa iterates of the mapping itself; the limit is the last iterate.
SequenceGenerator ishikawa_generator(Vector x0, Schedules schedules, StopRule stop = {});

/// If x_n -> u and ||x_n - T x_n|| -> 0 then u is a fixed point.
///
/// The antecedent is read numerically: the final residual and the distance of
/// the last point to u must both be <= tol; otherwise the verdict is
/// inconclusive. The conclusion passes when ||Tu - u|| <= 10 tol.
ProbeReport demiclosedness_probe(const Mapping& mapping, const SequenceGenerator& generator,
                                 double tol);

}  // namespace sgh
