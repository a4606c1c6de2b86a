#include "sgh/properties.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sgh/errors.hpp"

namespace sgh {

const char* to_string(ProbeVerdict verdict) {
  switch (verdict) {
    case ProbeVerdict::pass: return "pass";
    case ProbeVerdict::fail: return "fail";
    case ProbeVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

QuasiNeReport check_quasi_nonexpansive(const Mapping& mapping,
                                       const std::vector<Vector>& fixed_points,
                                       const SamplePlan& plan, double tol) {
  if (fixed_points.empty()) {
    throw PreconditionError("quasi-nonexpansiveness needs a nonempty fixed-point set");
  }
  for (const auto& q : fixed_points) require_fixed_point(mapping, q);
  const auto points = sample_points(mapping.domain(), plan);

  QuasiNeReport report;
  report.max_excess = -std::numeric_limits<double>::infinity();
  for (const auto& q : fixed_points) {
    for (const auto& y : points) {
      const double excess = distance(q, mapping(y)) - distance(q, y);
      if (excess > report.max_excess) {
        report.max_excess = excess;
        report.witness = std::make_pair(q, y);
      }
      ++report.pairs_checked;
    }
  }
  report.passed = report.max_excess <= tol;
  return report;
}

SghParams firmly_ne_embedding_params(double zeta, double eta) {
  if (!(zeta >= 0.0) || !(eta >= 0.0)) {
    throw PreconditionError("embedding parameters must be nonnegative");
  }
  if (zeta + eta == 0.0) {
    throw PreconditionError("embedding parameters must not both vanish (alpha + beta = zeta + eta)");
  }
  return {zeta + 2.0 * eta, -eta, -zeta, 0.0};
}

SghParams firmly_ne_embedding_params_swapped(double zeta, double eta) {
  return firmly_ne_embedding_params(eta, zeta);
}

FirmlyNeReport check_firmly_nonexpansive(const Mapping& mapping, const SamplePlan& plan,
                                         double tol) {
  const auto pairs = sample_pairs(mapping.domain(), plan);
  FirmlyNeReport report;
  report.max_excess = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pairs) {
    const Vector image_gap = mapping(x) - mapping(y);
    const double excess = norm_squared(image_gap) - pairing(x - y, duality_map(image_gap));
    if (excess > report.max_excess) {
      report.max_excess = excess;
      report.witness = std::make_pair(x, y);
    }
  }
  report.pairs_checked = pairs.size();
  report.passed = report.max_excess <= tol;
  return report;
}

ProbeReport orbit_boundedness_probe(const Mapping& mapping, const Vector& x0, std::size_t horizon,
                                    double bound, const OrbitProbeOptions& options) {
  if (horizon == 0) throw PreconditionError("orbit probe horizon must be at least 1");
  const Vector center = options.center.value_or(Vector::zero(mapping.space()));

  ProbeReport report;
  report.probe = "orbit-boundedness";
  Vector x = x0;
  double best = std::numeric_limits<double>::infinity();
  try {
    for (std::size_t n = 0; n <= horizon; ++n) {
      const Vector tx = mapping(x);
      const double r = distance(x, tx);
      report.residuals.push_back(r);
      report.orbit_sup = std::max(report.orbit_sup, distance(x, center));
      if (r < best) {
        best = r;
        report.limit_candidate = x;
      }
      report.steps = n;
      if (report.orbit_sup > bound) break;
      if (n < horizon) x = tx;
    }
  } catch (const DomainError& e) {
    report.verdict = ProbeVerdict::inconclusive;
    report.detail = std::string("orbit left the domain: ") + e.what();
    return report;
  }
  report.candidate_residual = best;
  report.bounded = report.orbit_sup <= bound;

  std::ostringstream detail;
  detail << "sup ||T^n x0 - c|| = " << report.orbit_sup << " over " << report.steps
         << " steps, bound " << bound;
  if (report.bounded && options.ishikawa_candidate && mapping.domain().is_convex()) {
    Schedules half{Schedule::constant(0.5), Schedule::constant(0.5), std::nullopt};
    const auto trace = iterate(mapping, x0, Scheme::ishikawa, half, StopRule{1e-12, horizon});
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
      if (trace.residuals[k] < report.candidate_residual) {
        report.candidate_residual = trace.residuals[k];
        report.limit_candidate = trace.iterates[k];
      }
    }
  }
  detail << "; best candidate residual " << report.candidate_residual;
  report.detail = detail.str();
  report.verdict = report.bounded ? ProbeVerdict::pass : ProbeVerdict::fail;
  return report;
}

SequenceGenerator ishikawa_generator(Vector x0, Schedules schedules, StopRule stop) {
  return [x0 = std::move(x0), schedules = std::move(schedules), stop](const Mapping& mapping) {
    const auto trace = iterate(mapping, x0, Scheme::ishikawa, schedules, stop);
    GeneratedSequence seq;
    seq.points = trace.iterates;
    seq.limit = trace.last();
    return seq;
  };
}

ProbeReport demiclosedness_probe(const Mapping& mapping, const SequenceGenerator& generator,
                                 double tol) {
  ProbeReport report;
  report.probe = "demiclosedness";
  GeneratedSequence seq;
  try {
    seq = generator(mapping);
  } catch (const DomainError& e) {
    report.detail = std::string("generator left the domain: ") + e.what();
    return report;
  }
  if (seq.points.empty()) {
    report.detail = "generator produced no points";
    return report;
  }
  for (const auto& x : seq.points) report.residuals.push_back(mapping.residual(x));
  const Vector u = seq.limit.value_or(seq.points.back());
  report.limit_candidate = u;
  report.steps = seq.points.size();

  const double final_residual = report.residuals.back();
  const double gap_to_limit = distance(seq.points.back(), u);
  std::ostringstream detail;
  detail << "final residual " << final_residual << ", distance to limit " << gap_to_limit;
  if (!(final_residual <= tol) || !(gap_to_limit <= tol)) {
    detail << "; antecedent not met at tol " << tol;
    report.detail = detail.str();
    report.verdict = ProbeVerdict::inconclusive;
    return report;
  }
  if (!mapping.domain().contains(u, 1e-12)) {
    detail << "; limit lies outside the domain";
    report.detail = detail.str();
    report.verdict = ProbeVerdict::fail;
    return report;
  }
  const Vector inside = *mapping.domain().snap(u, 1e-12);
  report.candidate_residual = mapping.residual(inside);
  detail << "; ||Tu - u|| = " << report.candidate_residual;
  report.detail = detail.str();
  report.verdict = report.candidate_residual <= 10.0 * tol ? ProbeVerdict::pass : ProbeVerdict::fail;
  return report;
}

}  // namespace sgh
