#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sgh/experiments.hpp"
#include "sgh/hybrid_class.hpp"
#include "sgh/iteration.hpp"
#include "sgh/zoo.hpp"

using namespace sgh;
using nlohmann::json;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const json& checks_of(const CommandResult& r, const std::string& suite) {
  return r.report.at("suites").at(suite).at("checks");
}

bool starts_with(const json& check, const std::string& prefix) {
  return check.at("name").get<std::string>().rfind(prefix, 0) == 0;
}

Outcome criterion_duality_gap() {
  Outcome o;
  const CommandResult r = cmd_verify_theorems("duality-gap");
  o.require(r.exit_code == 0, "suite failed");
  const json& checks = checks_of(r, "duality-gap");
  o.require(checks.size() == 12, "expected 12 spaces");
  double worst = INFINITY;
  for (const json& c : checks) {
    o.require(c.at("pairs") == 10000, c.at("name").get<std::string>() + " pair count");
    worst = std::min(worst, c.at("min_scaled_gap").get<double>());
  }
  o.require(worst >= -1e-10, "scaled gap " + num(worst));
  if (o.passed) o.detail = "min scaled gap " + num(worst) + " over 12 spaces";
  return o;
}

Outcome criterion_uniform_convexity() {
  Outcome o;
  const CommandResult r = cmd_verify_theorems("uniform-convexity");
  o.require(r.exit_code == 0, "suite failed");
  double hilbert = 0.0;
  double fitted = INFINITY;
  std::size_t fitted_spaces = 0;
  for (const json& c : checks_of(r, "uniform-convexity")) {
    o.require(c.at("triples") == 10000, c.at("name").get<std::string>() + " triple count");
    if (starts_with(c, "xu-gap-hilbert")) {
      hilbert = std::max(hilbert, c.at("max_abs_gap").get<double>());
    } else {
      fitted = std::min(fitted, c.at("min_gap").get<double>());
      ++fitted_spaces;
    }
  }
  o.require(hilbert <= 1e-12, "hilbert gap " + num(hilbert));
  o.require(fitted_spaces == 6 && fitted >= -1e-9, "fitted gap " + num(fitted));
  if (o.passed) o.detail = "hilbert |gap| " + num(hilbert) + ", fitted min gap " + num(fitted);
  return o;
}

Outcome criterion_quasi_nonexpansive() {
  Outcome o;
  const CommandResult r = cmd_verify_theorems("quasi-nonexpansive");
  o.require(r.exit_code == 0, "suite failed");
  std::size_t applied = 0;
  double worst = 0.0;
  bool control_rejected = false;
  for (const json& c : checks_of(r, "quasi-nonexpansive")) {
    if (starts_with(c, "negative-control")) control_rejected = !c.at("member").get<bool>();
    if (!c.contains("applies") || !c.at("applies").get<bool>()) continue;
    ++applied;
    worst = std::max(worst, c.at("max_excess").get<double>());
  }
  o.require(applied > 0 && worst <= 1e-9, "max excess " + num(worst));
  o.require(control_rejected, "T(x)=2x accepted");
  if (o.passed) o.detail = std::to_string(applied) + " pairs, max excess " + num(worst) + ", 2x rejected";
  return o;
}

Outcome criterion_firmly_nonexpansive() {
  Outcome o;
  const CommandResult r = cmd_verify_theorems("firmly-nonexpansive");
  o.require(r.exit_code == 0, "suite failed");
  std::size_t embeddings = 0;
  for (const json& c : checks_of(r, "firmly-nonexpansive")) {
    if (!starts_with(c, "embedding")) continue;
    ++embeddings;
    o.require(c.at("member").get<bool>() && c.at("exact_conditions").get<bool>(),
              c.at("name").get<std::string>());
  }
  o.require(embeddings > 0 && embeddings % 15 == 0, "embedding grid incomplete");
  if (o.passed) o.detail = std::to_string(embeddings) + " embedding checks";
  return o;
}

Outcome criterion_orbit_boundedness() {
  Outcome o;
  const CommandResult r = cmd_verify_theorems("orbit-boundedness");
  o.require(r.exit_code == 0, "suite failed");
  bool escaped = false;
  std::size_t bounded = 0;
  for (const json& c : checks_of(r, "orbit-boundedness")) {
    if (c.contains("verdict")) {
      escaped = c.at("verdict") == "fail" && c.at("orbit_sup").get<double>() > c.at("bound").get<double>();
    } else {
      ++bounded;
      o.require(c.at("worst_sup_minus_start_distance").get<double>() <= 1e-9, c.at("name").get<std::string>());
    }
  }
  o.require(escaped, "translation stayed bounded");
  if (o.passed) o.detail = std::to_string(bounded) + " bounded orbits, x+1 escapes";
  return o;
}

Outcome criterion_demiclosedness() {
  Outcome o;
  const CommandResult r = cmd_verify_theorems("demiclosedness");
  o.require(r.exit_code == 0, "suite failed");
  double worst = 0.0;
  const json& checks = checks_of(r, "demiclosedness");
  for (const json& c : checks) worst = std::max(worst, c.at("max_limit_residual").get<double>());
  o.require(!checks.empty() && worst <= 1e-9, "limit residual " + num(worst));
  if (o.passed) o.detail = std::to_string(checks.size()) + " mappings, max ||Tu-u|| " + num(worst);
  return o;
}

// Independent of the suite: iterate negation directly and compare with 2^{1-n} ||x_1||.
double halving_error() {
  for (const ZooEntry& entry : standard_zoo()) {
    if (entry.name != "negation-l2") continue;
    const Vector x1(entry.mapping.space(), {3.0, -4.0});
    const Schedules half{Schedule::constant(0.5), Schedule::constant(0.5), std::nullopt};
    const IterationTrace t = iterate(entry.mapping, x1, Scheme::ishikawa, half, StopRule{0.0, 39});
    if (t.iterates.size() != 40) return INFINITY;
    double worst = 0.0;
    for (std::size_t k = 0; k < t.iterates.size(); ++k) {
      const double expected = 5.0 * std::pow(2.0, -static_cast<double>(k));
      const double got = std::hypot(t.iterates[k][0], t.iterates[k][1]);
      worst = std::max(worst, std::abs(got - expected) / expected);
    }
    return worst;
  }
  return INFINITY;
}

Outcome criterion_convergence() {
  Outcome o;
  const CommandResult r = cmd_verify_theorems("convergence");
  o.require(r.exit_code == 0, "suite failed");
  std::size_t runs = 0;
  for (const json& c : checks_of(r, "convergence")) {
    if (!starts_with(c, "ishikawa")) continue;
    ++runs;
    const bool decay = !c.at("residual_decay").is_boolean() || c.at("residual_decay").get<bool>();
    o.require(c.at("converged").get<bool>() && c.at("max_steps").get<double>() <= 10000 &&
                  c.at("fejer").get<bool>() && decay,
              c.at("name").get<std::string>());
  }
  const double err = halving_error();
  o.require(err <= 1e-12, "halving error " + num(err));
  if (o.passed) o.detail = std::to_string(runs) + " runs, halving rel. error " + num(err);
  return o;
}

struct Coeffs {
  double image, cross, source, moves;
};

// Grid search over (alpha, beta, gamma, delta) in [-10, 10]^4 at step 0.5 with
// the residual of T(x) = 2x evaluated from scratch on each pair.
std::size_t grid_feasible_points(const std::vector<Coeffs>& terms) {
  std::size_t feasible = 0;
  for (int ia = -20; ia <= 20; ++ia) {
    for (int ib = -20; ib <= 20; ++ib) {
      for (int ig = -20; ig <= 20; ++ig) {
        for (int id = -20; id <= 20; ++id) {
          const double a = 0.5 * ia, b = 0.5 * ib, g = 0.5 * ig, d = 0.5 * id;
          if (a + 2 * b + g < 0 || a + b <= 0 || b > 0 || d < 0) continue;
          bool ok = true;
          for (const Coeffs& t : terms) {
            if (a * t.image + b * t.cross + g * t.source + d * t.moves > 1e-9) {
              ok = false;
              break;
            }
          }
          if (ok) ++feasible;
        }
      }
    }
  }
  return feasible;
}

Outcome criterion_cone_fitting() {
  Outcome o;
  const CommandResult r = cmd_verify_theorems("cone");
  o.require(r.exit_code == 0, "suite failed");
  for (const json& c : checks_of(r, "cone")) {
    if (starts_with(c, "cone-feasible")) {
      o.require(c.at("feasible").get<bool>() && c.at("recheck_max_violation").get<double>() <= 1e-9,
                c.at("name").get<std::string>());
    }
  }

  const ZooEntry doubling = doubling_control();
  const SpaceSpec line(1, 2.0);
  auto pairs = membership_pairs(doubling.mapping, SamplePlan{7, 200, 10.0});
  pairs.emplace_back(Vector(line, {1.0}), Vector(line, {0.0}));
  ConeFitOptions options;
  options.impose_c1 = true;
  options.impose_c3 = true;
  const ConeFit fit = fit_sgh_cone(doubling.mapping, pairs, options);
  o.require(!fit.feasible && fit.certificate && fit.certificate->verified, "2x fit not certified infeasible");

  std::vector<Coeffs> terms;
  for (const auto& [xv, yv] : pairs) {
    const double x = xv[0], y = yv[0];
    const double tx = 2 * x, ty = 2 * y;
    terms.push_back({(tx - ty) * (tx - ty), (x - ty) * (x - ty) + (tx - y) * (tx - y), (x - y) * (x - y),
                     (x - tx) * (x - tx) + (y - ty) * (y - ty)});
  }
  const std::size_t grid = grid_feasible_points(terms);
  o.require(grid == 0, std::to_string(grid) + " feasible grid points");

  // The same grid must see the nonexpansive point (1, 0, -1, 0) for the identity.
  std::vector<Coeffs> identity;
  for (const Coeffs& t : terms) identity.push_back({t.source, 2 * t.source, t.source, 0.0});
  o.require(grid_feasible_points(identity) > 0, "grid search found nothing for the identity");
  if (o.passed) o.detail = "4 feasible fits re-checked, 2x infeasible (certificate + 41^4 grid)";
  return o;
}

Outcome criterion_determinism() {
  Outcome o;
  const std::string first = render_report(cmd_verify_theorems("all", 17).report);
  const std::string second = render_report(cmd_verify_theorems("all", 17).report);
  o.require(first == second, "reports differ");
  if (o.passed) o.detail = std::to_string(first.size()) + " identical bytes";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria = {
      {1, "duality-gap", criterion_duality_gap, 5.0},
      {2, "uniform-convexity", criterion_uniform_convexity, 30.0},
      {3, "quasi-nonexpansive", criterion_quasi_nonexpansive, 10.0},
      {4, "firmly-nonexpansive", criterion_firmly_nonexpansive, 0.0},
      {5, "orbit-boundedness", criterion_orbit_boundedness, 0.0},
      {6, "demiclosedness", criterion_demiclosedness, 0.0},
      {7, "convergence", criterion_convergence, 30.0},
      {8, "cone-fitting", criterion_cone_fitting, 0.0},
      {9, "determinism", criterion_determinism, 0.0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = num(seconds) + " s";
    if (c.limit_seconds > 0) {
      timing += " (limit " + num(c.limit_seconds) + " s)";
      if (seconds >= c.limit_seconds) o.require(false, "too slow");
    }
    std::printf("criterion %d %-20s %s  %s  %s\n", c.id, c.name, o.passed ? "PASS" : "FAIL", timing.c_str(),
                o.detail.c_str());
    if (!o.passed) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
