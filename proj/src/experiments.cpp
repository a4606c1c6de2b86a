#include "sgh/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string_view>

#include "sgh/errors.hpp"
#include "sgh/properties.hpp"
#include "sgh/zoo.hpp"

namespace sgh {

using nlohmann::json;
namespace fs = std::filesystem;

json to_json(const Vector& v) { return json(std::vector<double>(v.coords().begin(), v.coords().end())); }

std::string render_report(const json& report) { return report.dump(2) + "\n"; }

namespace {

std::uint64_t seed_for(std::uint64_t seed, std::string_view tag) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return derive_seed(seed, h);
}

json witness_json(const std::optional<std::pair<Vector, Vector>>& w) {
  if (!w) return nullptr;
  return json::array({to_json(w->first), to_json(w->second)});
}

json params_json(const SghParams& p) {
  return {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}};
}

json conditions_json(const ConditionReport& r) {
  json out = {{"c1", r.c1},
              {"c2", r.c2},
              {"c3", r.c3},
              {"c4", r.c4},
              {"alpha_plus_2beta_plus_gamma", r.alpha_2beta_gamma},
              {"alpha_plus_beta", r.alpha_beta},
              {"contraction_ratio", nullptr}};
  if (r.contraction_ratio) out["contraction_ratio"] = *r.contraction_ratio;
  return out;
}

json membership_json(const MembershipReport& m) {
  return {{"member", m.member},
          {"max_violation", m.max_violation},
          {"witness", witness_json(m.witness)},
          {"pairs_checked", m.pairs_checked},
          {"tolerance", m.tolerance}};
}

json qne_json(const QuasiNeReport& r) {
  return {{"passed", r.passed},
          {"max_excess", r.max_excess},
          {"witness", witness_json(r.witness)},
          {"pairs_checked", r.pairs_checked}};
}

json certificate_json(const InfeasibilityCertificate& c) {
  json rows = json::array();
  for (const auto& con : c.constraints) {
    rows.push_back({{"label", con.label}, {"row", con.row}, {"rhs", con.rhs}});
  }
  return {{"constraints", rows},
          {"multipliers", c.multipliers},
          {"lower", c.lower},
          {"value", c.value},
          {"verified", c.verified}};
}

json fejer_json(const Vector& q, const FejerReport& r) {
  return {{"fixed_point", to_json(q)},
          {"passed", r.passed},
          {"worst_step", r.worst_step ? json(*r.worst_step) : json(nullptr)},
          {"worst_increase", r.worst_increase},
          {"steps_checked", r.steps_checked}};
}

json decay_json(const Vector& q, const ResidualDecayReport& r) {
  return {{"fixed_point", to_json(q)},
          {"verdict", to_string(r.verdict)},
          {"failed_hypotheses", r.failed_hypotheses},
          {"worst_excess", r.worst_excess},
          {"worst_step", r.worst_step ? json(*r.worst_step) : json(nullptr)},
          {"lower_bound_a", r.lower_bound_a},
          {"per_step_inequality", r.per_step_inequality},
          {"final_below_tolerance", r.final_below_tolerance}};
}

fs::path output_dir(const std::optional<fs::path>& out) {
  const fs::path dir = out.value_or(fs::path("."));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path.string() + "' for writing");
  file << text;
  if (!file) throw Error("failed writing '" + path.string() + "'");
}

void emit_report(CommandResult& result, const std::optional<fs::path>& out, const char* name) {
  if (!out) return;
  const fs::path path = output_dir(out) / name;
  write_text(path, render_report(result.report));
  result.files.push_back(path);
}

std::string fmt(double v) { return format_number(v); }

/// First named class whose inequality the mapping satisfies under all four conditions.
std::optional<NamedClass> member_class(const Mapping& mapping, const SamplePlan& plan) {
  for (NamedClass cls : kNamedClasses) {
    const SghParams params = named_class(cls);
    if (!validate_conditions(params).all()) continue;
    if (check_membership(mapping, params, plan, 1e-9).member) return cls;
  }
  return std::nullopt;
}

SamplePlan plan_for(std::uint64_t seed, std::string_view tag, std::size_t count, double radius) {
  return SamplePlan{seed_for(seed, tag), count, radius};
}

class Suite {
 public:
  void add(json check) {
    passed_ = passed_ && check.at("passed").get<bool>();
    checks_.push_back(std::move(check));
  }
  json result() const { return {{"passed", passed_}, {"checks", checks_}}; }

 private:
  bool passed_ = true;
  json checks_ = json::array();
};

std::string space_label(const SpaceSpec& space) {
  return "n=" + std::to_string(space.n()) + ",p=" + fmt(space.p());
}

json suite_duality_gap(std::uint64_t seed) {
  Suite suite;
  for (std::size_t n : {1, 2, 8}) {
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
      const SpaceSpec space(n, p);
      const std::string label = space_label(space);
      Rng rng(seed_for(seed, "duality-gap/" + label));
      const ConvexDomain whole = ConvexDomain::whole_space(space);
      double worst = std::numeric_limits<double>::infinity();
      const std::size_t pairs = 10000;
      for (std::size_t k = 0; k < pairs; ++k) {
        const double radius = k % 2 == 0 ? 10.0 : 1.0;
        const Vector x = sample_point(whole, radius, rng);
        const Vector y = k % 4 == 3 ? x + 1e-3 * sample_ball(space, 1.0, rng) : sample_point(whole, radius, rng);
        const double scaled = duality_gap(x, y) / (1.0 + norm_squared(x) + norm_squared(y));
        worst = std::min(worst, scaled);
      }
      suite.add({{"name", "duality-gap " + label},
                 {"pairs", pairs},
                 {"min_scaled_gap", worst},
                 {"threshold", -1e-10},
                 {"passed", worst >= -1e-10}});
    }
  }
  return suite.result();
}

json suite_uniform_convexity(std::uint64_t seed) {
  Suite suite;
  const std::size_t triples = 10000;
  for (std::size_t n : {1, 2, 3}) {
    const SpaceSpec space(n, 2.0);
    const std::string label = space_label(space);
    Rng rng(seed_for(seed, "xu-hilbert/" + label));
    const Modulus g = hilbert_modulus();
    double worst = 0.0;
    for (std::size_t k = 0; k < triples; ++k) {
      const Vector x = sample_ball(space, 1.0, rng);
      const Vector y = sample_ball(space, 1.0, rng);
      worst = std::max(worst, std::abs(xu_gap(x, y, rng.uniform(), g)));
    }
    suite.add({{"name", "xu-gap-hilbert " + label},
               {"triples", triples},
               {"max_abs_gap", worst},
               {"threshold", 1e-12},
               {"passed", worst <= 1e-12}});
  }
  for (double p : {1.5, 3.0, 4.0}) {
    for (std::size_t n : {2, 3}) {
      const SpaceSpec space(n, p);
      const std::string label = space_label(space);
      const PiecewiseLinear fitted =
          estimate_g(space, 1.0, ModulusFitPlan{seed_for(seed, "xu-train/" + label), 10000, 0.5});
      const Modulus g = [&fitted](double s) { return fitted(s); };
      Rng rng(seed_for(seed, "xu-validate/" + label));
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < triples; ++k) {
        const Vector x = sample_ball(space, 1.0, rng);
        const Vector y = sample_ball(space, 1.0, rng);
        worst = std::min(worst, xu_gap(x, y, rng.uniform(), g));
      }
      const bool shape = fitted(0.0) == 0.0 && fitted.is_nondecreasing() && fitted.is_convex(1e-12);
      suite.add({{"name", "xu-gap-fitted " + label},
                 {"triples", triples},
                 {"nodes", fitted.nodes().size()},
                 {"g_shape_ok", shape},
                 {"min_gap", worst},
                 {"threshold", -1e-9},
                 {"passed", shape && worst >= -1e-9}});
    }
  }
  return suite.result();
}

json suite_quasi_nonexpansive(std::uint64_t seed) {
  Suite suite;
  std::size_t applied = 0;
  for (const ZooEntry& entry : standard_zoo()) {
    const auto& fixed = entry.mapping.declared_fixed_points();
    for (NamedClass cls : kNamedClasses) {
      const std::string tag = entry.name + "/" + to_string(cls);
      const SghParams params = named_class(cls);
      const ConditionReport cond = validate_conditions(params);
      const SamplePlan plan = plan_for(seed, "qne/" + tag, 1000, entry.sample_radius);
      const MembershipReport m = check_membership(entry.mapping, params, plan, 1e-9);
      json check = {{"name", "quasi-nonexpansive " + tag},
                    {"member", m.member},
                    {"max_violation", m.max_violation},
                    {"conditions_hold", cond.quasi_nonexpansive_conditions()}};
      if (m.member && cond.quasi_nonexpansive_conditions() && !fixed.empty()) {
        const QuasiNeReport q = check_quasi_nonexpansive(entry.mapping, fixed, plan, 1e-9);
        check["applies"] = true;
        check["max_excess"] = q.max_excess;
        check["passed"] = q.max_excess <= 1e-9;
        ++applied;
      } else {
        check["applies"] = false;
        check["passed"] = true;
      }
      suite.add(std::move(check));
    }
  }
  suite.add({{"name", "quasi-nonexpansive coverage"}, {"applied", applied}, {"passed", applied > 0}});

  const ZooEntry doubling = doubling_control();
  for (NamedClass cls : kNamedClasses) {
    const std::string tag = doubling.name + "/" + to_string(cls);
    const MembershipReport m = check_membership(doubling.mapping, named_class(cls),
                                                plan_for(seed, "qne/" + tag, 1000, doubling.sample_radius));
    suite.add({{"name", "negative-control " + tag},
               {"member", m.member},
               {"max_violation", m.max_violation},
               {"passed", !m.member}});
  }
  return suite.result();
}

json suite_firmly_nonexpansive(std::uint64_t seed) {
  Suite suite;
  const double grid[] = {0.0, 0.5, 1.0, 2.0};
  for (const ZooEntry& entry : standard_zoo()) {
    if (!entry.firmly_nonexpansive) continue;
    const SamplePlan plan = plan_for(seed, "firmly/" + entry.name, 1000, entry.sample_radius);
    const FirmlyNeReport fne = check_firmly_nonexpansive(entry.mapping, plan, 1e-9);
    suite.add({{"name", "firmly-nonexpansive " + entry.name},
               {"max_excess", fne.max_excess},
               {"passed", fne.passed}});
    for (double zeta : grid) {
      for (double eta : grid) {
        if (zeta + eta == 0.0) continue;
        for (bool swapped : {false, true}) {
          const SghParams params = swapped ? firmly_ne_embedding_params_swapped(zeta, eta)
                                           : firmly_ne_embedding_params(zeta, eta);
          const ConditionReport cond = validate_conditions(params);
          const bool exact = cond.alpha_2beta_gamma == 0.0 && cond.alpha_beta == zeta + eta;
          const MembershipReport m = check_membership(entry.mapping, params, plan, 1e-9);
          suite.add({{"name", "embedding " + entry.name + (swapped ? " swapped" : "") + " zeta=" +
                                  fmt(zeta) + " eta=" + fmt(eta)},
                     {"params", params_json(params)},
                     {"exact_conditions", exact},
                     {"member", m.member},
                     {"max_violation", m.max_violation},
                     {"passed", exact && m.member}});
        }
      }
    }
  }
  return suite.result();
}

json suite_orbit_boundedness(std::uint64_t seed) {
  Suite suite;
  for (const ZooEntry& entry : standard_zoo()) {
    const auto& fixed = entry.mapping.declared_fixed_points();
    if (fixed.empty()) continue;
    const SamplePlan plan = plan_for(seed, "orbit-qne/" + entry.name, 1000, entry.sample_radius);
    const QuasiNeReport qne = check_quasi_nonexpansive(entry.mapping, fixed, plan, 1e-9);
    if (!qne.passed) {
      suite.add({{"name", "orbit " + entry.name}, {"applies", false}, {"passed", true}});
      continue;
    }
    const auto starts =
        sample_points(entry.mapping.domain(), plan_for(seed, "orbit/" + entry.name, 20, entry.sample_radius));
    for (std::size_t j = 0; j < fixed.size(); ++j) {
      const Vector& q = fixed[j];
      bool all_bounded = true;
      double worst_margin = -std::numeric_limits<double>::infinity();
      for (const Vector& x0 : starts) {
        const double bound = distance(x0, q) + 1e-9;
        const ProbeReport r = orbit_boundedness_probe(entry.mapping, x0, 200, bound, {q, false});
        all_bounded = all_bounded && r.verdict == ProbeVerdict::pass;
        worst_margin = std::max(worst_margin, r.orbit_sup - distance(x0, q));
      }
      suite.add({{"name", "orbit " + entry.name + " q#" + std::to_string(j)},
                 {"applies", true},
                 {"starts", starts.size()},
                 {"horizon", 200},
                 {"worst_sup_minus_start_distance", worst_margin},
                 {"passed", all_bounded}});
    }
  }

  const ZooEntry translation = translation_control();
  const double bound = 1000.0;
  const Vector x0 = Vector::zero(translation.mapping.space());
  // |T^n x0| = |x0 + n| exceeds the bound once n > bound + |x0|.
  const auto horizon = static_cast<std::size_t>(std::floor(bound + norm(x0))) + 1;
  const ProbeReport r = orbit_boundedness_probe(translation.mapping, x0, horizon, bound);
  suite.add({{"name", "orbit " + translation.name + " unbounded"},
             {"bound", bound},
             {"horizon", horizon},
             {"orbit_sup", r.orbit_sup},
             {"verdict", to_string(r.verdict)},
             {"passed", r.verdict == ProbeVerdict::fail && r.orbit_sup > bound}});
  return suite.result();
}

json suite_demiclosedness(std::uint64_t seed) {
  Suite suite;
  for (const ZooEntry& entry : standard_zoo()) {
    const Mapping& mapping = entry.mapping;
    if (mapping.declared_fixed_points().empty()) continue;
    const auto cls = member_class(mapping, plan_for(seed, "demi-class/" + entry.name, 1000, entry.sample_radius));
    if (!cls) continue;

    const bool convex = mapping.domain().is_convex();
    const auto starts = convex ? sample_points(mapping.domain(),
                                               plan_for(seed, "demi/" + entry.name, 3, entry.sample_radius))
                               : mapping.domain().as_point_set()->points;
    // Convex combinations leave a finite point set, so there the scheme runs with full steps.
    const double weight = convex ? 0.5 : 1.0;

    std::optional<std::vector<Vector>> brute;
    if (!convex || (mapping.affine_form() && !mapping.domain().is_bounded())) {
      try {
        brute = fixed_points_bruteforce(mapping, 1e-12);
      } catch (const ConfigError&) {
      }
    }

    bool ok = true;
    double worst = 0.0;
    for (const Vector& x0 : starts) {
      const auto gen = ishikawa_generator(
          x0, Schedules{Schedule::constant(weight), Schedule::constant(weight), std::nullopt},
          StopRule{1e-12, 10000});
      const ProbeReport r = demiclosedness_probe(mapping, gen, 1e-10);
      const double tu = r.limit_candidate ? mapping.residual(*r.limit_candidate)
                                          : std::numeric_limits<double>::infinity();
      worst = std::max(worst, tu);
      bool matched = true;
      if (brute && r.limit_candidate) {
        matched = false;
        for (const Vector& f : *brute) matched = matched || distance(f, *r.limit_candidate) <= 1e-9;
      }
      ok = ok && r.verdict == ProbeVerdict::pass && tu <= 1e-9 && matched;
    }
    suite.add({{"name", "demiclosedness " + entry.name},
               {"class", to_string(*cls)},
               {"starts", starts.size()},
               {"max_limit_residual", worst},
               {"bruteforce_cross_check", brute.has_value()},
               {"passed", ok}});
  }
  return suite.result();
}

json suite_convergence(std::uint64_t seed) {
  Suite suite;
  for (const ZooEntry& entry : standard_zoo()) {
    const Mapping& mapping = entry.mapping;
    const auto& fixed = mapping.declared_fixed_points();
    if (fixed.empty() || !mapping.domain().is_convex()) continue;
    if (!member_class(mapping, plan_for(seed, "conv-class/" + entry.name, 1000, entry.sample_radius))) continue;
    const auto starts =
        sample_points(mapping.domain(), plan_for(seed, "conv/" + entry.name, 3, entry.sample_radius));
    const bool hilbert = mapping.space().is_hilbert();

    for (double c : {0.25, 0.5, 0.75}) {
      const Schedules schedules{Schedule::constant(c), Schedule::constant(c), std::nullopt};
      bool converged = true;
      bool fejer = true;
      bool decay = true;
      std::size_t max_steps = 0;
      double worst_increase = -std::numeric_limits<double>::infinity();
      double worst_excess = -std::numeric_limits<double>::infinity();
      for (const Vector& x0 : starts) {
        const IterationTrace trace = iterate(mapping, x0, Scheme::ishikawa, schedules, StopRule{1e-10, 10000});
        converged = converged && trace.stop_reason == StopReason::residual_tolerance &&
                    trace.final_residual() <= 1e-10;
        max_steps = std::max(max_steps, trace.steps());
        for (const Vector& q : fixed) {
          const FejerReport f = fejer_check(trace, q, 1e-12 * (1.0 + distance(x0, q)));
          fejer = fejer && f.passed;
          worst_increase = std::max(worst_increase, f.worst_increase);
          if (hilbert) {
            const ResidualDecayReport d = residual_decay_check(trace, hilbert_modulus(), q);
            decay = decay && d.verdict == DecayVerdict::pass;
            worst_excess = std::max(worst_excess, d.worst_excess);
          }
        }
      }
      json check = {{"name", "ishikawa " + entry.name + " c=" + fmt(c)},
                    {"starts", starts.size()},
                    {"max_steps", max_steps},
                    {"converged", converged},
                    {"fejer", fejer},
                    {"worst_fejer_increase", worst_increase},
                    {"residual_decay", hilbert ? json(decay) : json("not-applicable")},
                    {"passed", converged && fejer && decay}};
      if (hilbert) check["worst_decay_excess"] = worst_excess;
      suite.add(std::move(check));
    }
  }

  // Negation with lambda = gamma = 1/2: y_n = 0 and x_{n+1} = x_n / 2.
  for (const char* name : {"negation-l2", "negation-l1.5"}) {
    for (const ZooEntry& entry : standard_zoo()) {
      if (entry.name != name) continue;
      const Vector x1(entry.mapping.space(), {3.0, -4.0});
      const Schedules half{Schedule::constant(0.5), Schedule::constant(0.5), std::nullopt};
      const IterationTrace trace = iterate(entry.mapping, x1, Scheme::ishikawa, half, StopRule{0.0, 39});
      double worst = 0.0;
      for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
        const double expected = std::ldexp(norm(x1), -static_cast<int>(k));
        worst = std::max(worst, std::abs(norm(trace.iterates[k]) - expected) / expected);
      }
      suite.add({{"name", std::string("closed-form halving ") + name},
                 {"iterates", trace.iterates.size()},
                 {"max_relative_error", worst},
                 {"passed", trace.iterates.size() == 40 && worst <= 1e-12}});
    }
  }
  return suite.result();
}

json suite_cone(std::uint64_t seed) {
  Suite suite;
  const SpaceSpec line(1, 2.0);
  std::vector<ZooEntry> feasible_cases;
  for (const ZooEntry& entry : standard_zoo()) {
    if (entry.name == "identity-l2" || entry.name == "negation-l2" || entry.name == "projection-ball-l2") {
      feasible_cases.push_back(entry);
    }
  }
  feasible_cases.push_back({"negation-line", Mapping::negation(ConvexDomain::whole_space(line)), false});

  for (const ZooEntry& entry : feasible_cases) {
    const SamplePlan plan = plan_for(seed, "cone/" + entry.name, 1000, entry.sample_radius);
    const ConeFit fit = fit_sgh_cone(entry.mapping, membership_pairs(entry.mapping, plan));
    json check = {{"name", "cone-feasible " + entry.name}, {"feasible", fit.feasible}};
    bool ok = fit.feasible && fit.params.has_value();
    if (ok) {
      const MembershipReport m = check_membership(entry.mapping, *fit.params, plan, 1e-9);
      check["params"] = params_json(*fit.params);
      check["chebyshev_radius"] = fit.chebyshev_radius;
      check["recheck_max_violation"] = m.max_violation;
      ok = m.member;
    }
    check["passed"] = ok;
    suite.add(std::move(check));
  }

  const ZooEntry doubling = doubling_control();
  const SamplePlan plan = plan_for(seed, "cone/" + doubling.name, 1000, doubling.sample_radius);
  auto pairs = membership_pairs(doubling.mapping, plan);
  pairs.emplace_back(Vector(line, {1.0}), Vector(line, {0.0}));
  ConeFitOptions options;
  options.impose_c1 = true;
  options.impose_c3 = true;
  const ConeFit fit = fit_sgh_cone(doubling.mapping, pairs, options);
  json check = {{"name", "cone-infeasible " + doubling.name}, {"feasible", fit.feasible}};
  if (fit.certificate) check["certificate_verified"] = fit.certificate->verified;
  check["passed"] = !fit.feasible && fit.certificate && fit.certificate->verified;
  suite.add(std::move(check));
  return suite.result();
}

json suite_negative_control(std::uint64_t seed) {
  Suite suite;
  const ZooEntry doubling = doubling_control();
  const SamplePlan plan = plan_for(seed, "negative/" + doubling.name, 1000, doubling.sample_radius);
  for (NamedClass cls : kNamedClasses) {
    const SghParams params = named_class(cls);
    const MembershipReport m = check_membership(doubling.mapping, params, plan, 1e-9);
    json check = {{"name", "non-member " + doubling.name + " " + to_string(cls)},
                  {"member", m.member},
                  {"max_violation", m.max_violation},
                  {"witness", witness_json(m.witness)}};
    bool ok = !m.member && m.max_violation > 0.0;
    if (cls == NamedClass::nonexpansive && m.witness) {
      // 4|x-y|^2 - |x-y|^2
      const double d2 = distance_squared(m.witness->first, m.witness->second);
      const double ratio = m.max_violation / d2;
      check["violation_over_distance_squared"] = ratio;
      ok = ok && std::abs(ratio - 3.0) <= 1e-9;
    }
    check["passed"] = ok;
    suite.add(std::move(check));
  }

  const QuasiNeReport qne = check_quasi_nonexpansive(doubling.mapping, {Vector::zero(doubling.mapping.space())}, plan);
  suite.add({{"name", "quasi-nonexpansive fails " + doubling.name},
             {"max_excess", qne.max_excess},
             {"passed", !qne.passed}});

  // Fejér check must flag a trace whose distance jumps at one index.
  const SpaceSpec line(1, 2.0);
  const Mapping negation = Mapping::negation(ConvexDomain::whole_space(line), {Vector::zero(line)});
  const Schedules half{Schedule::constant(0.5), Schedule::constant(0.5), std::nullopt};
  IterationTrace trace = iterate(negation, Vector(line, {1.0}), Scheme::ishikawa, half, StopRule{0.0, 10});
  trace.iterates[5] *= 10.0;
  const FejerReport f = fejer_check(trace, Vector::zero(line), 1e-12);
  suite.add({{"name", "fejer detects corrupted trace"},
             {"worst_step", f.worst_step ? json(*f.worst_step) : json(nullptr)},
             {"passed", !f.passed && f.worst_step == std::optional<std::size_t>(5)}});
  return suite.result();
}

using SuiteFn = json (*)(std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"duality-gap", suite_duality_gap},
      {"uniform-convexity", suite_uniform_convexity},
      {"quasi-nonexpansive", suite_quasi_nonexpansive},
      {"firmly-nonexpansive", suite_firmly_nonexpansive},
      {"orbit-boundedness", suite_orbit_boundedness},
      {"demiclosedness", suite_demiclosedness},
      {"convergence", suite_convergence},
      {"cone", suite_cone},
      {"negative-control", suite_negative_control},
  };
  return table;
}

std::vector<std::string> hypothesis_roles(Scheme scheme) {
  switch (scheme) {
    case Scheme::picard: return {};
    case Scheme::mann: return {"alpha"};
    case Scheme::ishikawa: return {"lambda", "gamma"};
  }
  return {};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

CommandResult cmd_check_class(const ExperimentConfig& config, const std::optional<fs::path>& out) {
  if (!config.params) throw ConfigError("check-class needs 'params'");
  const Mapping& mapping = config.mapping;
  const SghParams& params = *config.params;
  const ConditionReport cond = validate_conditions(params);

  std::vector<PairResidual> records;
  MembershipReport m = check_membership(mapping, params, config.samples, config.tolerance,
                                        config.verbose ? &records : nullptr);
  for (const auto& [x, y] : config.extra_pairs) {
    const double r = sgh_residual(mapping, params, x, y);
    if (config.verbose) records.push_back({x, y, r});
    if (r > m.max_violation) {
      m.max_violation = r;
      m.witness = std::make_pair(x, y);
    }
    ++m.pairs_checked;
  }
  m.member = m.max_violation <= config.tolerance;

  CommandResult result;
  json& report = result.report;
  report["command"] = "check-class";
  report["config"] = config.echo;
  report["params"] = params_json(params);
  report["params_name"] = config.params_name ? json(*config.params_name) : json(nullptr);
  report["conditions"] = conditions_json(cond);
  report["membership"] = membership_json(m);

  std::ostringstream summary;
  summary << "conditions: c1 " << (cond.c1 ? "ok" : "fail") << ", c2 " << (cond.c2 ? "ok" : "fail")
          << ", c3 " << (cond.c3 ? "ok" : "fail") << ", c4 " << (cond.c4 ? "ok" : "fail") << "\n";
  summary << "membership: " << (m.member ? "member" : "violated") << " (max residual "
          << fmt(m.max_violation) << " over " << m.pairs_checked << " pairs)\n";

  bool passed = m.member;
  const auto& fixed = mapping.declared_fixed_points();
  if (!fixed.empty()) {
    const QuasiNeReport q = check_quasi_nonexpansive(mapping, fixed, config.samples, config.tolerance);
    report["quasi_nonexpansive"] = qne_json(q);
    summary << "quasi-nonexpansive: " << (q.passed ? "pass" : "fail") << " (max excess "
            << fmt(q.max_excess) << ")\n";
    passed = passed && q.passed;
  } else {
    report["quasi_nonexpansive"] = nullptr;
  }
  report["theorem_applies"] = m.member && cond.quasi_nonexpansive_conditions() && !fixed.empty();
  if (config.verbose) {
    json rows = json::array();
    for (const auto& r : records) {
      rows.push_back({{"x", to_json(r.x)}, {"y", to_json(r.y)}, {"residual", r.residual}});
    }
    report["pair_residuals"] = rows;
  }
  report["passed"] = passed;
  summary << (passed ? "PASS" : "FAIL") << "\n";

  result.exit_code = passed ? 0 : 2;
  result.summary = summary.str();
  emit_report(result, out, "report.json");
  return result;
}

CommandResult cmd_fit_cone(const ExperimentConfig& config, const std::optional<fs::path>& out) {
  auto pairs = membership_pairs(config.mapping, config.samples);
  pairs.insert(pairs.end(), config.extra_pairs.begin(), config.extra_pairs.end());
  const ConeFit fit = fit_sgh_cone(config.mapping, pairs, config.cone);

  CommandResult result;
  json& report = result.report;
  report["command"] = "fit-cone";
  report["config"] = config.echo;
  report["pairs"] = fit.pairs;
  report["normalization"] = "alpha+beta=1";
  json imposed = json::array({"delta>=0"});
  if (config.cone.impose_c1) imposed.push_back("alpha+2beta+gamma>=0");
  if (config.cone.impose_c3) imposed.push_back("beta<=0");
  report["imposed"] = imposed;
  report["box"] = config.cone.box;
  report["feasible"] = fit.feasible;
  report["params"] = fit.params ? params_json(*fit.params) : json(nullptr);
  report["conditions"] = fit.params ? conditions_json(validate_conditions(*fit.params)) : json(nullptr);
  report["chebyshev_radius"] = fit.chebyshev_radius;
  report["certificate"] = fit.certificate ? certificate_json(*fit.certificate) : json(nullptr);

  std::ostringstream summary;
  if (fit.feasible && fit.params) {
    const SghParams& p = *fit.params;
    summary << "feasible: alpha " << fmt(p.alpha) << ", beta " << fmt(p.beta) << ", gamma " << fmt(p.gamma)
            << ", delta " << fmt(p.delta) << " (radius " << fmt(fit.chebyshev_radius) << ")\n";
  } else {
    summary << "infeasible over " << fit.pairs << " pairs; certificate "
            << (fit.certificate && fit.certificate->verified ? "verified" : "not verified") << "\n";
  }
  result.exit_code = fit.feasible ? 0 : 2;
  result.summary = summary.str();
  emit_report(result, out, "report.json");
  return result;
}

CommandResult cmd_iterate(const ExperimentConfig& config, const std::optional<fs::path>& out) {
  if (!config.x0) throw ConfigError("iterate needs 'x0'");
  const Mapping& mapping = config.mapping;

  CommandResult result;
  json& report = result.report;
  std::ostringstream summary;
  report["command"] = "iterate";
  report["config"] = config.echo;
  report["scheme"] = to_string(config.scheme);

  json hypotheses = json::object();
  bool hypotheses_hold = true;
  for (const std::string& role : hypothesis_roles(config.scheme)) {
    const std::optional<Schedule>& s = role == "lambda"  ? config.schedules.lambda
                                       : role == "gamma" ? config.schedules.gamma
                                                         : config.schedules.alpha;
    if (!s) throw ConfigError("scheme " + std::string(to_string(config.scheme)) + " needs schedules." + role);
    const ScheduleRole r = role == "lambda" ? ScheduleRole::lambda
                           : role == "gamma" ? ScheduleRole::gamma
                                             : ScheduleRole::alpha;
    json verdicts = json::array();
    for (const auto& v : validate_schedule(*s, r)) {
      verdicts.push_back({{"condition", v.condition}, {"holds", v.holds}});
      if (!v.holds) {
        hypotheses_hold = false;
        summary << "hypothesis violated: " << role << " " << s->describe() << ": " << v.condition << "\n";
      }
    }
    hypotheses[role] = {{"schedule", schedule_to_json(*s)}, {"conditions", verdicts}};
  }
  report["hypotheses"] = hypotheses;
  report["hypotheses_hold"] = hypotheses_hold;

  const IterationTrace trace = iterate(mapping, *config.x0, config.scheme, config.schedules, config.stop);
  const bool converged = trace.stop_reason == StopReason::residual_tolerance;
  report["trace"] = {{"iterations", trace.steps()},
                     {"final_residual", trace.final_residual()},
                     {"final_iterate", to_json(trace.last())},
                     {"stop_reason", to_string(trace.stop_reason)},
                     {"converged", converged}};
  summary << "stop: " << to_string(trace.stop_reason) << " after " << trace.steps() << " steps, residual "
          << fmt(trace.final_residual()) << "\n";

  bool passed = converged;
  json fejer = json::array();
  json decay = json::array();
  for (const Vector& q : mapping.declared_fixed_points()) {
    const FejerReport f = fejer_check(trace, q, 1e-12 * (1.0 + distance(*config.x0, q)));
    fejer.push_back(fejer_json(q, f));
    passed = passed && f.passed;
    summary << "fejer w.r.t. " << to_json(q).dump() << ": " << (f.passed ? "pass" : "fail") << "\n";
    if (config.scheme != Scheme::ishikawa) continue;

    Modulus g = hilbert_modulus();
    if (!mapping.space().is_hilbert()) {
      double r = 0.0;
      for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
        r = std::max(r, distance(trace.iterates[k], q) + trace.residuals[k]);
      }
      if (!(r > 0.0)) r = 1.0;
      const PiecewiseLinear fitted =
          estimate_g(mapping.space(), r, ModulusFitPlan{seed_for(config.seed, "modulus"), 10000, 0.5});
      g = [fitted](double s) { return fitted(s); };
    }
    const ResidualDecayReport d = residual_decay_check(trace, g, q);
    decay.push_back(decay_json(q, d));
    passed = passed && d.verdict != DecayVerdict::violated;
    summary << "residual decay w.r.t. " << to_json(q).dump() << ": " << to_string(d.verdict) << "\n";
  }
  report["fejer"] = fejer;
  report["residual_decay"] = decay;
  report["passed"] = passed;
  summary << (passed ? "PASS" : "FAIL") << "\n";

  const fs::path dir = output_dir(out);
  std::ostringstream csv;
  write_trace_csv(trace, csv);
  write_text(dir / "trace.csv", csv.str());
  result.files.push_back(dir / "trace.csv");
  report["files"] = {"trace.csv", "report.json"};
  write_text(dir / "report.json", render_report(report));
  result.files.push_back(dir / "report.json");

  result.exit_code = passed ? 0 : 2;
  result.summary = summary.str();
  return result;
}

CommandResult cmd_verify_theorems(const std::string& suite, std::uint64_t seed,
                                  const std::optional<fs::path>& out) {
  std::vector<std::pair<std::string, SuiteFn>> selected;
  for (const auto& entry : suites()) {
    if (suite == "all" || suite == entry.first) selected.push_back(entry);
  }
  if (selected.empty()) throw ConfigError("unknown suite '" + suite + "'");

  CommandResult result;
  json& report = result.report;
  report["command"] = "verify-theorems";
  report["seed"] = seed;
  report["suite"] = suite;
  json results = json::object();
  bool passed = true;
  std::ostringstream matrix;
  for (const auto& [name, fn] : selected) {
    json r = fn(seed);
    const bool ok = r.at("passed").get<bool>();
    std::size_t good = 0;
    for (const auto& c : r.at("checks")) good += c.at("passed").get<bool>() ? 1 : 0;
    char line[128];
    std::snprintf(line, sizeof line, "%-22s %s  %zu/%zu checks\n", name.c_str(), ok ? "PASS" : "FAIL", good,
                  r.at("checks").size());
    matrix << line;
    passed = passed && ok;
    results[name] = std::move(r);
  }
  report["suites"] = results;
  report["passed"] = passed;
  matrix << (passed ? "ALL PASS" : "SOME FAILED") << "\n";

  result.exit_code = passed ? 0 : 2;
  result.summary = matrix.str();
  emit_report(result, out, "verify-report.json");
  return result;
}

}  // namespace sgh
