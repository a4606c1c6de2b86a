#include "sgh/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sgh/errors.hpp"

namespace sgh {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError(std::string(where) + ": missing required field '" + key + "'");
  }
  return obj.at(key);
}

double number(const json& value, const char* what) {
  if (!value.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return value.get<double>();
}

std::vector<double> numbers(const json& value, const char* what) {
  if (!value.is_array()) throw ConfigError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : value) out.push_back(number(v, what));
  return out;
}

Vector vector_from(const SpaceSpec& space, const json& value, const char* what) {
  return Vector(space, numbers(value, what));
}

std::vector<Vector> vectors_from(const SpaceSpec& space, const json& value, const char* what) {
  if (!value.is_array()) throw ConfigError(std::string(what) + " must be an array of vectors");
  std::vector<Vector> out;
  for (const auto& v : value) out.push_back(vector_from(space, v, what));
  return out;
}

std::string kind_of(const json& obj, const char* where) {
  const json& kind = require(obj, "kind", where);
  if (!kind.is_string()) throw ConfigError(std::string(where) + ": 'kind' must be a string");
  return kind.get<std::string>();
}

ConvexDomain parse_domain(const SpaceSpec& space, const json& node) {
  const std::string kind = kind_of(node, "domain");
  if (kind == "whole-space") return ConvexDomain::whole_space(space);
  if (kind == "box") {
    return ConvexDomain::box(space, numbers(require(node, "lo", "box"), "box.lo"),
                             numbers(require(node, "hi", "box"), "box.hi"));
  }
  if (kind == "ball") {
    Vector center = node.contains("center") ? vector_from(space, node.at("center"), "ball.center")
                                            : Vector::zero(space);
    return ConvexDomain::ball(std::move(center), number(require(node, "radius", "ball"), "ball.radius"));
  }
  if (kind == "finite-point-set") {
    return ConvexDomain::point_set(space, vectors_from(space, require(node, "points", "finite-point-set"),
                                                       "finite-point-set.points"));
  }
  throw ConfigError("unknown domain kind '" + kind + "'");
}

Mapping parse_mapping(const ConvexDomain& domain, const json& node, std::vector<Vector> fixed) {
  const SpaceSpec& space = domain.space();
  const std::string kind = kind_of(node, "mapping");
  if (kind == "identity") return Mapping::identity(domain, std::move(fixed));
  if (kind == "negation") return Mapping::negation(domain, std::move(fixed));
  if (kind == "scaling") {
    return Mapping::scaling(domain, number(require(node, "factor", "scaling"), "scaling.factor"),
                            std::move(fixed));
  }
  if (kind == "constant") {
    return Mapping::constant(domain, vector_from(space, require(node, "value", "constant"), "constant.value"),
                             std::move(fixed));
  }
  if (kind == "affine") {
    const json& rows = require(node, "matrix", "affine");
    if (!rows.is_array()) throw ConfigError("affine.matrix must be an array of rows");
    std::vector<std::vector<double>> matrix;
    for (const auto& row : rows) matrix.push_back(numbers(row, "affine.matrix row"));
    std::vector<double> offset = node.contains("offset") ? numbers(node.at("offset"), "affine.offset")
                                                         : std::vector<double>(space.n(), 0.0);
    return Mapping::affine(domain, matrix, std::move(offset), std::move(fixed));
  }
  if (kind == "metric-projection") {
    return Mapping::projection(domain, parse_domain(space, require(node, "target", "metric-projection")),
                               std::move(fixed));
  }
  if (kind == "table") {
    return Mapping::table(domain, vectors_from(space, require(node, "images", "table"), "table.images"),
                          std::move(fixed));
  }
  throw ConfigError("unknown mapping kind '" + kind + "'");
}

Scheme parse_scheme(const json& value) {
  if (!value.is_string()) throw ConfigError("scheme must be a string");
  const std::string s = value.get<std::string>();
  if (s == "picard") return Scheme::picard;
  if (s == "mann") return Scheme::mann;
  if (s == "ishikawa") return Scheme::ishikawa;
  throw ConfigError("unknown scheme '" + s + "'");
}

std::uint64_t parse_seed(const json& value) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
    throw ConfigError("seed must be a nonnegative integer");
  }
  return value.get<std::uint64_t>();
}

}  // namespace

Schedule parse_schedule(const json& node) {
  const std::string kind = kind_of(node, "schedule");
  std::optional<Schedule> schedule;
  if (kind == "constant") {
    schedule = Schedule::constant(number(require(node, "value", "constant schedule"), "schedule value"));
  } else if (kind == "harmonic-offset") {
    schedule = Schedule::harmonic_offset(number(require(node, "a", "harmonic-offset"), "schedule a"),
                                         number(require(node, "b", "harmonic-offset"), "schedule b"));
  } else if (kind == "table") {
    schedule = Schedule::table(numbers(require(node, "values", "table schedule"), "schedule values"));
  } else {
    throw ConfigError("unknown schedule kind '" + kind + "'");
  }

  // Declared flags must agree with the analytic ones.
  if (node.contains("declared")) {
    const json& declared = node.at("declared");
    const auto flags = schedule->flags();
    auto mismatch = [&](const char* name) {
      throw ConfigError(std::string("declared schedule flag '") + name + "' contradicts " +
                        schedule->describe());
    };
    if (declared.contains("in_unit_interval") &&
        declared.at("in_unit_interval").get<bool>() != flags.in_unit_interval) {
      mismatch("in_unit_interval");
    }
    if (declared.contains("liminf_positive_product") &&
        declared.at("liminf_positive_product").get<bool>() != flags.liminf_positive_product) {
      mismatch("liminf_positive_product");
    }
    if (declared.contains("bounded_below_by")) {
      const double a = number(declared.at("bounded_below_by"), "bounded_below_by");
      if (!(a > 0.0) || !(flags.infimum >= a)) mismatch("bounded_below_by");
    }
  }
  return *schedule;
}

json schedule_to_json(const Schedule& schedule) {
  const auto& p = schedule.parameters();
  switch (schedule.family()) {
    case Schedule::Family::constant: return {{"kind", "constant"}, {"value", p[0]}};
    case Schedule::Family::harmonic_offset: return {{"kind", "harmonic-offset"}, {"a", p[0]}, {"b", p[1]}};
    case Schedule::Family::table: return {{"kind", "table"}, {"values", p}};
  }
  return {};
}

ExperimentConfig parse_config(const json& doc, std::optional<std::uint64_t> seed_override) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  const json& space_spec = require(doc, "space", "config");
  const SpaceSpec space(static_cast<std::size_t>(number(require(space_spec, "n", "space"), "space.n")),
                        number(require(space_spec, "p", "space"), "space.p"));
  if (std::floor(space_spec.at("n").get<double>()) != space_spec.at("n").get<double>()) {
    throw ConfigError("space.n must be an integer");
  }

  const ConvexDomain domain =
      doc.contains("domain") ? parse_domain(space, doc.at("domain")) : ConvexDomain::whole_space(space);
  std::vector<Vector> fixed;
  if (doc.contains("fixed_points")) fixed = vectors_from(space, doc.at("fixed_points"), "fixed_points");

  ExperimentConfig cfg(parse_mapping(domain, require(doc, "mapping", "config"), std::move(fixed)));
  cfg.echo = doc;

  if (doc.contains("kind")) {
    if (!doc.at("kind").is_string()) throw ConfigError("config 'kind' must be a string");
    cfg.kind = doc.at("kind").get<std::string>();
  }

  if (seed_override) {
    cfg.seed = *seed_override;
  } else if (doc.contains("seed")) {
    cfg.seed = parse_seed(doc.at("seed"));
  } else {
    throw ConfigError("config must carry a 'seed' (or pass --seed)");
  }
  cfg.echo["seed"] = cfg.seed;

  if (doc.contains("params")) {
    const json& params = doc.at("params");
    if (params.is_string()) {
      cfg.params_name = params.get<std::string>();
      cfg.params = named_class(*cfg.params_name);
    } else {
      cfg.params = SghParams{number(require(params, "alpha", "params"), "alpha"),
                             number(require(params, "beta", "params"), "beta"),
                             number(require(params, "gamma", "params"), "gamma"),
                             number(require(params, "delta", "params"), "delta")};
      cfg.params->validate();
    }
  }

  cfg.samples.seed = cfg.seed;
  if (doc.contains("samples")) {
    const json& s = doc.at("samples");
    if (s.contains("count")) {
      const double count = number(s.at("count"), "samples.count");
      if (!(count >= 1.0)) throw ConfigError("samples.count must be at least 1");
      cfg.samples.count = static_cast<std::size_t>(count);
    }
    if (s.contains("radius")) cfg.samples.radius = number(s.at("radius"), "samples.radius");
    if (!(cfg.samples.radius > 0.0)) throw ConfigError("samples.radius must be positive");
  }
  if (doc.contains("pairs")) {
    const json& pairs = doc.at("pairs");
    if (!pairs.is_array()) throw ConfigError("pairs must be an array of [x, y] entries");
    for (const auto& pair : pairs) {
      if (!pair.is_array() || pair.size() != 2) throw ConfigError("each entry of pairs must be [x, y]");
      cfg.extra_pairs.emplace_back(vector_from(space, pair[0], "pairs"), vector_from(space, pair[1], "pairs"));
    }
  }
  if (doc.contains("tolerance")) cfg.tolerance = number(doc.at("tolerance"), "tolerance");

  if (doc.contains("conditions")) {
    for (const auto& c : doc.at("conditions")) {
      const std::string name = c.get<std::string>();
      if (name == "c1") cfg.cone.impose_c1 = true;
      else if (name == "c3") cfg.cone.impose_c3 = true;
      else if (name != "c2" && name != "c4") throw ConfigError("unknown condition '" + name + "'");
    }
  }
  if (doc.contains("box")) cfg.cone.box = number(doc.at("box"), "box");

  if (doc.contains("scheme")) cfg.scheme = parse_scheme(doc.at("scheme"));
  if (doc.contains("schedules")) {
    const json& s = doc.at("schedules");
    if (s.contains("lambda")) cfg.schedules.lambda = parse_schedule(s.at("lambda"));
    if (s.contains("gamma")) cfg.schedules.gamma = parse_schedule(s.at("gamma"));
    if (s.contains("alpha")) cfg.schedules.alpha = parse_schedule(s.at("alpha"));
  }
  if (cfg.scheme == Scheme::ishikawa && doc.contains("x0") &&
      (!cfg.schedules.lambda || !cfg.schedules.gamma)) {
    throw ConfigError("the ishikawa scheme needs schedules.lambda and schedules.gamma");
  }
  if (cfg.scheme == Scheme::mann && !cfg.schedules.alpha) {
    throw ConfigError("the mann scheme needs schedules.alpha");
  }
  if (doc.contains("x0")) cfg.x0 = vector_from(space, doc.at("x0"), "x0");
  if (doc.contains("stop")) {
    const json& s = doc.at("stop");
    if (s.contains("residual_tol")) cfg.stop.residual_tol = number(s.at("residual_tol"), "stop.residual_tol");
    if (s.contains("max_iter")) {
      const double m = number(s.at("max_iter"), "stop.max_iter");
      if (!(m >= 0.0)) throw ConfigError("stop.max_iter must be nonnegative");
      cfg.stop.max_iter = static_cast<std::size_t>(m);
    }
  }
  if (doc.contains("verbose")) cfg.verbose = doc.at("verbose").get<bool>();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in '" + path.string() + "': " + e.what());
  }
  try {
    return parse_config(doc, seed_override);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
}

}  // namespace sgh
