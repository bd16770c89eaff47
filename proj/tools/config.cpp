#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <set>
#include <vector>

#include "dualtaylor/errors.hpp"
#include "dualtaylor/numio.hpp"
#include "dualtaylor/sequence.hpp"

namespace dualtaylor::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError("config." + path + ": " + msg);
}

YAML::Node require_map(const YAML::Node& node, const std::string& path) {
  if (!node || !node.IsMap()) fail(path, "expected a map");
  return node;
}

void reject_unknown(const YAML::Node& map, const std::string& path,
                    const std::set<std::string>& allowed) {
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
  }
}

YAML::Node required(const YAML::Node& map, const std::string& path,
                    const std::string& key) {
  const YAML::Node v = map[key];
  if (!v) fail(path + "." + key, "missing required key");
  return v;
}

std::string scalar_text(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) fail(path, "expected a scalar");
  return node.as<std::string>();
}

double number(const YAML::Node& node, const std::string& path) {
  return parse_double(scalar_text(node, path), "config." + path);
}

long long integer(const YAML::Node& node, const std::string& path) {
  return parse_integer(scalar_text(node, path), "config." + path);
}

bool boolean(const YAML::Node& node, const std::string& path) {
  const std::string t = scalar_text(node, path);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  fail(path, "expected true/false");
}

ComplexScalar complex_value(const YAML::Node& node, const std::string& path) {
  require_map(node, path);
  reject_unknown(node, path, {"re", "im"});
  return {number(required(node, path, "re"), path + ".re"),
          number(required(node, path, "im"), path + ".im")};
}

CenteredPolynomial polynomial_value(const YAML::Node& node,
                                    const std::string& path) {
  require_map(node, path);
  reject_unknown(node, path, {"center", "coeffs"});
  ComplexScalar center{};
  if (node["center"]) center = complex_value(node["center"], path + ".center");
  const YAML::Node coeffs = required(node, path, "coeffs");
  if (!coeffs.IsSequence()) fail(path + ".coeffs", "expected a list");
  std::vector<ComplexScalar> c;
  c.reserve(coeffs.size());
  std::size_t i = 0;
  for (const auto& entry : coeffs) {
    c.push_back(
        complex_value(entry, path + ".coeffs[" + std::to_string(i) + "]"));
    ++i;
  }
  return CenteredPolynomial(center, std::move(c));
}

TargetFunction target_value(const YAML::Node& node, const std::string& path) {
  require_map(node, path);
  const std::string type =
      scalar_text(required(node, path, "type"), path + ".type");
  if (type == "polynomial") {
    reject_unknown(node, path, {"type", "center", "coeffs"});
    YAML::Node body = YAML::Clone(node);
    body.remove("type");
    return TargetFunction(polynomial_value(body, path));
  }
  if (type == "rational") {
    reject_unknown(node, path, {"type", "numerator", "denominator"});
    return TargetFunction(
        polynomial_value(required(node, path, "numerator"),
                         path + ".numerator"),
        polynomial_value(required(node, path, "denominator"),
                         path + ".denominator"));
  }
  if (type == "table") {
    reject_unknown(node, path, {"type", "values"});
    const YAML::Node values = required(node, path, "values");
    if (!values.IsSequence()) fail(path + ".values", "expected a list");
    std::vector<ComplexScalar> v;
    std::size_t i = 0;
    for (const auto& entry : values) {
      v.push_back(
          complex_value(entry, path + ".values[" + std::to_string(i) + "]"));
      ++i;
    }
    return TargetFunction(std::move(v));
  }
  fail(path + ".type", "unknown target type '" + type + "'");
}

SetSpec set_value(const YAML::Node& node, const std::string& path) {
  require_map(node, path);
  const std::string type =
      scalar_text(required(node, path, "type"), path + ".type");
  if (type == "disk") {
    reject_unknown(node, path, {"type", "center", "radius"});
    return SetSpec::disk(
        complex_value(required(node, path, "center"), path + ".center"),
        number(required(node, path, "radius"), path + ".radius"));
  }
  if (type == "segment") {
    reject_unknown(node, path, {"type", "a", "b"});
    return SetSpec::segment(complex_value(required(node, path, "a"), path + ".a"),
                            complex_value(required(node, path, "b"), path + ".b"));
  }
  if (type == "polygon") {
    reject_unknown(node, path, {"type", "vertices", "filled"});
    const YAML::Node vertices = required(node, path, "vertices");
    if (!vertices.IsSequence()) fail(path + ".vertices", "expected a list");
    std::vector<ComplexScalar> v;
    std::size_t i = 0;
    for (const auto& entry : vertices) {
      v.push_back(complex_value(
          entry, path + ".vertices[" + std::to_string(i) + "]"));
      ++i;
    }
    const bool filled = node["filled"]
                            ? boolean(node["filled"], path + ".filled")
                            : true;
    return SetSpec::polygon(std::move(v), filled);
  }
  if (type == "union") {
    reject_unknown(node, path, {"type", "members"});
    const YAML::Node members = required(node, path, "members");
    if (!members.IsSequence()) fail(path + ".members", "expected a list");
    std::vector<SetSpec> m;
    std::size_t i = 0;
    for (const auto& entry : members) {
      m.push_back(
          set_value(entry, path + ".members[" + std::to_string(i) + "]"));
      ++i;
    }
    return SetSpec::set_union(std::move(m));
  }
  fail(path + ".type", "unknown set type '" + type + "'");
}

SampledSet sampled_set_value(const YAML::Node& node, const std::string& path,
                             const std::set<std::string>& allowed = {
                                 "set", "density"}) {
  require_map(node, path);
  reject_unknown(node, path, allowed);
  const SetSpec spec = set_value(required(node, path, "set"), path + ".set");
  const double density =
      number(required(node, path, "density"), path + ".density");
  return sample(spec, density);
}

SequenceSpec sequence_value(const YAML::Node& node, const std::string& path) {
  require_map(node, path);
  const std::string type =
      scalar_text(required(node, path, "type"), path + ".type");
  if (type == "formula") {
    reject_unknown(node, path, {"type", "expr"});
    return SequenceSpec::formula(
        scalar_text(required(node, path, "expr"), path + ".expr"));
  }
  if (type == "table") {
    reject_unknown(node, path, {"type", "values"});
    const YAML::Node values = required(node, path, "values");
    if (!values.IsSequence()) fail(path + ".values", "expected a list");
    std::vector<long long> v;
    std::size_t i = 0;
    for (const auto& entry : values) {
      v.push_back(integer(entry, path + ".values[" + std::to_string(i) + "]"));
      ++i;
    }
    return SequenceSpec::table(std::move(v));
  }
  fail(path + ".type", "unknown sequence type '" + type + "'");
}

SolverOptions solver_value(const YAML::Node& node, const std::string& path) {
  SolverOptions options;
  if (!node) return options;
  require_map(node, path);
  reject_unknown(node, path, {"tol", "max-iters", "facets"});
  if (node["tol"]) options.tol = number(node["tol"], path + ".tol");
  if (node["max-iters"]) {
    options.max_iters =
        static_cast<int>(integer(node["max-iters"], path + ".max-iters"));
  }
  if (node["facets"]) {
    options.facets =
        static_cast<int>(integer(node["facets"], path + ".facets"));
  }
  return options;
}

ConstructionCaps caps_value(const YAML::Node& node, const std::string& path) {
  ConstructionCaps caps;
  if (!node) return caps;
  require_map(node, path);
  reject_unknown(node, path,
                 {"runge-max-degree", "max-window-degree", "max-candidates",
                  "horizon", "oversample"});
  if (node["runge-max-degree"]) {
    caps.runge_max_degree = static_cast<int>(
        integer(node["runge-max-degree"], path + ".runge-max-degree"));
  }
  if (node["max-window-degree"]) {
    caps.max_window_degree = static_cast<int>(
        integer(node["max-window-degree"], path + ".max-window-degree"));
  }
  if (node["max-candidates"]) {
    caps.max_candidates = static_cast<int>(
        integer(node["max-candidates"], path + ".max-candidates"));
  }
  if (node["horizon"]) {
    caps.horizon = integer(node["horizon"], path + ".horizon");
  }
  if (node["oversample"]) {
    caps.oversample = number(node["oversample"], path + ".oversample");
  }
  return caps;
}

Tolerances tolerances_value(const YAML::Node& node, const std::string& path) {
  require_map(node, path);
  reject_unknown(node, path, {"epsilon", "s"});
  // No defaults here: the bounds are the contract.
  return Tolerances(number(required(node, path, "epsilon"), path + ".epsilon"),
                    integer(required(node, path, "s"), path + ".s"));
}

YAML::Node load_root(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw ParseError("config: cannot parse '" + path + "': " + e.what());
  }
  if (!root.IsMap()) throw ParseError("config: top level must be a map");
  const YAML::Node format = root["format"];
  if (!format) throw ParseError("config.format: missing 'format: 1' line");
  if (scalar_text(format, "format") != "1") {
    throw ParseError("config.format: unsupported version '" +
                     scalar_text(format, "format") + "'");
  }
  return root;
}

}  // namespace

SolveConfig load_solve_config(const std::string& path) {
  const YAML::Node root = load_root(path);
  reject_unknown(root, "", {"format", "center", "window", "grids", "solver"});
  SolveConfig config;
  config.task.center = complex_value(required(root, "", "center"), "center");
  const YAML::Node window = require_map(required(root, "", "window"), "window");
  reject_unknown(window, "window", {"low", "high"});
  config.task.window =
      DegreeWindow(static_cast<int>(integer(required(window, "window", "low"),
                                            "window.low")),
                   static_cast<int>(integer(required(window, "window", "high"),
                                            "window.high")));
  const YAML::Node grids = required(root, "", "grids");
  if (!grids.IsSequence()) fail("grids", "expected a list");
  std::size_t i = 0;
  for (const auto& entry : grids) {
    const std::string gpath = "grids[" + std::to_string(i) + "]";
    const SampledSet grid =
        sampled_set_value(entry, gpath, {"set", "density", "target"});
    const TargetFunction target =
        target_value(required(entry, gpath, "target"), gpath + ".target");
    config.task.grids.push_back({grid, target.evaluate(grid.points)});
    ++i;
  }
  config.solver = solver_value(root["solver"], "solver");
  return config;
}

ConstructConfig load_construct_config(const std::string& path) {
  const YAML::Node root = load_root(path);
  reject_unknown(root, "",
                 {"format", "center", "sets", "targets", "sequence",
                  "tolerances", "solver", "caps", "omega"});
  ConstructConfig config;
  config.inputs.zeta0 = complex_value(required(root, "", "center"), "center");

  const YAML::Node sets = require_map(required(root, "", "sets"), "sets");
  reject_unknown(sets, "sets", {"L", "K1", "K2"});
  config.inputs.l_set = sampled_set_value(required(sets, "sets", "L"), "sets.L");
  config.inputs.k1_set =
      sampled_set_value(required(sets, "sets", "K1"), "sets.K1");
  config.inputs.k2_set =
      sampled_set_value(required(sets, "sets", "K2"), "sets.K2");

  const YAML::Node targets =
      require_map(required(root, "", "targets"), "targets");
  reject_unknown(targets, "targets", {"g", "f1", "f2"});
  config.inputs.g = target_value(required(targets, "targets", "g"), "targets.g");
  config.inputs.f1 =
      target_value(required(targets, "targets", "f1"), "targets.f1");
  config.inputs.f2 =
      target_value(required(targets, "targets", "f2"), "targets.f2");

  config.inputs.seq =
      sequence_value(required(root, "", "sequence"), "sequence");
  config.inputs.tolerances =
      tolerances_value(required(root, "", "tolerances"), "tolerances");
  config.inputs.solver = solver_value(root["solver"], "solver");
  config.inputs.caps = caps_value(root["caps"], "caps");
  if (root["omega"]) {
    config.inputs.omega = set_value(root["omega"], "omega");
  }
  return config;
}

ProbeConfig load_probe_config(const std::string& path) {
  const YAML::Node root = load_root(path);
  reject_unknown(root, "",
                 {"format", "target", "K", "L", "schedule", "solver"});
  ProbeConfig config;
  config.f = target_value(required(root, "", "target"), "target");
  config.k_set = sampled_set_value(required(root, "", "K"), "K");
  config.l_set = sampled_set_value(required(root, "", "L"), "L");

  const YAML::Node sched = required(root, "", "schedule");
  require_map(sched, "schedule");
  if (sched["rows"]) {
    reject_unknown(sched, "schedule", {"rows"});
    const YAML::Node rows = sched["rows"];
    if (!rows.IsSequence()) fail("schedule.rows", "expected a list");
    std::size_t i = 0;
    for (const auto& entry : rows) {
      const std::string rpath = "schedule.rows[" + std::to_string(i) + "]";
      require_map(entry, rpath);
      reject_unknown(entry, rpath, {"tau", "sigma"});
      config.schedule.entries.push_back(
          {static_cast<int>(integer(required(entry, rpath, "tau"),
                                    rpath + ".tau")),
           static_cast<int>(integer(required(entry, rpath, "sigma"),
                                    rpath + ".sigma"))});
      ++i;
    }
  } else {
    reject_unknown(sched, "schedule", {"tau", "sigma", "from", "to"});
    const SequenceSpec tau = SequenceSpec::formula(
        scalar_text(required(sched, "schedule", "tau"), "schedule.tau"));
    const SequenceSpec sigma = SequenceSpec::formula(
        scalar_text(required(sched, "schedule", "sigma"), "schedule.sigma"));
    const long long from =
        integer(required(sched, "schedule", "from"), "schedule.from");
    const long long to =
        integer(required(sched, "schedule", "to"), "schedule.to");
    if (from < 1 || to < from) fail("schedule", "need 1 <= from <= to");
    for (long long n = from; n <= to; ++n) {
      config.schedule.entries.push_back(
          {static_cast<int>(tau.value(n)), static_cast<int>(sigma.value(n))});
    }
  }
  validate(config.schedule);
  config.solver = solver_value(root["solver"], "solver");
  return config;
}

}  // namespace dualtaylor::cli
