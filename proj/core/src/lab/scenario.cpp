#include "ctlab/lab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <yaml-cpp/yaml.h>

#include "ctlab/quadrature.hpp"

namespace ctlab {

ScenarioError::ScenarioError(const std::string& source, int line, const std::string& key, const std::string& what)
    : PreconditionError(source + ":" + std::to_string(line) + ": " + (key.empty() ? "" : "'" + key + "': ") + what),
      line_(line),
      key_(key) {}

const CheckSpec* Scenario::check(const std::string& n) const {
  for (const auto& c : checks)
    if (c.name == n) return &c;
  return nullptr;
}

std::vector<double> Scenario::time_grid() const {
  std::vector<double> g = uniform_grid(0.0, horizon, nodes);
  if (std::find(g.begin(), g.end(), initial.time) == g.end()) {
    g.push_back(initial.time);
    std::sort(g.begin(), g.end());
  }
  return g;
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"weak_residual",  "equicontinuity", "norm_trace",
                                              "marginal_defect", "endpoint_transport", "markov",
                                              "grid_mass",      "cross_validate", "reparam"};
  return names;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& key, const std::string& what) const {
    throw ScenarioError(source_, n.IsDefined() ? n.Mark().line + 1 : 0, key, what);
  }

  void only_keys(const YAML::Node& map, const std::string& path, std::initializer_list<const char*> allowed) const {
    if (!map.IsMap()) fail(map, path, "expected a mapping");
    for (const auto& kv : map) {
      const auto k = kv.first.as<std::string>();
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
        fail(kv.first, path.empty() ? k : path + "." + k, "unknown key");
    }
  }

  const YAML::Node require(const YAML::Node& map, const char* key, const std::string& path) const {
    const YAML::Node n = map[key];
    if (!n) fail(map, join(path, key), "missing required key");
    return n;
  }

  double number(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, key, "expected a number");
    try {
      return n.as<double>();
    } catch (const YAML::Exception&) {
      fail(n, key, "expected a number, got '" + n.Scalar() + "'");
    }
  }

  double positive(const YAML::Node& n, const std::string& key) const {
    const double x = number(n, key);
    if (!(x > 0.0) || !std::isfinite(x)) fail(n, key, "must be positive");
    return x;
  }

  std::size_t count(const YAML::Node& n, const std::string& key, std::size_t min) const {
    const double x = number(n, key);
    if (x != std::floor(x) || x < static_cast<double>(min))
      fail(n, key, "expected an integer >= " + std::to_string(min));
    return static_cast<std::size_t>(x);
  }

  std::string text(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, key, "expected a string");
    return n.as<std::string>();
  }

  std::vector<double> numbers(const YAML::Node& n, const std::string& key) const {
    if (n.IsScalar()) return {number(n, key)};
    if (!n.IsSequence()) fail(n, key, "expected a number or a list of numbers");
    std::vector<double> out;
    for (const auto& e : n) out.push_back(number(e, key));
    return out;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  std::string source_;
};

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source) {
  Reader r(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ScenarioError(source, e.mark.line + 1, "", e.msg);
  }
  r.only_keys(root, "", {"name", "field", "horizon", "grid", "initial", "solver", "metric", "checks", "output"});

  Scenario sc;
  sc.source = source;
  sc.name = r.text(r.require(root, "name", ""), "name");
  if (root["horizon"]) sc.horizon = r.positive(root["horizon"], "horizon");

  const YAML::Node field = r.require(root, "field", "");
  r.only_keys(field, "field", {"name", "params"});
  const YAML::Node field_name = r.require(field, "name", "field");
  sc.field = r.text(field_name, "field.name");
  const auto catalog = catalog_list();
  if (std::none_of(catalog.begin(), catalog.end(), [&](const CatalogEntry& e) { return e.name == sc.field; }))
    r.fail(field_name, "field.name", "unknown catalog field '" + sc.field + "'");
  if (const YAML::Node p = field["params"]) {
    if (!p.IsMap()) r.fail(p, "field.params", "expected a mapping");
    for (const auto& kv : p) {
      const auto k = kv.first.as<std::string>();
      sc.params[k] = r.numbers(kv.second, "field.params." + k);
    }
  }
  if (sc.params.count("horizon") == 0) sc.params["horizon"] = {sc.horizon};
  std::size_t dim = 0;
  try {
    dim = builtin_field(sc.field, sc.params).dim();
  } catch (const PreconditionError& e) {
    r.fail(field, "field", e.what());
  }

  if (const YAML::Node g = root["grid"]) {
    r.only_keys(g, "grid", {"nodes"});
    sc.nodes = r.count(r.require(g, "nodes", "grid"), "grid.nodes", 2);
  }

  const YAML::Node init = r.require(root, "initial", "");
  const std::string kind = r.text(r.require(init, "kind", "initial"), "initial.kind");
  auto point_of = [&](const YAML::Node& n, const std::string& key) {
    Point p = r.numbers(n, key);
    if (p.size() != dim) r.fail(n, key, "expected " + std::to_string(dim) + " coordinates");
    return p;
  };
  if (kind == "atoms") {
    r.only_keys(init, "initial", {"kind", "time", "atoms"});
    sc.initial.kind = InitialKind::atoms;
    const YAML::Node atoms = r.require(init, "atoms", "initial");
    if (!atoms.IsSequence() || atoms.size() == 0) r.fail(atoms, "initial.atoms", "expected a nonempty list");
    for (const auto& a : atoms) {
      r.only_keys(a, "initial.atoms[]", {"w", "x"});
      sc.initial.atoms.push_back(
          {point_of(r.require(a, "x", "initial.atoms[]"), "initial.atoms[].x"),
           r.number(r.require(a, "w", "initial.atoms[]"), "initial.atoms[].w")});
    }
  } else if (kind == "density") {
    r.only_keys(init, "initial", {"kind", "time", "cells", "center", "radius", "height", "subcells"});
    sc.initial.kind = InitialKind::density;
    if (dim != 2) r.fail(init, "initial.kind", "density data needs a planar field");
    sc.initial.center = Point(2, 0.0);
    if (init["cells"]) sc.initial.cells = r.count(init["cells"], "initial.cells", 2);
    if (init["center"]) sc.initial.center = point_of(init["center"], "initial.center");
    if (init["radius"]) sc.initial.radius = r.positive(init["radius"], "initial.radius");
    if (init["height"]) {
      sc.initial.height = r.positive(init["height"], "initial.height");
      if (sc.initial.height > 1.0) r.fail(init["height"], "initial.height", "must lie in (0, 1]");
    }
    if (init["subcells"]) sc.initial.subcells = r.count(init["subcells"], "initial.subcells", 1);
  } else if (kind == "branch") {
    r.only_keys(init, "initial", {"kind", "time", "point"});
    sc.initial.kind = InitialKind::branch;
    sc.initial.point = point_of(r.require(init, "point", "initial"), "initial.point");
  } else {
    r.fail(init["kind"], "initial.kind", "expected atoms, density or branch");
  }
  if (init["time"]) {
    sc.initial.time = r.number(init["time"], "initial.time");
    if (sc.initial.time < 0.0 || sc.initial.time > sc.horizon)
      r.fail(init["time"], "initial.time", "must lie in [0, horizon]");
  }

  if (const YAML::Node s = root["solver"]) {
    r.only_keys(s, "solver", {"tol", "scheme"});
    if (s["tol"]) sc.solver.tol = r.positive(s["tol"], "solver.tol");
    if (s["scheme"]) {
      const std::string name = r.text(s["scheme"], "solver.scheme");
      if (name == "adaptive_rk")
        sc.solver.scheme = Scheme::adaptive_rk;
      else if (name == "euler")
        sc.solver.scheme = Scheme::euler;
      else
        r.fail(s["scheme"], "solver.scheme", "expected adaptive_rk or euler");
    }
  }
  if (const YAML::Node m = root["metric"]) {
    r.only_keys(m, "metric", {"depth", "radius"});
    if (m["depth"]) sc.metric_depth = r.count(m["depth"], "metric.depth", 1);
    if (m["radius"]) sc.metric_radius = r.positive(m["radius"], "metric.radius");
  }

  if (const YAML::Node checks = root["checks"]) {
    if (!checks.IsMap()) r.fail(checks, "checks", "expected a mapping of check names");
    for (const auto& kv : checks) {
      const auto name = kv.first.as<std::string>();
      const std::string path = "checks." + name;
      const auto& known = known_checks();
      if (std::find(known.begin(), known.end(), name) == known.end()) r.fail(kv.first, path, "unknown check");
      CheckSpec c{name, 0.0, {}};
      if (!kv.second.IsMap()) r.fail(kv.second, path, "expected a mapping with at least 'tol'");
      for (const auto& o : kv.second) {
        const auto k = o.first.as<std::string>();
        if (k == "tol") {
          c.tol = r.positive(o.second, path + ".tol");
        } else if ((name == "weak_residual" && k == "bumps") || (name == "markov" && k == "seeds_per_axis")) {
          c.options[k] = static_cast<double>(r.count(o.second, path + "." + k, 1));
        } else {
          r.fail(o.first, path + "." + k, "unknown option");
        }
      }
      if (c.tol == 0.0) r.fail(kv.second, path + ".tol", "missing required key");
      const InitialKind k = sc.initial.kind;
      if ((name == "grid_mass" || name == "cross_validate") && k != InitialKind::density)
        r.fail(kv.first, path, "needs density initial data");
      if (name == "reparam" && k != InitialKind::branch) r.fail(kv.first, path, "needs branch initial data");
      if (name == "marginal_defect" && k == InitialKind::branch)
        r.fail(kv.first, path, "needs nonnegative initial data");
      sc.checks.push_back(std::move(c));
    }
  }
  if (root["output"]) sc.output = r.text(root["output"], "output");
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ScenarioError(path.string(), 0, "", "cannot open file");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_scenario(ss.str(), path.string());
}

}  // namespace ctlab
