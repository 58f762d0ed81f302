#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ctlab/errors.hpp"
#include "ctlab/fields/catalog.hpp"
#include "ctlab/flow/integrate.hpp"
#include "ctlab/measures/signed_measure.hpp"

namespace ctlab {

/// Malformed scenario; carries the 1-based line and the offending key path.
class ScenarioError : public PreconditionError {
 public:
  ScenarioError(const std::string& source, int line, const std::string& key, const std::string& what);
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

enum class InitialKind { atoms, density, branch };

struct InitialSpec {
  InitialKind kind = InitialKind::atoms;
  double time = 0.0;
  std::vector<Atom> atoms;  ///< kind atoms
  // kind density: smooth bump of peak `height` and radius `radius` on a
  // cells x cells grid over the field's sampling box
  std::size_t cells = 64;
  Point center;
  double radius = 0.3;
  double height = 1.0;
  std::size_t subcells = 2;
  Point point;  ///< kind branch: the branch point at `time`
};

struct CheckSpec {
  std::string name;
  double tol = 0.0;
  std::map<std::string, double> options;
};

struct Scenario {
  std::string name;
  std::string source;
  std::string field;
  FieldParams params;
  double horizon = 1.0;
  std::size_t nodes = 11;  ///< uniform time grid on [0, horizon]
  InitialSpec initial;
  IntegrateOptions solver;
  std::size_t metric_depth = 64;
  double metric_radius = 8.0;
  std::vector<CheckSpec> checks;
  std::string output;  ///< empty: no files written

  const CheckSpec* check(const std::string& name) const;
  std::vector<double> time_grid() const;
};

/// Check names accepted in the `checks` map.
const std::vector<std::string>& known_checks();

/// Parses the YAML scenario format; every violation throws ScenarioError.
Scenario parse_scenario(const std::string& text, const std::string& source = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace ctlab
