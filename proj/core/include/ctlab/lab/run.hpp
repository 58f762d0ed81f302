#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctlab/flow/curve.hpp"
#include "ctlab/lab/scenario.hpp"

namespace ctlab {

enum class CheckStatus { pass, fail, skipped };
const char* to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  double defect = 0.0;
  double tolerance = 0.0;
  double error_bound = 0.0;  ///< metric tail or quadrature proxy backing the defect
  std::string detail;
};

struct RunReport {
  std::string scenario;
  std::vector<CheckResult> checks;
  std::map<std::string, std::string> provenance;
  double wall_seconds = 0.0;  ///< report only; never written to data files

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
  std::string to_json() const;
};

struct RunOptions {
  std::optional<std::filesystem::path> out;  ///< overrides the scenario output (a subdirectory per scenario)
  std::optional<double> tol;                 ///< overrides solver.tol
  std::optional<std::size_t> metric_depth;   ///< overrides metric.depth
};

/// Solves the scenario and runs its checks in declaration order. A check
/// passes iff its defect is at most its tolerance; a check that throws fails
/// with an infinite defect.
RunReport run_scenario(const Scenario& sc, const RunOptions& opt = {});

/// The two extremal solutions leaving a branch point, sampled on the grid
/// nodes at or after S. Known in closed form for sqrt_branch at the origin:
/// (t - S)^2 e1 and 0.
struct BranchPair {
  Curve upper;
  Curve lower;
};
BranchPair extremal_branches(const std::string& field, const FieldParams& params, double S, const Point& p,
                             const std::vector<double>& grid);

}  // namespace ctlab
