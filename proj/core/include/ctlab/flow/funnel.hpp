#pragma once

#include <optional>
#include <vector>

#include "ctlab/flow/integrate.hpp"

namespace ctlab {

struct FunnelRow {
  double delta = 0.0;
  Point upper;  ///< image of x + delta e
  Point lower;  ///< image of x - delta e
  double spread = 0.0;
};

/// Images of x +- delta e at the horizon, for a decreasing list of deltas.
///
/// This is a numerical indicator, not a proof: a spread that stays above
/// 1e3 * delta at the smallest delta flags a non-collapsing funnel. Fields
/// with a log-Lipschitz fixed point at x also trip the flag, since their
/// spread decays only like delta^{exp(-Ct)}.
struct FunnelTable {
  double start_time = 0.0;
  double horizon = 0.0;
  Point origin;
  Point direction;
  std::vector<FunnelRow> rows;

  static constexpr double kIndicatorFactor = 1e3;
  bool non_unique_indicator() const {
    return !rows.empty() && rows.back().spread > kIndicatorFactor * rows.back().delta;
  }
};

struct FunnelOptions {
  std::optional<Point> direction;  ///< defaults to the first coordinate axis
  IntegrateOptions integrate;
};

FunnelTable funnel_probe(const VectorField& v, double s, const Point& x,
                         const std::vector<double>& deltas, double horizon,
                         const FunnelOptions& opt = {});

}  // namespace ctlab
