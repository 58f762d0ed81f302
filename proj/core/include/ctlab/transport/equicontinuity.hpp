#pragma once

#include <cstddef>
#include <vector>

#include "ctlab/fields/norms.hpp"
#include "ctlab/measures/test_family.hpp"
#include "ctlab/transport/measure_curve.hpp"

namespace ctlab {

struct EquicontinuityReport {
  double worst_ratio = 0.0;
  std::size_t worst_interval = 0;
  std::vector<double> ratios;      ///< per adjacent node pair; NaN when skipped
  std::size_t skipped = 0;         ///< intervals where the field vanishes
};

/// Checks d(mu_s, mu_t) <= integral_s^t ||V||_inf on adjacent grid nodes and
/// reports the worst ratio (lower value of the truncated metric over the
/// time integral of the sup norm). Intervals with a zero denominator are
/// skipped; a nonzero numerator there is reported as an infinite ratio.
EquicontinuityReport equicontinuity_check(const MeasureCurve& mu, const VectorField& v,
                                          const TestFamily& family, NormOptions norm_opt = {});

}  // namespace ctlab
