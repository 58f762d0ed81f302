#include "ctlab/transport/equicontinuity.hpp"

#include <cmath>
#include <limits>

#include "ctlab/errors.hpp"
#include "ctlab/measures/weak_metric.hpp"

namespace ctlab {

EquicontinuityReport equicontinuity_check(const MeasureCurve& mu, const VectorField& v,
                                          const TestFamily& family, NormOptions norm_opt) {
  if (!v.sup_norm() && !v.sampling_box() && !norm_opt.box)
    throw PreconditionError("equicontinuity_check: field has no sup-norm data");
  EquicontinuityReport rep;
  norm_opt.time_intervals = std::max<std::size_t>(norm_opt.time_intervals / 8, 4);
  for (std::size_t i = 1; i < mu.size(); ++i) {
    norm_opt.t0 = mu.times()[i - 1];
    norm_opt.t1 = mu.times()[i];
    const double den = c_norm(v, norm_opt).value;
    const double num = weak_distance(mu[i - 1], mu[i], family).value;
    double ratio;
    if (den > 0.0) {
      ratio = num / den;
    } else if (num == 0.0) {
      ratio = std::numeric_limits<double>::quiet_NaN();
      ++rep.skipped;
    } else {
      ratio = std::numeric_limits<double>::infinity();
    }
    rep.ratios.push_back(ratio);
    if (!std::isnan(ratio) && ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_interval = i - 1;
    }
  }
  return rep;
}

}  // namespace ctlab
