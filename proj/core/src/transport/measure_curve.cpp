#include "ctlab/transport/measure_curve.hpp"

#include <algorithm>
#include <cmath>

#include "ctlab/errors.hpp"

namespace ctlab {

MeasureCurve::MeasureCurve(std::vector<double> times, std::vector<SignedMeasure> measures,
                           std::string provenance, bool tracked)
    : times_(std::move(times)),
      measures_(std::move(measures)),
      provenance_(std::move(provenance)),
      tracked_(tracked),
      dim_(0) {
  if (times_.empty() || times_.size() != measures_.size())
    throw PreconditionError("measure curve: need one measure per time node");
  dim_ = measures_.front().dim();
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i])) throw PreconditionError("measure curve: non-finite time");
    if (i > 0 && !(times_[i] > times_[i - 1]))
      throw PreconditionError("measure curve: time grid must be strictly increasing");
    if (measures_[i].dim() != dim_) throw PreconditionError("measure curve: inconsistent dimension");
  }
  if (tracked_) {
    const auto& a0 = measures_.front().atoms();
    for (const auto& m : measures_) {
      if (m.atoms().size() != a0.size()) throw PreconditionError("measure curve: tracked atom counts differ");
      for (std::size_t k = 0; k < a0.size(); ++k)
        if (m.atoms()[k].w != a0[k].w) throw PreconditionError("measure curve: tracked weights differ");
    }
  }
}

double MeasureCurve::sup_tv_norm() const {
  double s = 0.0;
  for (const auto& m : measures_) s = std::max(s, m.tv_norm());
  return s;
}

std::vector<double> norm_trace(const MeasureCurve& mu) {
  std::vector<double> out;
  out.reserve(mu.size());
  for (const auto& m : mu.measures()) out.push_back(m.tv_norm());
  return out;
}

}  // namespace ctlab
