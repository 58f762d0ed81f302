#pragma once

#include <string>
#include <vector>

#include "ctlab/measures/signed_measure.hpp"

namespace ctlab {

/// A candidate solution t -> mu_t sampled on a time grid.
class MeasureCurve {
 public:
  MeasureCurve(std::vector<double> times, std::vector<SignedMeasure> measures,
               std::string provenance = "given", bool tracked = false);

  std::size_t size() const { return times_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<SignedMeasure>& measures() const { return measures_; }
  const SignedMeasure& operator[](std::size_t i) const { return measures_[i]; }
  const std::string& provenance() const { return provenance_; }
  /// Atom i of every node is the same particle carrying the same weight.
  bool tracked() const { return tracked_; }
  /// sup over nodes of the total variation norm.
  double sup_tv_norm() const;

 private:
  std::vector<double> times_;
  std::vector<SignedMeasure> measures_;
  std::string provenance_;
  bool tracked_;
  std::size_t dim_;
};

/// Per-node total variation norm.
std::vector<double> norm_trace(const MeasureCurve& mu);

}  // namespace ctlab
