#pragma once

#include <cstddef>
#include <vector>

#include "ctlab/flow/integrate.hpp"
#include "ctlab/measures/test_family.hpp"
#include "ctlab/transport/measure_curve.hpp"

namespace ctlab {

struct WeightedCurve {
  double weight = 0.0;
  Curve curve;
};

/// Finite superposition nu = sum_i w_i delta_{gamma_i} of curves in R^d.
class CurveEnsemble {
 public:
  explicit CurveEnsemble(std::size_t dim) : dim_(dim) {}
  /// Weights must be nonnegative and finite; curves share the dimension.
  CurveEnsemble(std::size_t dim, std::vector<WeightedCurve> members);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<WeightedCurve>& members() const { return members_; }
  double total_weight() const;

  /// (ev_t)# nu, one atom per curve in member order; t must be a node of
  /// every curve.
  SignedMeasure evaluate(double t) const;
  CurveEnsemble with_weight(std::size_t i, double w) const;

 private:
  std::size_t dim_;
  std::vector<WeightedCurve> members_;
};

/// One characteristic per atom of a tracked nonnegative curve of unit mass,
/// weighted by the atom's mass. Each characteristic is re-integrated from the
/// first node with `opt`, so its ode_residual is below opt.tol; the curve's
/// atoms must agree with the characteristics at every node within 10 * tol.
CurveEnsemble superpose_nonneg(const MeasureCurve& mu, const VectorField& v, const IntegrateOptions& opt = {});

/// max over nodes of weak_distance((ev_t)# nu, mu_t).upper().
double marginal_defect(const CurveEnsemble& nu, const MeasureCurve& mu, const TestFamily& family);

}  // namespace ctlab
