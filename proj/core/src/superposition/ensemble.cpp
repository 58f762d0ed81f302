#include "ctlab/superposition/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "ctlab/errors.hpp"
#include "ctlab/measures/weak_metric.hpp"

namespace ctlab {

CurveEnsemble::CurveEnsemble(std::size_t dim, std::vector<WeightedCurve> members)
    : dim_(dim), members_(std::move(members)) {
  for (const auto& m : members_) {
    if (!(m.weight >= 0.0) || !std::isfinite(m.weight))
      throw PreconditionError("CurveEnsemble: weights must be nonnegative and finite");
    if (m.curve.dim() != dim_) throw PreconditionError("CurveEnsemble: curve dimension mismatch");
  }
}

double CurveEnsemble::total_weight() const {
  double s = 0.0;
  for (const auto& m : members_) s += m.weight;
  return s;
}

SignedMeasure CurveEnsemble::evaluate(double t) const {
  std::vector<Atom> atoms;
  atoms.reserve(members_.size());
  for (const auto& m : members_) atoms.push_back({m.curve.at_node(t), m.weight});
  return SignedMeasure(dim_, std::move(atoms));
}

CurveEnsemble CurveEnsemble::with_weight(std::size_t i, double w) const {
  auto copy = members_;
  copy.at(i).weight = w;
  return CurveEnsemble(dim_, std::move(copy));
}

CurveEnsemble superpose_nonneg(const MeasureCurve& mu, const VectorField& v, const IntegrateOptions& opt) {
  if (!mu.tracked()) throw PreconditionError("superpose_nonneg: curve must track its atoms");
  const SignedMeasure& first = mu[0];
  if (!first.nonnegative()) throw PreconditionError("superpose_nonneg: signed input rejected");
  if (std::abs(first.mass() - 1.0) > 1e-12)
    throw PreconditionError("superpose_nonneg: total mass must be 1 (normalize first)");
  if (mu.dim() != v.dim()) throw PreconditionError("superpose_nonneg: dimension mismatch");

  const auto& grid = mu.times();
  std::vector<WeightedCurve> members;
  members.reserve(first.atoms().size());
  for (std::size_t a = 0; a < first.atoms().size(); ++a) {
    Curve c = integrate(v, grid.front(), first.atoms()[a].x, grid, opt);
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (distance(c.at_node(grid[i]), mu[i].atoms()[a].x) > 10.0 * opt.tol)
        throw PreconditionError("superpose_nonneg: atom " + std::to_string(a) +
                                " does not follow a characteristic");
    members.push_back({first.atoms()[a].w, std::move(c)});
  }
  return CurveEnsemble(mu.dim(), std::move(members));
}

double marginal_defect(const CurveEnsemble& nu, const MeasureCurve& mu, const TestFamily& family) {
  if (nu.dim() != mu.dim()) throw PreconditionError("marginal_defect: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    worst = std::max(worst, weak_distance(nu.evaluate(mu.times()[i]), mu[i], family).upper());
  return worst;
}

}  // namespace ctlab
