#include "ctlab/superposition/endpoint.hpp"

#include "ctlab/errors.hpp"
#include "ctlab/measures/weak_metric.hpp"

namespace ctlab {

EndpointReport endpoint_transport_check(const VectorField& v, const MeasureCurve& mu, const TestFamily& family,
                                        CertificatePolicy policy, const IntegrateOptions& opt) {
  if (policy == CertificatePolicy::require && !v.osgood_certificate())
    throw PreconditionError("endpoint_transport_check: field '" + v.name() + "' has no Osgood certificate");
  if (mu.dim() != v.dim()) throw PreconditionError("endpoint_transport_check: dimension mismatch");
  const auto& grid = mu.times();
  const std::size_t n = grid.size();
  EndpointReport rep;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::vector<double> targets(grid.begin() + static_cast<long>(i) + 1, grid.end());
    std::vector<std::vector<Atom>> pushed(targets.size());
    for (const auto& a : mu[i].atoms()) {
      const Curve c = integrate(v, grid[i], a.x, targets, opt);
      for (std::size_t k = 0; k < targets.size(); ++k) pushed[k].push_back({c.at_node(targets[k]), a.w});
    }
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const std::size_t j = i + 1 + k;
      const double d = weak_distance(mu[j], SignedMeasure(mu.dim(), std::move(pushed[k])), family).upper();
      ++rep.pairs;
      if (d > rep.worst_pair_defect || rep.pairs == 1) {
        rep.worst_pair_defect = d;
        rep.worst_i = i;
        rep.worst_j = j;
      }
      if (i == 0 && j == n - 1) rep.endpoint_defect = d;
    }
  }
  return rep;
}

}  // namespace ctlab
