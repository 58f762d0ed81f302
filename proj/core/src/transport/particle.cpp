#include "ctlab/transport/particle.hpp"

#include <algorithm>

#include "ctlab/errors.hpp"

namespace ctlab {

MeasureCurve particle_solve(const VectorField& v, double S, const SignedMeasure& mu_S,
                            const std::vector<double>& grid, const IntegrateOptions& opt) {
  if (std::find(grid.begin(), grid.end(), S) == grid.end())
    throw PreconditionError("particle_solve: S must be a node of the time grid");
  if (mu_S.dim() != v.dim()) throw PreconditionError("particle_solve: dimension mismatch");
  if (grid.size() < 2) throw PreconditionError("particle_solve: need at least two time nodes");

  std::vector<std::vector<Atom>> per_node(grid.size());
  for (const auto& atom : mu_S.atoms()) {
    const Curve c = integrate(v, S, atom.x, grid, opt);
    for (std::size_t i = 0; i < grid.size(); ++i) per_node[i].push_back({c.at_node(grid[i]), atom.w});
  }
  std::vector<SignedMeasure> ms;
  ms.reserve(grid.size());
  for (auto& atoms : per_node) ms.emplace_back(mu_S.dim(), std::move(atoms));
  return MeasureCurve(grid, std::move(ms), std::string("particle:") + to_string(opt.scheme), true);
}

}  // namespace ctlab
