#include "ctlab/transport/cross_validate.hpp"

#include <algorithm>

#include "ctlab/errors.hpp"
#include "ctlab/transport/particle.hpp"

namespace ctlab {

double CrossValidateTable::worst_upper() const {
  double w = 0.0;
  for (const auto& r : rows) w = std::max(w, r.distance.upper());
  return w;
}

CrossValidateTable cross_validate(const VectorField& v, const DensityGrid& initial,
                                  const std::vector<double>& times, const TestFamily& family,
                                  const CrossValidateOptions& opt) {
  for (double x : initial.values)
    if (x < 0.0) throw PreconditionError("cross_validate: initial density must be nonnegative");
  const DensityCurve grid = grid_solve(v, initial, times, opt.grid);
  const SignedMeasure seeds = initial.stratified_atoms(opt.subcells);
  const MeasureCurve particles = particle_solve(v, times.front(), seeds, times, opt.integrate);

  CrossValidateTable table;
  table.cells = initial.nx * initial.ny;
  table.particles = seeds.atoms().size();
  for (std::size_t i = 0; i < times.size(); ++i)
    table.rows.push_back({times[i], weak_distance(grid.slice(i).to_atoms(), particles[i], family)});
  return table;
}

}  // namespace ctlab
