#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ctlab/fields/vector_field.hpp"
#include "ctlab/measures/signed_measure.hpp"

namespace ctlab {

/// Uniform nx-by-ny cell grid over a planar box with one value per cell,
/// stored row-major (index ix + nx * iy).
struct DensityGrid {
  Box box;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> values;

  double dx() const { return (box.hi[0] - box.lo[0]) / static_cast<double>(nx); }
  double dy() const { return (box.hi[1] - box.lo[1]) / static_cast<double>(ny); }
  double cell_volume() const { return dx() * dy(); }
  Point cell_center(std::size_t ix, std::size_t iy) const;
  double mass() const;

  /// Cell values sampled at cell centers.
  static DensityGrid from_function(const Box& box, std::size_t nx, std::size_t ny,
                                   const std::function<double(double, double)>& f);
  /// One atom per nonzero cell at its center, weight = value * cell volume.
  SignedMeasure to_atoms() const;
  /// q x q atoms per nonzero cell at the centers of its sub-cells, weight =
  /// value * sub-cell volume (deterministic stratified placement).
  SignedMeasure stratified_atoms(std::size_t q) const;
};

enum class Boundary { periodic, open };

struct GridSolveOptions {
  Boundary boundary = Boundary::periodic;
  double cfl = 0.9;                ///< fraction of the admissible step used when dt is automatic
  std::optional<double> fixed_dt;  ///< throws CflError if it violates the CFL bound
};

/// Density slices of a grid solution, one per output time.
struct DensityCurve {
  Box box;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> slices;
  std::vector<double> masses;
  std::size_t steps = 0;

  DensityGrid slice(std::size_t i) const { return {box, nx, ny, slices[i]}; }
  double min_value() const;
  double max_value() const;
};

/// First-order upwind finite volumes for d_t v + div(V v) = 0 with a planar
/// divergence-free V. Face fluxes are differences of the stream function at
/// face endpoints, so the discrete divergence vanishes and each update is a
/// convex combination: values stay in [0, 1] without clamping. `times` must
/// be increasing and start at the time of `initial`.
DensityCurve grid_solve(const VectorField& v, const DensityGrid& initial, const std::vector<double>& times,
                        const GridSolveOptions& opt = {});

}  // namespace ctlab
