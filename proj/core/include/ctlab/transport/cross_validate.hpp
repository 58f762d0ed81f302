#pragma once

#include <cstddef>
#include <vector>

#include "ctlab/flow/integrate.hpp"
#include "ctlab/measures/test_family.hpp"
#include "ctlab/measures/weak_metric.hpp"
#include "ctlab/transport/grid_solver.hpp"

namespace ctlab {

struct CrossValidateOptions {
  std::size_t subcells = 2;  ///< particles per cell per axis
  IntegrateOptions integrate{Scheme::adaptive_rk, 1e-8};
  GridSolveOptions grid;
};

struct CrossValidateRow {
  double time = 0.0;
  WeakDistance distance;
};

struct CrossValidateTable {
  std::size_t cells = 0;
  std::size_t particles = 0;
  std::vector<CrossValidateRow> rows;
  double worst_upper() const;
};

/// Solves from the same nonnegative density with grid_solve and with
/// particle_solve (stratified sub-cell sampling) and tabulates the truncated
/// metric between the two at every output time; grid cells enter as one atom
/// at each cell center.
CrossValidateTable cross_validate(const VectorField& v, const DensityGrid& initial,
                                  const std::vector<double>& times, const TestFamily& family,
                                  const CrossValidateOptions& opt = {});

}  // namespace ctlab
