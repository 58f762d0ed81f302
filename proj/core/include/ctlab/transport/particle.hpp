#pragma once

#include "ctlab/flow/integrate.hpp"
#include "ctlab/transport/measure_curve.hpp"

namespace ctlab {

/// mu_t = (X_S^t)# mu_S on the grid: every atom rides its characteristic
/// forward and backward from S with a constant weight. S must be a node.
MeasureCurve particle_solve(const VectorField& v, double S, const SignedMeasure& mu_S,
                            const std::vector<double>& grid, const IntegrateOptions& opt = {});

}  // namespace ctlab
