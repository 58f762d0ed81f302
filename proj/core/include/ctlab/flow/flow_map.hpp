#pragma once

#include <vector>

#include "ctlab/flow/integrate.hpp"

namespace ctlab {

/// Images X_s^t(seed) of a batch of seeds.
struct FlowMapSample {
  double source_time = 0.0;
  double target_time = 0.0;
  std::vector<Point> seeds;
  std::vector<Point> images;
  Provenance provenance;
};

/// X_s^t on every seed; s == t returns the seeds unchanged.
FlowMapSample flow_map(const VectorField& v, double s, double t, const std::vector<Point>& seeds,
                       const IntegrateOptions& opt = {});

/// max over seeds of |X_{t1}^{t2}(X_{t0}^{t1}(x)) - X_{t0}^{t2}(x)|.
double markov_defect(const VectorField& v, double t0, double t1, double t2,
                     const std::vector<Point>& seeds, const IntegrateOptions& opt = {});

/// max over seeds of |X_t^s(X_s^t(x)) - x|.
double inverse_defect(const VectorField& v, double s, double t, const std::vector<Point>& seeds,
                      const IntegrateOptions& opt = {});

/// Tensor lattice of `per_axis`^d points covering the box (endpoints included).
std::vector<Point> lattice_seeds(const Box& box, std::size_t per_axis);

}  // namespace ctlab
