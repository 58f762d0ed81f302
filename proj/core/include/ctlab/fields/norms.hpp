#pragma once

#include <cstddef>
#include <optional>

#include "ctlab/fields/vector_field.hpp"

namespace ctlab {

/// Time quadrature and spatial sampling used by c_norm.
struct NormOptions {
  std::size_t time_intervals = 64;      ///< composite trapezoid intervals on [t0, t1]
  std::size_t box_points = 4096;        ///< Halton points on top of vertices and center
  std::optional<Box> box;               ///< forces sampling over this box
  std::optional<double> t0, t1;         ///< defaults to [0, T]
};

struct NormEstimate {
  double value = 0.0;
  /// |trapezoid(n) - trapezoid(n/2)|, a proxy for the time-quadrature error.
  double error_bound = 0.0;
  /// True when ||V_t||_inf came from box sampling (a lower estimate).
  bool lower_estimate = false;
};

/// ||V_t||_inf by the analytic sup norm, or as a max over the deterministic
/// box sample when no analytic value exists or a box is forced.
double sup_norm_at(const VectorField& v, double t, const NormOptions& opt = {});

/// ||V||_c = integral of ||V_t||_inf dt.
NormEstimate c_norm(const VectorField& v, const NormOptions& opt = {});

}  // namespace ctlab
