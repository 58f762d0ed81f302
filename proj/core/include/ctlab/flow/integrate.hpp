#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ctlab/fields/vector_field.hpp"
#include "ctlab/flow/curve.hpp"

namespace ctlab {

enum class Scheme { adaptive_rk, euler };

const char* to_string(Scheme s);

struct IntegrateOptions {
  Scheme scheme = Scheme::adaptive_rk;
  /// Bound on ode_residual of the returned curve.
  double tol = 1e-9;
  std::size_t max_steps = 2'000'000;
};

/// Solves gamma' = V(t, gamma), gamma(s) = x, through every target time.
///
/// Steps are classic RK4 (or explicit Euler) and are halved until the Simpson
/// defect of the step is below tol * h / span, where span is the length of the
/// covered time range; the sum of accepted defects, and hence ode_residual,
/// stays below tol. Targets before s are reached by integrating the
/// time-reversed field. The returned curve holds every accepted step; s and
/// each target are exact nodes.
Curve integrate(const VectorField& v, double s, std::span<const double> x,
                std::span<const double> targets, const IntegrateOptions& opt = {});

}  // namespace ctlab
