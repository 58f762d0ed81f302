#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ctlab/point.hpp"

namespace ctlab {

/// Result of an adaptive one-dimensional quadrature.
struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. Throws
/// QuadratureError when the relative tolerance is not reached.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-10, unsigned max_depth = 30);

/// Composite trapezoid rule over samples y_i at strictly increasing nodes t_i.
double trapezoid(std::span<const double> t, std::span<const double> y);

/// Running trapezoid integrals: out[k] = integral from t_0 to t_k.
std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> y);

/// i-th point (0-based) of the Halton sequence in [0,1)^dim, bases = first primes.
Point halton(std::size_t index, std::size_t dim);

/// Deterministic sample of a box: the 2^d vertices, the center, then
/// `count` Halton points mapped affinely into the box.
std::vector<Point> box_sample(const Box& box, std::size_t count);

/// Uniform grid of n >= 2 nodes on [a, b]; endpoints are exact.
std::vector<double> uniform_grid(double a, double b, std::size_t n);

}  // namespace ctlab
