#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ctlab/fields/vector_field.hpp"
#include "ctlab/measures/test_family.hpp"
#include "ctlab/transport/measure_curve.hpp"

namespace ctlab {

/// Spatial test function with an analytic gradient.
struct TestFunction {
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;

  static TestFunction from_bump(const TestBump& b);
};

/// Time window f(t) = psi((2t - a - b)/(b - a)), the standard bump rescaled
/// to (a, b); f and all its derivatives vanish at a and b.
struct TimeWindow {
  double a = 0.0;
  double b = 1.0;

  double value(double t) const;
  double derivative(double t) const;
};

/// The canonical windows on [t0, t1]: supports (t0,t1), the two halves and
/// the middle half.
std::vector<TimeWindow> canonical_windows(double t0, double t1);

/// | integral of f'(t) <u, mu_t> + f(t) <du(V_t), mu_t> dt |, composite
/// trapezoid on the curve's grid.
double weak_residual(const MeasureCurve& mu, const VectorField& v, const TestFunction& u,
                     const TimeWindow& f);

struct WeakResidualReport {
  double worst = 0.0;
  std::size_t worst_bump = 0;    ///< 1-based family index
  std::size_t worst_window = 0;  ///< index into the window list
  std::size_t bumps = 0;
  std::size_t windows = 0;
};

/// Max residual over the first `bumps` family members and the window list.
WeakResidualReport weak_residual_sweep(const MeasureCurve& mu, const VectorField& v,
                                       const TestFamily& family, std::size_t bumps,
                                       const std::vector<TimeWindow>& windows);

}  // namespace ctlab
