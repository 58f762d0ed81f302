#include "ctlab/measures/weak_metric.hpp"

#include <cmath>

#include "ctlab/errors.hpp"

namespace ctlab {

double pair(const SignedMeasure& mu, const TestBump& u) {
  return mu.pair([&u](const Point& x) { return u.value(x); });
}

WeakDistance weak_distance(const SignedMeasure& mu, const SignedMeasure& eta, const TestFamily& family) {
  if (mu.dim() != family.dim() || eta.dim() != family.dim())
    throw PreconditionError("weak_distance: dimension mismatch with the test family");
  double value = 0.0;
  double weight = 1.0;
  for (const auto& u : family.bumps()) {
    weight *= 0.5;
    value += weight * std::abs(pair(mu, u) - pair(eta, u));
  }
  return {value, weight * (mu.tv_norm() + eta.tv_norm())};
}

}  // namespace ctlab
