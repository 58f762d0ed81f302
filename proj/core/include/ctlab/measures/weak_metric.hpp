#pragma once

#include "ctlab/measures/signed_measure.hpp"
#include "ctlab/measures/test_family.hpp"

namespace ctlab {

/// Truncated series d(mu, eta) = sum_{n <= N} 2^-n |<u_n, mu> - <u_n, eta>|.
/// The true distance lies in [value, value + tail_bound].
struct WeakDistance {
  double value = 0.0;
  double tail_bound = 0.0;
  double upper() const { return value + tail_bound; }
};

WeakDistance weak_distance(const SignedMeasure& mu, const SignedMeasure& eta, const TestFamily& family);

/// <u, mu> for a test-family member.
double pair(const SignedMeasure& mu, const TestBump& u);

}  // namespace ctlab
