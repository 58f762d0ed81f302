#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ctlab/point.hpp"

namespace ctlab {

/// One member u(x) = a psi(|x - c| / r) of the test family, psi the standard
/// bump exp(-1/(1 - s^2)); a is chosen so that max(sup|u|, sup|grad u|) = 1.
struct TestBump {
  std::size_t radius_index = 0;  ///< j, radius r = 2^-j
  std::size_t center_index = 0;  ///< k, position in the lattice enumeration
  Point center;
  double radius = 1.0;
  double amplitude = 1.0;

  double value(std::span<const double> x) const;
  /// Writes grad u(x) into g.
  void gradient(std::span<const double> x, std::span<double> g) const;
};

/// Countable family of unit-C^1 bumps truncated at depth N.
///
/// Radii r_j = 2^-j (j >= 0); centers r_j Z^d inside [-R, R]^d, enumerated
/// shell by shell in the max norm of the integer index and lexicographically
/// within a shell. Member n = 1, 2, ... walks the Cantor diagonals
/// m = j + k = 0, 1, ... with j increasing inside a diagonal, skipping pairs
/// whose center index exceeds the lattice.
class TestFamily {
 public:
  static constexpr double kDefaultExtent = 8.0;
  static constexpr std::size_t kDefaultDepth = 64;

  TestFamily(std::size_t dim, std::size_t depth = kDefaultDepth, double extent = kDefaultExtent);

  std::size_t dim() const { return dim_; }
  std::size_t depth() const { return bumps_.size(); }
  double extent() const { return extent_; }
  /// Member n (1-based).
  const TestBump& operator[](std::size_t n) const { return bumps_.at(n - 1); }
  const std::vector<TestBump>& bumps() const { return bumps_; }

  /// sup |psi'| on (0, 1).
  static double profile_max_slope();

 private:
  std::size_t dim_;
  double extent_;
  std::vector<TestBump> bumps_;
};

/// k-th point (0-based) of the lattice enumeration of Z^d restricted to
/// max-norm <= bound, or an empty Point when k is out of range.
Point lattice_point(std::size_t dim, long bound, std::size_t k);

}  // namespace ctlab
