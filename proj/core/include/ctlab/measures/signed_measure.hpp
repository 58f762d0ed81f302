#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "ctlab/point.hpp"

namespace ctlab {

struct Atom {
  Point x;
  double w = 0.0;
};

/// Finite signed combination of Dirac masses. Zero weights are never stored;
/// the value is immutable after construction.
class SignedMeasure {
 public:
  /// Coincidence tolerance used by consolidation.
  static constexpr double kCoincidence = 1e-12;

  explicit SignedMeasure(std::size_t dim) : dim_(dim) {}
  SignedMeasure(std::size_t dim, std::vector<Atom> atoms);

  static SignedMeasure dirac(const Point& x, double w = 1.0);

  std::size_t dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  /// Sum of |w_i|.
  double tv_norm() const;
  /// Sum of w_i.
  double mass() const;
  bool nonnegative() const;
  /// Positive and negative parts (both nonnegative measures).
  std::pair<SignedMeasure, SignedMeasure> jordan() const;

  /// sum_i w_i u(x_i), summed in atom order.
  template <class F>
  double pair(F&& u) const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.w * u(a.x);
    return s;
  }

  /// Atoms moved by phi, weights kept. With consolidation, atoms whose images
  /// lie within kCoincidence (max-norm) of each other are merged and zero
  /// sums dropped. Throws PreconditionError on a non-finite image.
  SignedMeasure pushforward(const std::function<Point(const Point&)>& phi, bool consolidate = false) const;
  /// Merges coincident atoms (first occurrence keeps its position).
  SignedMeasure consolidated() const;

  SignedMeasure scaled(double a) const;
  friend SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b);
  friend SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b);

 private:
  std::size_t dim_;
  std::vector<Atom> atoms_;
};

}  // namespace ctlab
