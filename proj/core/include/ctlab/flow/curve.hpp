#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctlab/fields/vector_field.hpp"
#include "ctlab/point.hpp"

namespace ctlab {

/// How a curve was produced.
struct Provenance {
  std::string scheme = "given";
  double tol = 0.0;
  std::size_t steps = 0;
};

/// A sampled curve t -> gamma(t) in R^d on a strictly increasing time grid.
class Curve {
 public:
  Curve(std::vector<double> times, std::vector<Point> points, Provenance prov = {});

  /// Samples f at every node of `times`.
  template <class F>
  static Curve from_function(std::vector<double> times, F&& f, Provenance prov = {}) {
    std::vector<Point> pts;
    pts.reserve(times.size());
    for (double t : times) pts.push_back(f(t));
    return Curve(std::move(times), std::move(pts), std::move(prov));
  }

  std::size_t size() const { return times_.size(); }
  std::size_t dim() const { return points_.front().size(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<Point>& points() const { return points_; }
  const Provenance& provenance() const { return prov_; }
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }

  /// Index of the node equal to t (exact match), if any.
  std::optional<std::size_t> node_index(double t) const;
  /// Value at an exact node; throws PreconditionError when t is not a node.
  const Point& at_node(double t) const;
  /// Cubic Hermite interpolant with nodal slopes V(t_k, gamma(t_k)).
  Point hermite(double t, const VectorField& v) const;
  /// The portion of the curve on [a, b]; a and b must be nodes.
  Curve restricted(double a, double b) const;

 private:
  std::vector<double> times_;
  std::vector<Point> points_;
  Provenance prov_;
};

/// max_k |gamma(t_k) - gamma(t_0) - integral_{t_0}^{t_k} V(s, gamma(s)) ds|.
/// The integral is the composite Simpson rule over each grid interval with
/// the midpoint value taken from the cubic Hermite interpolant whose nodal
/// slopes are V at the stored nodes.
double ode_residual(const Curve& gamma, const VectorField& v);

/// Simpson defect of one interval; the building block of ode_residual.
double interval_defect(const VectorField& v, double ta, std::span<const double> xa,
                       std::span<const double> va, double tb, std::span<const double> xb,
                       std::span<const double> vb, std::span<double> scratch_mid,
                       std::span<double> scratch_vm, std::span<double> scratch_diff);

}  // namespace ctlab
