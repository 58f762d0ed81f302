#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ctlab/flow/curve.hpp"
#include "ctlab/flow/integrate.hpp"
#include "ctlab/measures/signed_measure.hpp"

namespace ctlab {

/// Space-time curve s -> (t(s), x(s)) on a grid of [0, 1]; time may run
/// backwards. Nodes are pairwise distinct (max-norm gap above 10^-12) and
/// every t(s) lies in [0, T].
class ExtendedCurve {
 public:
  static constexpr double kCoincidence = 1e-12;

  ExtendedCurve(std::vector<double> s, std::vector<double> t, std::vector<Point> x, double horizon);

  std::size_t size() const { return s_.size(); }
  std::size_t dim() const { return x_.front().size(); }
  double horizon() const { return horizon_; }
  const std::vector<double>& s() const { return s_; }
  const std::vector<double>& t() const { return t_; }
  const std::vector<Point>& x() const { return x_; }
  /// Largest slope |Delta (t, x)| / Delta s over the grid intervals.
  double lipschitz_bound() const { return lipschitz_; }
  /// Node k as a point (t, x) of R^{d+1}.
  Point node(std::size_t k) const;

 private:
  std::vector<double> s_, t_;
  std::vector<Point> x_;
  double horizon_;
  double lipschitz_;
};

struct ReparamReport {
  /// max over intervals of the Simpson defect of x against t V(t, x),
  /// divided by Delta s.
  double residual = 0.0;
  /// sum of C(t) |Delta t| at interval midpoints, when a certificate exists.
  std::optional<double> certificate_integral;
};

/// Residual of x' = t' V(t, x). On each interval the defect is the Simpson
/// defect of x as a function of t (with Hermite midpoint), which is exact
/// for quadratic pieces; intervals where t does not move contribute |Delta x|.
ReparamReport reparam_residual(const ExtendedCurve& xi, const VectorField& v);

/// s_k = sigma(t_k) on the nodes of a solution; sigma must be strictly
/// increasing from 0 at t_begin to 1 at t_end (defaults to the affine map).
ExtendedCurve embed_solution(const Curve& gamma, double horizon,
                             const std::function<double(double)>& sigma = {});

/// max_k |x(s_k) - X(t(0), t(s_k), x(0))| with the flow computed by integrate.
double flow_consistency(const ExtendedCurve& xi, const VectorField& v, const IntegrateOptions& opt = {});

struct WeightedExtendedCurve {
  double weight = 0.0;
  ExtendedCurve curve;
};

/// Finite nonnegative combination of extended curves.
class ExtendedEnsemble {
 public:
  explicit ExtendedEnsemble(std::size_t dim) : dim_(dim) {}
  ExtendedEnsemble(std::size_t dim, std::vector<WeightedExtendedCurve> members);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<WeightedExtendedCurve>& members() const { return members_; }
  /// (ev_0)# nu and (ev_1)# nu as measures on R^{d+1}.
  SignedMeasure ev0() const;
  SignedMeasure ev1() const;

 private:
  std::size_t dim_;
  std::vector<WeightedExtendedCurve> members_;
};

}  // namespace ctlab
