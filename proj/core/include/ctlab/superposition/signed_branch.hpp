#pragma once

#include <vector>

#include "ctlab/superposition/extended_curve.hpp"
#include "ctlab/transport/measure_curve.hpp"

namespace ctlab {

struct BranchOptions {
  double residual_tol = 1e-8;  ///< ode_residual bound each supplied curve must meet
  double meet_tol = 1e-10;     ///< |x(S) - y(S)| bound
};

/// Both sides of delta_T (x) mu_T - delta_0 (x) mu_0 = (ev_1)# nu - (ev_0)# nu
/// as atomic measures on R^{d+1}.
struct BoundaryReport {
  SignedMeasure lhs;
  SignedMeasure rhs;
  /// Equality after consolidation, atom positions and weights compared
  /// bit for bit.
  bool holds = false;
};

struct SignedBranch {
  double branch_time = 0.0;
  double horizon = 0.0;
  ExtendedEnsemble nu;
  BoundaryReport boundary;
};

/// Signed superposition of mu_t = delta_{x(t)} - delta_{y(t)} (t >= S, zero
/// before) for two solutions meeting at S. nu is the unit mass on the hairpin
/// (T, y(T)) -> (S, y(S)) -> (T, x(T)), backward along y and forward along x,
/// parametrized proportionally to arc length in (t, x). Both curves must end
/// at the same T and have S as a node; when x and y coincide nu is empty.
SignedBranch signed_superpose_branch(const VectorField& v, double S, const Curve& x, const Curve& y,
                                     const BranchOptions& opt = {});

/// The measure curve 0 for t < S and delta_{x(t)} - delta_{y(t)} (consolidated)
/// for t >= S on `grid`; x and y must have every grid time >= S as a node.
MeasureCurve branch_measure_curve(double S, const Curve& x, const Curve& y, const std::vector<double>& grid);

/// Positive Jordan part of branch_measure_curve, node by node.
MeasureCurve positive_part_curve(const MeasureCurve& mu);

/// Consolidates both measures and compares sorted atoms exactly.
bool atoms_equal(const SignedMeasure& a, const SignedMeasure& b);

}  // namespace ctlab
