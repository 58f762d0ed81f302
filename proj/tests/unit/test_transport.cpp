#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ctlab/errors.hpp"
#include "ctlab/fields/catalog.hpp"
#include "ctlab/fields/mollifier.hpp"
#include "ctlab/quadrature.hpp"
#include "ctlab/transport/cross_validate.hpp"
#include "ctlab/transport/equicontinuity.hpp"
#include "ctlab/transport/grid_solver.hpp"
#include "ctlab/transport/measure_curve.hpp"
#include "ctlab/transport/particle.hpp"
#include "ctlab/transport/weak_residual.hpp"

using namespace ctlab;

namespace {

constexpr double kPi = std::numbers::pi;

// smooth bump of height 1 and radius r around (cx, cy)
std::function<double(double, double)> blob(double cx, double cy, double r) {
  return [=](double x, double y) {
    const double s = std::hypot(x - cx, y - cy) / r;
    return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
  };
}

double wrap(double x) { return x - 2.0 * std::floor((x + 1.0) / 2.0); }  // into [-1, 1)

MeasureCurve sqrt_branch_curve(std::size_t nodes) {
  const auto grid = uniform_grid(0.0, 1.0, nodes);
  std::vector<SignedMeasure> ms;
  for (double t : grid) ms.push_back((SignedMeasure::dirac({t * t}) - SignedMeasure::dirac({0.0})).consolidated());
  return MeasureCurve(grid, ms, "branch");
}

double shift_l1_error(std::size_t n) {
  const Box box = Box::cube(2, 1.0);
  const auto f = blob(0.0, 0.0, 0.5);
  const VectorField v = builtin_field("constant", {{"value", {1.0, 0.5}}});
  const auto sol = grid_solve(v, DensityGrid::from_function(box, n, n, f), {0.0, 0.5});
  const DensityGrid end = sol.slice(1);
  double err = 0.0;
  for (std::size_t iy = 0; iy < n; ++iy)
    for (std::size_t ix = 0; ix < n; ++ix) {
      const Point c = end.cell_center(ix, iy);
      err += std::abs(end.values[ix + n * iy] - f(wrap(c[0] - 0.5), wrap(c[1] - 0.25))) * end.cell_volume();
    }
  return err;
}

}  // namespace

TEST(MeasureCurve, Validation) {
  EXPECT_THROW(MeasureCurve({0.0, 0.0}, {SignedMeasure(1), SignedMeasure(1)}), PreconditionError);
  EXPECT_THROW(MeasureCurve({0.0, 1.0}, {SignedMeasure(1), SignedMeasure(2)}), PreconditionError);
}

TEST(ParticleSolve, ZeroFieldGivesAConstantCurve) {
  const SignedMeasure mu(2, {{{0.1, 0.2}, 0.5}, {{-0.3, 0.4}, -1.5}});
  const auto c = particle_solve(builtin_field("zero", {{"dim", {2}}}), 0.0, mu, uniform_grid(0.0, 1.0, 5));
  for (const auto& m : c.measures()) {
    ASSERT_EQ(m.atoms().size(), 2u);
    EXPECT_EQ(m.atoms()[1].x, mu.atoms()[1].x);
    EXPECT_EQ(m.atoms()[1].w, -1.5);
  }
  EXPECT_TRUE(c.tracked());
}

TEST(ParticleSolve, LinearFieldFollowsTheExponential) {
  const auto grid = uniform_grid(0.0, 1.0, 11);
  const auto c = particle_solve(builtin_field("linear"), 0.0, SignedMeasure::dirac({1.0}), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(c[i].atoms()[0].x[0], std::exp(grid[i]), 1e-6);
}

TEST(ParticleSolve, RotationHalfTurn) {
  const auto grid = uniform_grid(0.0, kPi, 9);
  const auto c = particle_solve(builtin_field("rotation_divfree", {{"horizon", {kPi}}}), 0.0,
                                SignedMeasure::dirac({1.0, 0.0}), grid);
  EXPECT_NEAR(c[8].atoms()[0].x[0], -1.0, 1e-5);
  EXPECT_NEAR(c[8].atoms()[0].x[1], 0.0, 1e-5);
}

TEST(ParticleSolve, StartInsideTheGrid) {
  const auto grid = uniform_grid(0.0, 1.0, 11);
  const auto c = particle_solve(builtin_field("linear"), grid[5], SignedMeasure::dirac({1.0}), grid);
  EXPECT_NEAR(c[0].atoms()[0].x[0], std::exp(-0.5), 1e-7);
  EXPECT_EQ(c[5].atoms()[0].x[0], 1.0);
  EXPECT_THROW(particle_solve(builtin_field("linear"), 0.55, SignedMeasure::dirac({1.0}), grid),
               PreconditionError);
}

TEST(TimeWindow, VanishesAtTheEnds) {
  for (const auto& w : canonical_windows(0.0, 2.0)) {
    EXPECT_EQ(w.value(w.a), 0.0);
    EXPECT_EQ(w.value(w.b), 0.0);
    EXPECT_EQ(w.derivative(w.b), 0.0);
    EXPECT_GE(w.a, 0.0);
    EXPECT_LE(w.b, 2.0);
    const double mid = 0.5 * (w.a + w.b);
    EXPECT_NEAR(w.value(mid), std::exp(-1.0), 1e-15);
    const double h = 1e-6;
    const double t = w.a + 0.3 * (w.b - w.a);
    EXPECT_NEAR(w.derivative(t), (w.value(t + h) - w.value(t - h)) / (2 * h), 1e-6);
  }
}

TEST(WeakResidual, ConstantCurveUnderZeroField) {
  const SignedMeasure mu(1, {{{0.2}, 1.0}, {{-0.1}, -0.4}});
  const auto grid = uniform_grid(0.0, 1.0, 21);
  const MeasureCurve c(grid, std::vector<SignedMeasure>(grid.size(), mu));
  const auto r = weak_residual_sweep(c, builtin_field("zero"), TestFamily(1), 32, canonical_windows(0.0, 1.0));
  EXPECT_LE(r.worst, 1e-15);
}

TEST(WeakResidual, ParticleSolutionOfTheLinearField) {
  const VectorField v = builtin_field("linear");
  const SignedMeasure mu(1, {{{0.5}, 0.5}, {{-0.5}, 0.5}});
  const TestFamily f(1);
  const auto coarse = particle_solve(v, 0.0, mu, uniform_grid(0.0, 1.0, 81));
  const auto fine = particle_solve(v, 0.0, mu, uniform_grid(0.0, 1.0, 161));
  const auto rc = weak_residual_sweep(coarse, v, f, 32, canonical_windows(0.0, 1.0));
  const auto rf = weak_residual_sweep(fine, v, f, 32, canonical_windows(0.0, 1.0));
  EXPECT_LT(rf.worst, 1e-4);
  EXPECT_LT(rf.worst, rc.worst);  // converges under refinement
  EXPECT_EQ(rf.bumps, 32u);
}

TEST(WeakResidual, SignedBranchCurve) {
  const auto c = sqrt_branch_curve(401);
  const auto r = weak_residual_sweep(c, builtin_field("sqrt_branch"), TestFamily(1), 32, canonical_windows(0.0, 1.0));
  EXPECT_LT(r.worst, 1e-4);
}

TEST(WeakResidual, TeleportedAtomIsFlagged) {
  const VectorField v = builtin_field("linear");
  const auto grid = uniform_grid(0.0, 1.0, 161);
  auto ms = particle_solve(v, 0.0, SignedMeasure::dirac({0.2}), grid).measures();
  for (std::size_t i = 80; i < ms.size(); ++i) ms[i] = ms[i].pushforward([](const Point& x) { return Point{x[0] + 0.5}; });
  const MeasureCurve bad(grid, ms);
  const TestFamily f(1);
  EXPECT_GT(weak_residual_sweep(bad, v, f, 32, canonical_windows(0.0, 1.0)).worst, 1e-3);
  EXPECT_GT(equicontinuity_check(bad, v, f).worst_ratio, 1.0);
}

TEST(Equicontinuity, ZeroFieldSkipsEveryInterval) {
  const auto grid = uniform_grid(0.0, 1.0, 6);
  const MeasureCurve c(grid, std::vector<SignedMeasure>(grid.size(), SignedMeasure::dirac({0.3})));
  const auto r = equicontinuity_check(c, builtin_field("zero"), TestFamily(1));
  EXPECT_EQ(r.skipped, 5u);
  EXPECT_EQ(r.worst_ratio, 0.0);
}

TEST(Equicontinuity, ParticleSolutionsStayBelowOne) {
  const TestFamily f(1);
  const auto lin = particle_solve(builtin_field("linear"), 0.0, SignedMeasure(1, {{{1.0}, 0.5}, {{-0.5}, 0.5}}),
                                  uniform_grid(0.0, 1.0, 41));
  EXPECT_LE(equicontinuity_check(lin, builtin_field("linear"), f).worst_ratio, 1.01);
  EXPECT_LE(equicontinuity_check(sqrt_branch_curve(101), builtin_field("sqrt_branch"), f).worst_ratio, 1.01);
}

TEST(Equicontinuity, NeedsSupNormData) {
  const VectorField bare("bare", 1, 1.0, [](double, std::span<const double>, std::span<double> o) { o[0] = 1; });
  const auto grid = uniform_grid(0.0, 1.0, 3);
  EXPECT_THROW(equicontinuity_check(MeasureCurve(grid, std::vector<SignedMeasure>(3, SignedMeasure(1))), bare,
                                    TestFamily(1)),
               PreconditionError);
}

TEST(NormTrace, NonnegativeParticleSolutionIsConstant) {
  const SignedMeasure mu(2, {{{0.1, 0.2}, 0.3}, {{-0.5, 0.4}, 0.7}});
  const auto c = particle_solve(builtin_field("log_lipschitz"), 0.0, mu, uniform_grid(0.0, 1.0, 11));
  for (double n : norm_trace(c)) EXPECT_EQ(n, norm_trace(c).front());
}

TEST(NormTrace, BranchJumpsFromZeroToTwo) {
  const auto tr = norm_trace(sqrt_branch_curve(11));
  EXPECT_EQ(tr.front(), 0.0);
  for (std::size_t i = 1; i < tr.size(); ++i) EXPECT_EQ(tr[i], 2.0);
  const auto grid = uniform_grid(0.0, 1.0, 4);
  for (double n : norm_trace(MeasureCurve(grid, std::vector<SignedMeasure>(4, SignedMeasure(1))))) EXPECT_EQ(n, 0.0);
}

TEST(PositivePart, IsNotWeaklyContinuousAtTheBranch) {
  // 0 before the branch time, delta at the upper branch after it
  const TestFamily f(1);
  for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const auto pos = weak_distance(SignedMeasure(1), SignedMeasure::dirac({h * h}), f);
    const auto full = weak_distance(SignedMeasure(1), SignedMeasure::dirac({h * h}) - SignedMeasure::dirac({0.0}), f);
    EXPECT_GT(pos.value, 0.2) << h;
    EXPECT_LE(full.value, h * h + full.tail_bound) << h;
  }
}

TEST(DensityGrid, AtomsCarryTheMass) {
  const DensityGrid g = DensityGrid::from_function(Box::cube(2, 1.0), 16, 16, blob(0.1, 0.0, 0.6));
  EXPECT_NEAR(g.to_atoms().mass(), g.mass(), 1e-14);
  EXPECT_NEAR(g.stratified_atoms(3).mass(), g.mass(), 1e-14);
  EXPECT_EQ(g.stratified_atoms(3).atoms().size(), 9 * g.to_atoms().atoms().size());
}

TEST(GridSolve, ZeroFieldLeavesDensityUnchanged) {
  const DensityGrid g = DensityGrid::from_function(Box::cube(2, 1.0), 32, 32, blob(0.0, 0.0, 0.5));
  const auto sol = grid_solve(builtin_field("zero", {{"dim", {2}}}), g, {0.0, 0.5, 1.0});
  EXPECT_EQ(sol.slices.back(), g.values);
}

TEST(GridSolve, ConstantShiftConvergesAtFirstOrder) {
  const double e64 = shift_l1_error(64), e128 = shift_l1_error(128);
  EXPECT_LT(e128, e64);
  EXPECT_GT(e64 / e128, 1.5);
  EXPECT_LT(e64 / e128, 2.5);
}

TEST(GridSolve, RotationOneRevolution) {
  const VectorField v = builtin_field("rotation_divfree", {{"horizon", {2 * kPi}}});
  const DensityGrid g = DensityGrid::from_function(Box::cube(2, 1.0), 64, 64, blob(0.4, 0.0, 0.35));
  const auto sol = grid_solve(v, g, {0.0, kPi, 2 * kPi});
  EXPECT_GE(sol.min_value(), 0.0);
  EXPECT_LE(sol.max_value(), 1.0 + 1e-12);
  for (double m : sol.masses) EXPECT_NEAR(m, g.mass(), 1e-6);
}

TEST(GridSolve, Preconditions) {
  const DensityGrid g = DensityGrid::from_function(Box::cube(2, 1.0), 16, 16, blob(0.0, 0.0, 0.5));
  EXPECT_THROW(grid_solve(builtin_field("linear", {{"dim", {2}}}), g, {0.0, 1.0}), PreconditionError);
  GridSolveOptions big;
  big.fixed_dt = 0.5;
  EXPECT_THROW(grid_solve(builtin_field("rotation_divfree"), g, {0.0, 1.0}, big), CflError);
  DensityGrid over = g;
  over.values[0] = 1.5;
  EXPECT_THROW(grid_solve(builtin_field("rotation_divfree"), over, {0.0, 1.0}), PreconditionError);
  EXPECT_THROW(grid_solve(builtin_field("rotation_divfree"), g, {0.0, 0.0}), PreconditionError);
}

TEST(GridSolve, PeriodicCompatibilityIsChecked) {
  // Psi = x y gives V = (x, -y), whose normal flux differs across the wrap
  VectorField strain("strain", 2, 1.0, [](double, std::span<const double> x, std::span<double> o) {
    o[0] = x[0];
    o[1] = -x[1];
  });
  strain.with_sup_norm([](double) { return std::sqrt(2.0); });
  strain.with_stream_function([](double, double x, double y) { return x * y; });
  const DensityGrid g = DensityGrid::from_function(Box::cube(2, 1.0), 16, 16, blob(0.0, 0.0, 0.3));
  EXPECT_THROW(grid_solve(strain, g, {0.0, 0.2}), PreconditionError);
  GridSolveOptions open;
  open.boundary = Boundary::open;
  const auto sol = grid_solve(strain, g, {0.0, 0.2}, open);
  EXPECT_GE(sol.min_value(), 0.0);
  EXPECT_LE(sol.max_value(), 1.0 + 1e-12);
}

TEST(CrossValidate, ZeroFieldWithinTheOffsetBound) {
  const DensityGrid g = DensityGrid::from_function(Box::cube(2, 1.0), 16, 16, blob(0.0, 0.0, 0.5));
  const auto tab = cross_validate(builtin_field("zero", {{"dim", {2}}}), g, {0.0, 1.0}, TestFamily(2));
  // every sub-cell atom sits within half a cell diagonal of its cell center
  const double offset = g.mass() * std::hypot(g.dx(), g.dy()) / 2;
  for (const auto& r : tab.rows) EXPECT_LE(r.distance.value, offset);
}

TEST(CrossValidate, RotationQuarterTurnShrinksWithTheGrid) {
  const VectorField v = builtin_field("rotation_divfree", {{"horizon", {kPi}}});
  const TestFamily f(2);
  double prev = INFINITY;
  for (std::size_t n : {32u, 64u}) {
    const auto g = DensityGrid::from_function(Box::cube(2, 1.0), n, n, blob(0.4, 0.0, 0.35));
    const auto tab = cross_validate(v, g, {0.0, kPi / 2}, f);
    EXPECT_LT(tab.worst_upper(), prev);
    EXPECT_LT(tab.worst_upper(), 4.0 / n);  // C dx with C = 2
    prev = tab.worst_upper();
  }
}

TEST(CrossValidate, CompressibleFieldIsRejected) {
  const auto g = DensityGrid::from_function(Box::cube(2, 1.0), 8, 8, blob(0.0, 0.0, 0.5));
  EXPECT_THROW(cross_validate(builtin_field("linear", {{"dim", {2}}}), g, {0.0, 1.0}, TestFamily(2)),
               PreconditionError);
}
