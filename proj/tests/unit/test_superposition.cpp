#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ctlab/errors.hpp"
#include "ctlab/fields/catalog.hpp"
#include "ctlab/flow/integrate.hpp"
#include "ctlab/measures/weak_metric.hpp"
#include "ctlab/quadrature.hpp"
#include "ctlab/superposition/endpoint.hpp"
#include "ctlab/superposition/ensemble.hpp"
#include "ctlab/superposition/extended_curve.hpp"
#include "ctlab/superposition/signed_branch.hpp"
#include "ctlab/transport/grid_solver.hpp"
#include "ctlab/transport/particle.hpp"

using namespace ctlab;

namespace {

const std::vector<double> kGrid = uniform_grid(0.0, 1.0, 401);

Curve upper_branch() { return Curve::from_function(kGrid, [](double t) { return Point{t * t}; }); }
Curve lower_branch() { return Curve::from_function(kGrid, [](double) { return Point{0.0}; }); }

}  // namespace

TEST(SuperposeNonneg, SingleAtom) {
  const auto mu = particle_solve(builtin_field("linear"), 0.0, SignedMeasure::dirac({1.0}), uniform_grid(0.0, 1.0, 11));
  const auto nu = superpose_nonneg(mu, builtin_field("linear"));
  ASSERT_EQ(nu.size(), 1u);
  EXPECT_EQ(nu.members()[0].weight, 1.0);
}

TEST(SuperposeNonneg, TwoExponentialCurves) {
  const VectorField v = builtin_field("linear");
  const auto grid = uniform_grid(0.0, 1.0, 11);
  const auto mu = particle_solve(v, 0.0, SignedMeasure(1, {{{1.0}, 0.5}, {{-0.5}, 0.5}}), grid);
  const auto nu = superpose_nonneg(mu, v);
  ASSERT_EQ(nu.size(), 2u);
  for (const auto& m : nu.members()) {
    EXPECT_EQ(m.weight, 0.5);
    const double x0 = m.curve.at_node(0.0)[0];
    for (double t : grid) EXPECT_NEAR(m.curve.at_node(t)[0], x0 * std::exp(t), 1e-6);
    EXPECT_LT(ode_residual(m.curve, v), 1e-8);
  }
  EXPECT_LE(marginal_defect(nu, mu, TestFamily(1)), 2 * std::ldexp(1.0, -64) + 1e-9);
}

TEST(SuperposeNonneg, RejectsSignedOrUnnormalizedCurves) {
  const VectorField v = builtin_field("linear");
  const auto grid = uniform_grid(0.0, 1.0, 5);
  const auto signed_mu = particle_solve(v, 0.0, SignedMeasure(1, {{{1.0}, 1.5}, {{-0.5}, -0.5}}), grid);
  EXPECT_THROW(superpose_nonneg(signed_mu, v), PreconditionError);
  const auto heavy = particle_solve(v, 0.0, SignedMeasure::dirac({1.0}, 2.0), grid);
  EXPECT_THROW(superpose_nonneg(heavy, v), PreconditionError);
}

TEST(SuperposeNonneg, GridSampledBlob) {
  const VectorField v = builtin_field("rotation_divfree");
  const auto g = DensityGrid::from_function(Box::cube(2, 1.0), 16, 16, [](double x, double y) {
    const double r2 = (x - 0.3) * (x - 0.3) + y * y;
    return r2 < 0.16 ? 1.0 - r2 / 0.16 : 0.0;
  });
  const SignedMeasure atoms = g.to_atoms().scaled(1.0 / g.mass());
  const auto mu = particle_solve(v, 0.0, atoms, uniform_grid(0.0, 1.0, 9));
  const auto nu = superpose_nonneg(mu, v);
  EXPECT_EQ(nu.size(), atoms.atoms().size());
  EXPECT_NEAR(nu.total_weight(), 1.0, 1e-12);
  EXPECT_LE(marginal_defect(nu, mu, TestFamily(2)), 2 * std::ldexp(1.0, -64) + 1e-8);
}

TEST(MarginalDefect, PerturbedWeightIsDetected) {
  const VectorField v = builtin_field("linear");
  const auto grid = uniform_grid(0.0, 1.0, 11);
  const auto mu = particle_solve(v, 0.0, SignedMeasure(1, {{{0.5}, 0.5}, {{-0.25}, 0.5}}), grid);
  const TestFamily f(1);
  const auto nu = superpose_nonneg(mu, v);
  const auto bad = nu.with_weight(0, 0.5 + 1e-2);
  // the marginals differ by 1e-2 times a single Dirac
  double gap = 0.0;
  for (double t : grid)
    gap = std::max(gap, weak_distance(SignedMeasure::dirac(nu.members()[0].curve.at_node(t)), SignedMeasure(1), f).value);
  EXPECT_GE(marginal_defect(bad, mu, f), 1e-2 * gap * (1 - 1e-9));
  EXPECT_GT(gap, 0.1);
}

TEST(MarginalDefect, EmptyEnsembleAgainstZeroCurve) {
  const auto grid = uniform_grid(0.0, 1.0, 3);
  const MeasureCurve zero(grid, std::vector<SignedMeasure>(3, SignedMeasure(1)));
  EXPECT_EQ(marginal_defect(CurveEnsemble(1), zero, TestFamily(1)), 0.0);
}

TEST(ExtendedCurve, Validation) {
  EXPECT_THROW(ExtendedCurve({0.0, 0.5}, {0.0, 0.5}, {{0.0}, {0.0}}, 1.0), PreconditionError);  // s must reach 1
  EXPECT_THROW(ExtendedCurve({0.0, 1.0}, {0.0, 1.5}, {{0.0}, {0.0}}, 1.0), PreconditionError);  // t beyond T
  EXPECT_THROW(ExtendedCurve({0.0, 0.5, 1.0}, {0.0, 0.5, 0.0}, {{0.0}, {1.0}, {0.0}}, 1.0), PreconditionError);
  EXPECT_NO_THROW(ExtendedCurve({0.0, 0.5, 1.0}, {0.0, 0.5, 0.0}, {{0.0}, {1.0}, {2.0}}, 1.0));
}

TEST(Reparam, AffineEmbeddingOfASolution) {
  const VectorField v = builtin_field("log_lipschitz");
  const double tol = 1e-9;
  IntegrateOptions opt;
  opt.tol = tol;
  const Curve gamma = integrate(v, 0.0, Point{0.3, -0.2}, std::vector<double>{1.0}, opt);
  const ExtendedCurve xi = embed_solution(gamma, 1.0);
  EXPECT_LT(reparam_residual(xi, v).residual, tol);
  EXPECT_LT(flow_consistency(xi, v), 1e-4);
  ASSERT_TRUE(reparam_residual(xi, v).certificate_integral);
}

TEST(Reparam, MonotoneTimeChange) {
  const VectorField v = builtin_field("linear");
  const double tol = 1e-9;
  IntegrateOptions opt;
  opt.tol = tol;
  const Curve gamma = integrate(v, 0.0, Point{0.7}, std::vector<double>{1.0}, opt);
  // sigma' lies in [1/2, 3/2], so the inverse time change is 2-Lipschitz
  const ExtendedCurve xi = embed_solution(gamma, 1.0, [](double t) { return 0.5 * (t + t * t); });
  EXPECT_LT(reparam_residual(xi, v).residual, 2.01 * tol);
  EXPECT_LT(flow_consistency(xi, v), 1e-4);
}

TEST(Reparam, TimeWandersWhereTheFieldVanishes) {
  std::vector<double> s = uniform_grid(0.0, 1.0, 51), t;
  for (std::size_t k = 0; k < s.size(); ++k) t.push_back(0.5 + 0.3 * std::sin(2.7 * static_cast<double>(k)));
  const ExtendedCurve xi(s, t, std::vector<Point>(s.size(), Point{0.0}), 1.0);
  EXPECT_EQ(reparam_residual(xi, builtin_field("sqrt_branch")).residual, 0.0);
}

TEST(Reparam, DetectsAJumpInSpace) {
  const ExtendedCurve xi({0.0, 0.5, 1.0}, {0.2, 0.2, 0.6}, {{0.0}, {0.5}, {0.5}}, 1.0);
  EXPECT_GE(reparam_residual(xi, builtin_field("zero")).residual, 0.5);
}

TEST(SignedBranch, SqrtHairpin) {
  const VectorField v = builtin_field("sqrt_branch");
  const auto br = signed_superpose_branch(v, 0.0, upper_branch(), lower_branch());
  ASSERT_EQ(br.nu.size(), 1u);
  const ExtendedCurve& xi = br.nu.members()[0].curve;
  EXPECT_EQ(br.nu.members()[0].weight, 1.0);
  EXPECT_LT(reparam_residual(xi, v).residual, 1e-4);
  // the Holder certificate is not Osgood but still integrates along the hairpin
  const auto cert = reparam_residual(xi, v).certificate_integral;
  ASSERT_TRUE(cert);
  EXPECT_TRUE(std::isfinite(*cert));
  // arc length of (t, t^2) plus that of (t, 0) on [0, 1]
  const double arc = 1.0 + 0.5 * std::sqrt(5.0) + 0.25 * std::asinh(2.0);
  EXPECT_NEAR(xi.lipschitz_bound(), arc, 1e-5);
  EXPECT_EQ(xi.node(0), (Point{1.0, 0.0}));
  EXPECT_EQ(xi.node(xi.size() - 1), (Point{1.0, 1.0}));
}

TEST(SignedBranch, BoundaryIdentityHoldsExactly) {
  const auto br = signed_superpose_branch(builtin_field("sqrt_branch"), 0.0, upper_branch(), lower_branch());
  EXPECT_TRUE(br.boundary.holds);
  const SignedMeasure expected = SignedMeasure::dirac({1.0, 1.0}) - SignedMeasure::dirac({1.0, 0.0});
  EXPECT_TRUE(atoms_equal(br.boundary.lhs, expected));
  EXPECT_TRUE(atoms_equal(br.boundary.rhs, expected));
  EXPECT_TRUE(atoms_equal(br.nu.ev1() - br.nu.ev0(), expected));
}

TEST(SignedBranch, LaterBranchTime) {
  const double S = 0.25;
  const Curve x = Curve::from_function(kGrid, [S](double t) { return Point{t > S ? (t - S) * (t - S) : 0.0}; });
  const auto br = signed_superpose_branch(builtin_field("sqrt_branch"), S, x, lower_branch());
  EXPECT_TRUE(br.boundary.holds);
  EXPECT_EQ(br.nu.members()[0].curve.node(0), (Point{1.0, 0.0}));
  double tmin = 1.0;
  for (double t : br.nu.members()[0].curve.t()) tmin = std::min(tmin, t);
  EXPECT_EQ(tmin, S);
}

TEST(SignedBranch, DegenerateBranchIsEmpty) {
  const auto br = signed_superpose_branch(builtin_field("sqrt_branch"), 0.0, lower_branch(), lower_branch());
  EXPECT_EQ(br.nu.size(), 0u);
  EXPECT_TRUE(br.boundary.lhs.empty());
  EXPECT_TRUE(br.boundary.rhs.empty());
  EXPECT_TRUE(br.boundary.holds);
}

TEST(SignedBranch, UniqueFlowHasNoBranch) {
  const VectorField v = builtin_field("linear");
  const Curve a = Curve::from_function(kGrid, [](double t) { return Point{std::exp(t)}; });
  const Curve b = Curve::from_function(kGrid, [](double t) { return Point{2 * std::exp(t)}; });
  EXPECT_THROW(signed_superpose_branch(v, 0.0, a, b), PreconditionError);
}

TEST(SignedBranch, RejectsNonSolutions) {
  const Curve bogus = Curve::from_function(kGrid, [](double t) { return Point{t}; });
  EXPECT_THROW(signed_superpose_branch(builtin_field("sqrt_branch"), 0.0, bogus, lower_branch()), PreconditionError);
}

TEST(SignedBranch, PositivePartJumps) {
  const auto mu = branch_measure_curve(0.0, upper_branch(), lower_branch(), kGrid);
  const auto pos = positive_part_curve(mu);
  EXPECT_TRUE(pos[0].empty());
  const TestFamily f(1);
  EXPECT_GT(weak_distance(pos[0], pos[1], f).value, 0.2);
  EXPECT_LT(weak_distance(mu[0], mu[1], f).upper(), 1e-4);
}

TEST(Endpoint, SignedLogLipschitzParticleSolution) {
  const VectorField v = builtin_field("log_lipschitz");
  const SignedMeasure mu0 = SignedMeasure::dirac({0.3, 0.2}) - SignedMeasure::dirac({-0.4, 0.1});
  const auto mu = particle_solve(v, 0.0, mu0, uniform_grid(0.0, 1.0, 11));
  const auto r = endpoint_transport_check(v, mu, TestFamily(2));
  EXPECT_LT(r.endpoint_defect, 1e-4);
  EXPECT_LT(r.worst_pair_defect, 1e-4);
  EXPECT_EQ(r.pairs, 55u);
}

TEST(Endpoint, ZeroFieldConstantCurve) {
  const auto grid = uniform_grid(0.0, 1.0, 5);
  const MeasureCurve mu(grid, std::vector<SignedMeasure>(5, SignedMeasure::dirac({0.1}) - SignedMeasure::dirac({0.6})));
  EXPECT_LE(endpoint_transport_check(builtin_field("zero"), mu, TestFamily(1)).worst_pair_defect,
            4 * std::ldexp(1.0, -64));
}

TEST(Endpoint, BranchNeedsTheCertificate) {
  const VectorField v = builtin_field("sqrt_branch");
  const auto grid = uniform_grid(0.0, 1.0, 21);
  const Curve x = Curve::from_function(grid, [](double t) { return Point{t * t}; });
  const Curve y = Curve::from_function(grid, [](double) { return Point{0.0}; });
  const auto mu = branch_measure_curve(0.0, x, y, grid);
  const TestFamily f(1);
  EXPECT_THROW(endpoint_transport_check(v, mu, f), PreconditionError);
  const auto r = endpoint_transport_check(v, mu, f, CertificatePolicy::assume);
  const auto expected = weak_distance(mu[grid.size() - 1], SignedMeasure(1), f);
  EXPECT_NEAR(r.endpoint_defect, expected.upper(), 1e-12);
  EXPECT_GT(r.endpoint_defect, 0.1);
}
