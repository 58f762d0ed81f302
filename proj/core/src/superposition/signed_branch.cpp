#include "ctlab/superposition/signed_branch.hpp"

#include <algorithm>
#include <cmath>

#include "ctlab/errors.hpp"

namespace ctlab {

namespace {

SignedMeasure at_time(double tau, const SignedMeasure& mu) {
  std::vector<Atom> atoms;
  for (const auto& a : mu.atoms()) {
    Point p{tau};
    p.insert(p.end(), a.x.begin(), a.x.end());
    atoms.push_back({std::move(p), a.w});
  }
  return SignedMeasure(mu.dim() + 1, std::move(atoms));
}

SignedMeasure branch_value(double t, double S, const Curve& x, const Curve& y) {
  if (t < S) return SignedMeasure(x.dim());
  return (SignedMeasure::dirac(x.at_node(t)) - SignedMeasure::dirac(y.at_node(t))).consolidated();
}

bool same_curve(const Curve& a, const Curve& b) {
  if (a.times() != b.times()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (std::abs(a.points()[k][c] - b.points()[k][c]) > SignedMeasure::kCoincidence) return false;
  return true;
}

}  // namespace

bool atoms_equal(const SignedMeasure& a, const SignedMeasure& b) {
  if (a.dim() != b.dim()) return false;
  auto sorted = [](const SignedMeasure& m) {
    auto atoms = m.consolidated().atoms();
    std::sort(atoms.begin(), atoms.end(), [](const Atom& p, const Atom& q) {
      return p.x != q.x ? p.x < q.x : p.w < q.w;
    });
    return atoms;
  };
  const auto pa = sorted(a), pb = sorted(b);
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (pa[i].x != pb[i].x || pa[i].w != pb[i].w) return false;
  return true;
}

SignedBranch signed_superpose_branch(const VectorField& v, double S, const Curve& x, const Curve& y,
                                     const BranchOptions& opt) {
  if (x.dim() != v.dim() || y.dim() != v.dim()) throw PreconditionError("signed_superpose_branch: dimension mismatch");
  const double T = x.t_end();
  if (y.t_end() != T) throw PreconditionError("signed_superpose_branch: curves must end at the same time");
  if (!(S < T)) throw PreconditionError("signed_superpose_branch: branch time must precede the end time");
  const Curve xs = x.restricted(S, T);
  const Curve ys = y.restricted(S, T);
  const double rx = ode_residual(xs, v), ry = ode_residual(ys, v);
  if (rx > opt.residual_tol || ry > opt.residual_tol)
    throw PreconditionError("signed_superpose_branch: supplied curves are not solutions (ode residuals " +
                            std::to_string(rx) + ", " + std::to_string(ry) + ")");
  const double gap = distance(xs.points().front(), ys.points().front());
  if (gap > opt.meet_tol)
    throw PreconditionError("signed_superpose_branch: curves do not meet at the branch time (gap " +
                            std::to_string(gap) + ")");

  SignedBranch out{S, T, ExtendedEnsemble(v.dim()), {SignedMeasure(v.dim() + 1), SignedMeasure(v.dim() + 1), false}};

  // lhs = delta_T (x) mu_T - delta_0 (x) mu_0 with mu_0 the branch value at time 0
  const SignedMeasure mu_T = branch_value(T, S, xs, ys);
  const SignedMeasure mu_0 = S > 0.0 ? SignedMeasure(v.dim()) : branch_value(S, S, xs, ys);
  out.boundary.lhs = (at_time(T, mu_T) - at_time(0.0, mu_0)).consolidated();

  if (!same_curve(xs, ys)) {
    std::vector<double> ts;
    std::vector<Point> ps;
    for (std::size_t k = ys.size(); k-- > 1;) {
      ts.push_back(ys.times()[k]);
      ps.push_back(ys.points()[k]);
    }
    for (std::size_t k = 0; k < xs.size(); ++k) {
      ts.push_back(xs.times()[k]);
      ps.push_back(xs.points()[k]);
    }
    std::vector<double> s(ts.size(), 0.0);
    for (std::size_t k = 1; k < ts.size(); ++k) {
      double sq = (ts[k] - ts[k - 1]) * (ts[k] - ts[k - 1]);
      for (std::size_t c = 0; c < v.dim(); ++c) sq += (ps[k][c] - ps[k - 1][c]) * (ps[k][c] - ps[k - 1][c]);
      s[k] = s[k - 1] + std::sqrt(sq);
    }
    const double length = s.back();
    for (double& sk : s) sk /= length;
    s.back() = 1.0;
    std::vector<WeightedExtendedCurve> members;
    members.push_back({1.0, ExtendedCurve(std::move(s), std::move(ts), std::move(ps), T)});
    out.nu = ExtendedEnsemble(v.dim(), std::move(members));
  }
  out.boundary.rhs = (out.nu.ev1() - out.nu.ev0()).consolidated();
  out.boundary.holds = atoms_equal(out.boundary.lhs, out.boundary.rhs);
  return out;
}

MeasureCurve branch_measure_curve(double S, const Curve& x, const Curve& y, const std::vector<double>& grid) {
  std::vector<SignedMeasure> ms;
  ms.reserve(grid.size());
  for (double t : grid) ms.push_back(branch_value(t, S, x, y));
  return MeasureCurve(grid, std::move(ms), "branch");
}

MeasureCurve positive_part_curve(const MeasureCurve& mu) {
  std::vector<SignedMeasure> ms;
  ms.reserve(mu.size());
  for (const auto& m : mu.measures()) ms.push_back(m.jordan().first);
  return MeasureCurve(mu.times(), std::move(ms), mu.provenance() + ":positive_part");
}

}  // namespace ctlab
