#include "ctlab/superposition/extended_curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ctlab/errors.hpp"

namespace ctlab {

ExtendedCurve::ExtendedCurve(std::vector<double> s, std::vector<double> t, std::vector<Point> x, double horizon)
    : s_(std::move(s)), t_(std::move(t)), x_(std::move(x)), horizon_(horizon), lipschitz_(0.0) {
  const std::size_t n = s_.size();
  if (n < 2 || t_.size() != n || x_.size() != n)
    throw PreconditionError("ExtendedCurve: need at least two nodes with matching sizes");
  if (s_.front() != 0.0 || s_.back() != 1.0) throw PreconditionError("ExtendedCurve: parameter must span [0, 1]");
  const std::size_t d = x_.front().size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && !(s_[k] > s_[k - 1])) throw PreconditionError("ExtendedCurve: parameter grid must increase");
    if (!(t_[k] >= 0.0 && t_[k] <= horizon_)) throw PreconditionError("ExtendedCurve: t(s) outside [0, T]");
    if (x_[k].size() != d || !all_finite(x_[k])) throw PreconditionError("ExtendedCurve: bad spatial value");
  }
  // one-to-one on nodes: sort by t, compare within the coincidence window
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t_[a] < t_[b]; });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n && t_[order[j]] - t_[order[i]] <= kCoincidence; ++j) {
      double gap = 0.0;
      for (std::size_t c = 0; c < d; ++c) gap = std::max(gap, std::abs(x_[order[i]][c] - x_[order[j]][c]));
      if (gap <= kCoincidence)
        throw PreconditionError("ExtendedCurve: nodes " + std::to_string(std::min(order[i], order[j])) + " and " +
                                std::to_string(std::max(order[i], order[j])) + " coincide");
    }
  for (std::size_t k = 1; k < n; ++k) {
    double sq = (t_[k] - t_[k - 1]) * (t_[k] - t_[k - 1]);
    for (std::size_t c = 0; c < d; ++c) sq += (x_[k][c] - x_[k - 1][c]) * (x_[k][c] - x_[k - 1][c]);
    lipschitz_ = std::max(lipschitz_, std::sqrt(sq) / (s_[k] - s_[k - 1]));
  }
}

Point ExtendedCurve::node(std::size_t k) const {
  Point p;
  p.reserve(dim() + 1);
  p.push_back(t_[k]);
  p.insert(p.end(), x_[k].begin(), x_[k].end());
  return p;
}

ReparamReport reparam_residual(const ExtendedCurve& xi, const VectorField& v) {
  if (xi.dim() != v.dim()) throw PreconditionError("reparam_residual: dimension mismatch");
  const std::size_t d = xi.dim();
  const auto& s = xi.s();
  const auto& t = xi.t();
  const auto& x = xi.x();
  Point va(d), vb(d), mid(d), vm(d), diff(d);
  ReparamReport rep;
  const auto& cert = v.certificate();
  if (cert) rep.certificate_integral = 0.0;
  v.eval(t[0], x[0], va);
  for (std::size_t k = 1; k < xi.size(); ++k) {
    v.eval(t[k], x[k], vb);
    double defect;
    if (t[k] == t[k - 1]) {
      defect = distance(x[k], x[k - 1]);
    } else {
      defect = interval_defect(v, t[k - 1], x[k - 1], va, t[k], x[k], vb, mid, vm, diff);
    }
    rep.residual = std::max(rep.residual, defect / (s[k] - s[k - 1]));
    if (cert) *rep.certificate_integral += cert->C(0.5 * (t[k] + t[k - 1])) * std::abs(t[k] - t[k - 1]);
    std::swap(va, vb);
  }
  return rep;
}

ExtendedCurve embed_solution(const Curve& gamma, double horizon, const std::function<double(double)>& sigma) {
  const double a = gamma.t_begin(), b = gamma.t_end();
  std::vector<double> s(gamma.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    const double tk = gamma.times()[k];
    s[k] = sigma ? sigma(tk) : (tk - a) / (b - a);
  }
  if (std::abs(s.front()) > 1e-15 || std::abs(s.back() - 1.0) > 1e-15)
    throw PreconditionError("embed_solution: time change must map the curve's span onto [0, 1]");
  s.front() = 0.0;
  s.back() = 1.0;
  return ExtendedCurve(std::move(s), gamma.times(), gamma.points(), horizon);
}

double flow_consistency(const ExtendedCurve& xi, const VectorField& v, const IntegrateOptions& opt) {
  std::vector<double> targets = xi.t();
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  const double t0 = xi.t().front();
  const Curve flow = integrate(v, t0, xi.x().front(), targets, opt);
  double worst = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) worst = std::max(worst, distance(xi.x()[k], flow.at_node(xi.t()[k])));
  return worst;
}

ExtendedEnsemble::ExtendedEnsemble(std::size_t dim, std::vector<WeightedExtendedCurve> members)
    : dim_(dim), members_(std::move(members)) {
  for (const auto& m : members_) {
    if (!(m.weight >= 0.0) || !std::isfinite(m.weight))
      throw PreconditionError("ExtendedEnsemble: weights must be nonnegative and finite");
    if (m.curve.dim() != dim_) throw PreconditionError("ExtendedEnsemble: curve dimension mismatch");
  }
}

SignedMeasure ExtendedEnsemble::ev0() const {
  std::vector<Atom> atoms;
  for (const auto& m : members_) atoms.push_back({m.curve.node(0), m.weight});
  return SignedMeasure(dim_ + 1, std::move(atoms));
}

SignedMeasure ExtendedEnsemble::ev1() const {
  std::vector<Atom> atoms;
  for (const auto& m : members_) atoms.push_back({m.curve.node(m.curve.size() - 1), m.weight});
  return SignedMeasure(dim_ + 1, std::move(atoms));
}

}  // namespace ctlab
