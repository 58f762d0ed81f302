#include "ctlab/flow/curve.hpp"

#include <algorithm>
#include <cmath>

#include "ctlab/errors.hpp"

namespace ctlab {

Curve::Curve(std::vector<double> times, std::vector<Point> points, Provenance prov)
    : times_(std::move(times)), points_(std::move(points)), prov_(std::move(prov)) {
  if (times_.size() != points_.size()) throw PreconditionError("curve: grid and point counts differ");
  if (times_.size() < 2) throw PreconditionError("curve: need at least two nodes");
  const std::size_t d = points_.front().size();
  if (d == 0) throw PreconditionError("curve: zero-dimensional points");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (i > 0 && !(times_[i] > times_[i - 1]))
      throw PreconditionError("curve: time grid must be strictly increasing");
    if (points_[i].size() != d) throw PreconditionError("curve: inconsistent point dimension");
    if (!all_finite(points_[i]) || !std::isfinite(times_[i]))
      throw PreconditionError("curve: non-finite value");
  }
}

std::optional<std::size_t> Curve::node_index(double t) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it == times_.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - times_.begin());
}

const Point& Curve::at_node(double t) const {
  auto i = node_index(t);
  if (!i) throw PreconditionError("curve: time " + std::to_string(t) + " is not a grid node");
  return points_[*i];
}

Point Curve::hermite(double t, const VectorField& v) const {
  if (t < times_.front() || t > times_.back())
    throw PreconditionError("curve: hermite evaluation outside the grid");
  if (auto i = node_index(t)) return points_[*i];
  const std::size_t hi =
      static_cast<std::size_t>(std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
  const std::size_t lo = hi - 1;
  const double h = times_[hi] - times_[lo];
  const double u = (t - times_[lo]) / h;
  const Point ma = v(times_[lo], points_[lo]);
  const Point mb = v(times_[hi], points_[hi]);
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  const double h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u);
  const double h11 = u * u * (u - 1);
  Point out(dim());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = h00 * points_[lo][k] + h10 * h * ma[k] + h01 * points_[hi][k] + h11 * h * mb[k];
  return out;
}

Curve Curve::restricted(double a, double b) const {
  auto ia = node_index(a);
  auto ib = node_index(b);
  if (!ia || !ib || *ib <= *ia) throw PreconditionError("curve: restriction bounds must be increasing nodes");
  return Curve(std::vector<double>(times_.begin() + *ia, times_.begin() + *ib + 1),
               std::vector<Point>(points_.begin() + *ia, points_.begin() + *ib + 1), prov_);
}

double interval_defect(const VectorField& v, double ta, std::span<const double> xa,
                       std::span<const double> va, double tb, std::span<const double> xb,
                       std::span<const double> vb, std::span<double> mid, std::span<double> vm,
                       std::span<double> diff) {
  const double h = tb - ta;
  const std::size_t d = xa.size();
  for (std::size_t k = 0; k < d; ++k) mid[k] = 0.5 * (xa[k] + xb[k]) + 0.125 * h * (va[k] - vb[k]);
  v.eval(ta + 0.5 * h, mid, vm);
  for (std::size_t k = 0; k < d; ++k)
    diff[k] = (xb[k] - xa[k]) - h / 6.0 * (va[k] + 4.0 * vm[k] + vb[k]);
  return norm(diff);
}

double ode_residual(const Curve& gamma, const VectorField& v) {
  const std::size_t d = gamma.dim();
  const auto& ts = gamma.times();
  const auto& xs = gamma.points();
  Point acc(d, 0.0), va(d), vb(d), mid(d), vm(d), diff(d);
  v.eval(ts[0], xs[0], va);
  double worst = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    v.eval(ts[i], xs[i], vb);
    interval_defect(v, ts[i - 1], xs[i - 1], va, ts[i], xs[i], vb, mid, vm, diff);
    for (std::size_t k = 0; k < d; ++k) acc[k] += diff[k];
    worst = std::max(worst, norm(acc));
    std::swap(va, vb);
  }
  return worst;
}

}  // namespace ctlab
