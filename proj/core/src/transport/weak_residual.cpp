#include "ctlab/transport/weak_residual.hpp"

#include <cmath>

#include "ctlab/errors.hpp"
#include "ctlab/fields/mollifier.hpp"

namespace ctlab {

TestFunction TestFunction::from_bump(const TestBump& b) {
  return {[b](std::span<const double> x) { return b.value(x); },
          [b](std::span<const double> x, std::span<double> g) { b.gradient(x, g); }};
}

double TimeWindow::value(double t) const {
  if (t <= a || t >= b) return 0.0;
  return bump_profile((2.0 * t - a - b) / (b - a));
}

double TimeWindow::derivative(double t) const {
  if (t <= a || t >= b) return 0.0;
  return bump_profile_derivative((2.0 * t - a - b) / (b - a)) * 2.0 / (b - a);
}

std::vector<TimeWindow> canonical_windows(double t0, double t1) {
  if (!(t1 > t0)) throw PreconditionError("canonical_windows: empty interval");
  const double h = t1 - t0;
  return {{t0, t1}, {t0, t0 + 0.5 * h}, {t0 + 0.5 * h, t1}, {t0 + 0.25 * h, t0 + 0.75 * h}};
}

namespace {

// integrand samples at the nodes: (<u, mu_t>, <du(V_t), mu_t>)
struct Pairings {
  std::vector<double> value;
  std::vector<double> flux;
};

Pairings pairings(const MeasureCurve& mu, const VectorField& v, const TestFunction& u) {
  const std::size_t d = mu.dim();
  Pairings p{std::vector<double>(mu.size()), std::vector<double>(mu.size())};
  Point g(d), vel(d);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double t = mu.times()[i];
    double sv = 0.0, sf = 0.0;
    for (const auto& a : mu[i].atoms()) {
      sv += a.w * u.value(a.x);
      u.gradient(a.x, g);
      if (norm(g) == 0.0) continue;
      v.eval(t, a.x, vel);
      sf += a.w * dot(g, vel);
    }
    p.value[i] = sv;
    p.flux[i] = sf;
  }
  return p;
}

double residual_from(const MeasureCurve& mu, const Pairings& p, const TimeWindow& f) {
  const auto& ts = mu.times();
  double prev = f.derivative(ts[0]) * p.value[0] + f.value(ts[0]) * p.flux[0];
  double s = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double cur = f.derivative(ts[i]) * p.value[i] + f.value(ts[i]) * p.flux[i];
    s += 0.5 * (ts[i] - ts[i - 1]) * (prev + cur);
    prev = cur;
  }
  return std::abs(s);
}

}  // namespace

double weak_residual(const MeasureCurve& mu, const VectorField& v, const TestFunction& u,
                     const TimeWindow& f) {
  if (mu.dim() != v.dim()) throw PreconditionError("weak_residual: dimension mismatch");
  return residual_from(mu, pairings(mu, v, u), f);
}

WeakResidualReport weak_residual_sweep(const MeasureCurve& mu, const VectorField& v,
                                       const TestFamily& family, std::size_t bumps,
                                       const std::vector<TimeWindow>& windows) {
  if (mu.dim() != v.dim() || family.dim() != v.dim())
    throw PreconditionError("weak_residual_sweep: dimension mismatch");
  if (bumps > family.depth()) throw PreconditionError("weak_residual_sweep: family too shallow");
  WeakResidualReport rep{0.0, 0, 0, bumps, windows.size()};
  for (std::size_t n = 1; n <= bumps; ++n) {
    const auto p = pairings(mu, v, TestFunction::from_bump(family[n]));
    for (std::size_t w = 0; w < windows.size(); ++w) {
      const double r = residual_from(mu, p, windows[w]);
      if (r > rep.worst || rep.worst_bump == 0) {
        rep.worst = r;
        rep.worst_bump = n;
        rep.worst_window = w;
      }
    }
  }
  return rep;
}

}  // namespace ctlab
