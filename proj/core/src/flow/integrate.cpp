#include "ctlab/flow/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "ctlab/errors.hpp"

namespace ctlab {

const char* to_string(Scheme s) { return s == Scheme::euler ? "euler" : "adaptive_rk"; }

namespace {

struct Node {
  double t;
  Point x;
};

void check_finite(std::span<const double> v, double t) {
  if (!all_finite(v))
    throw IntegrationError("integrate: non-finite field value at t = " + std::to_string(t));
}

// Marches forward from (t0, x0) through the increasing stop times; appends
// accepted nodes (excluding the start) to out. Returns the step count.
std::size_t march(const VectorField& v, double t0, std::span<const double> x0,
                  const std::vector<double>& stops, double rate_budget, const IntegrateOptions& opt,
                  std::vector<Node>& out) {
  const std::size_t d = x0.size();
  Point x(x0.begin(), x0.end()), xn(d), k1(d), k2(d), k3(d), k4(d), tmp(d), vn(d);
  Point mid(d), vm(d), diff(d);
  double t = t0;
  const double span = stops.back() - t0;
  double h = span / 64.0;
  std::size_t steps = 0;
  v.eval(t, x, k1);
  check_finite(k1, t);

  for (double stop : stops) {
    while (t < stop) {
      // stretch a step that would leave a sliver below 1% of h before the stop
      const bool last = 1.01 * h >= stop - t;
      const double ht = last ? stop - t : h;
      const double tn = last ? stop : t + ht;
      if (opt.scheme == Scheme::adaptive_rk) {
        for (std::size_t k = 0; k < d; ++k) tmp[k] = x[k] + 0.5 * ht * k1[k];
        v.eval(t + 0.5 * ht, tmp, k2);
        for (std::size_t k = 0; k < d; ++k) tmp[k] = x[k] + 0.5 * ht * k2[k];
        v.eval(t + 0.5 * ht, tmp, k3);
        for (std::size_t k = 0; k < d; ++k) tmp[k] = x[k] + ht * k3[k];
        v.eval(t + ht, tmp, k4);
        for (std::size_t k = 0; k < d; ++k)
          xn[k] = x[k] + ht / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
      } else {
        for (std::size_t k = 0; k < d; ++k) xn[k] = x[k] + ht * k1[k];
      }
      if (!all_finite(xn)) throw IntegrationError("integrate: non-finite state at t = " + std::to_string(t));
      v.eval(tn, xn, vn);
      check_finite(vn, tn);
      const double defect = interval_defect(v, t, x, k1, tn, xn, vn, mid, vm, diff);
      check_finite(vm, t + 0.5 * ht);
      const double budget = rate_budget * ht;
      if (++steps > opt.max_steps) throw IntegrationError("integrate: step budget exceeded");
      if (defect <= budget) {
        t = tn;
        x.swap(xn);
        k1.swap(vn);
        out.push_back({t, x});
        if (defect < budget / 32.0 && !last) h *= 2.0;
      } else {
        h = 0.5 * ht;
        if (h <= 1e-15 * std::max(1.0, std::abs(t)))
          throw IntegrationError("integrate: step size underflow at t = " + std::to_string(t));
      }
    }
  }
  return steps;
}

}  // namespace

Curve integrate(const VectorField& v, double s, std::span<const double> x,
                std::span<const double> targets, const IntegrateOptions& opt) {
  if (!(opt.tol > 0.0)) throw PreconditionError("integrate: tol must be positive");
  if (x.size() != v.dim()) throw PreconditionError("integrate: point dimension mismatch");
  if (!all_finite(x)) throw PreconditionError("integrate: non-finite initial point");
  std::vector<double> fwd, bwd;
  for (double t : targets) {
    if (!std::isfinite(t)) throw PreconditionError("integrate: non-finite target time");
    if (t > s) fwd.push_back(t);
    else if (t < s) bwd.push_back(t);
  }
  std::sort(fwd.begin(), fwd.end());
  fwd.erase(std::unique(fwd.begin(), fwd.end()), fwd.end());
  std::sort(bwd.begin(), bwd.end(), std::greater<>());
  bwd.erase(std::unique(bwd.begin(), bwd.end()), bwd.end());
  if (fwd.empty() && bwd.empty()) throw PreconditionError("integrate: need a target different from s");

  const double lo = bwd.empty() ? s : bwd.back();
  const double hi = fwd.empty() ? s : fwd.back();
  const double rate = opt.tol / (hi - lo);
  std::size_t steps = 0;

  std::vector<Node> back_nodes;
  if (!bwd.empty()) {
    const VectorField rev = v.time_reversed(s);
    std::vector<double> taus;
    for (double t : bwd) taus.push_back(s - t);
    steps += march(rev, 0.0, x, taus, rate, opt, back_nodes);
    // map tau back to t; stop times keep their exact values
    std::size_t next = 0;
    for (auto& n : back_nodes) {
      if (next < taus.size() && n.t == taus[next]) {
        n.t = bwd[next++];
      } else {
        n.t = s - n.t;
      }
    }
  }
  std::vector<Node> fwd_nodes;
  if (!fwd.empty()) steps += march(v, s, x, fwd, rate, opt, fwd_nodes);

  std::vector<double> times;
  std::vector<Point> pts;
  times.reserve(back_nodes.size() + fwd_nodes.size() + 1);
  for (auto it = back_nodes.rbegin(); it != back_nodes.rend(); ++it) {
    times.push_back(it->t);
    pts.push_back(std::move(it->x));
  }
  times.push_back(s);
  pts.emplace_back(x.begin(), x.end());
  for (auto& n : fwd_nodes) {
    times.push_back(n.t);
    pts.push_back(std::move(n.x));
  }
  // drop internal nodes that rounding pushed out of order next to a target
  std::vector<double> sorted_targets(targets.begin(), targets.end());
  std::sort(sorted_targets.begin(), sorted_targets.end());
  std::vector<double> t2;
  std::vector<Point> p2;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!t2.empty() && !(times[i] > t2.back())) {
      if (std::binary_search(sorted_targets.begin(), sorted_targets.end(), times[i])) {
        t2.back() = times[i];
        p2.back() = std::move(pts[i]);
      }
      continue;
    }
    t2.push_back(times[i]);
    p2.push_back(std::move(pts[i]));
  }
  return Curve(std::move(t2), std::move(p2), Provenance{to_string(opt.scheme), opt.tol, steps});
}

}  // namespace ctlab
