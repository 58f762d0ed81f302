#include "ctlab/flow/flow_map.hpp"

#include <algorithm>

#include "ctlab/errors.hpp"
#include "ctlab/quadrature.hpp"

namespace ctlab {

FlowMapSample flow_map(const VectorField& v, double s, double t, const std::vector<Point>& seeds,
                       const IntegrateOptions& opt) {
  FlowMapSample out{s, t, seeds, {}, Provenance{to_string(opt.scheme), opt.tol, 0}};
  out.images.reserve(seeds.size());
  if (s == t) {
    out.images = seeds;
    out.provenance.scheme = "identity";
    return out;
  }
  const double target[] = {t};
  for (const auto& x : seeds) {
    const Curve c = integrate(v, s, x, target, opt);
    out.images.push_back(c.at_node(t));
    out.provenance.steps += c.provenance().steps;
  }
  return out;
}

double markov_defect(const VectorField& v, double t0, double t1, double t2,
                     const std::vector<Point>& seeds, const IntegrateOptions& opt) {
  const auto first = flow_map(v, t0, t1, seeds, opt);
  const auto composed = flow_map(v, t1, t2, first.images, opt);
  const auto direct = flow_map(v, t0, t2, seeds, opt);
  double worst = 0.0;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    worst = std::max(worst, distance(composed.images[i], direct.images[i]));
  return worst;
}

double inverse_defect(const VectorField& v, double s, double t, const std::vector<Point>& seeds,
                      const IntegrateOptions& opt) {
  const auto there = flow_map(v, s, t, seeds, opt);
  const auto back = flow_map(v, t, s, there.images, opt);
  double worst = 0.0;
  for (std::size_t i = 0; i < seeds.size(); ++i) worst = std::max(worst, distance(back.images[i], seeds[i]));
  return worst;
}

std::vector<Point> lattice_seeds(const Box& box, std::size_t per_axis) {
  if (per_axis < 2) throw PreconditionError("lattice_seeds: need at least two points per axis");
  const std::size_t d = box.dim();
  std::vector<std::vector<double>> axes;
  for (std::size_t k = 0; k < d; ++k) axes.push_back(uniform_grid(box.lo[k], box.hi[k], per_axis));
  std::vector<Point> out;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    Point p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = axes[k][idx[k]];
    out.push_back(std::move(p));
    std::size_t k = 0;
    while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == d) break;
  }
  return out;
}

}  // namespace ctlab
