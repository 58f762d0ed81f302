#include "ctlab/fields/norms.hpp"

#include <algorithm>
#include <cmath>

#include "ctlab/errors.hpp"
#include "ctlab/quadrature.hpp"

namespace ctlab {

namespace {

struct SupSource {
  const VectorField& v;
  std::optional<std::vector<Point>> sample;

  double at(double t) const {
    if (!sample) return (*v.sup_norm())(t);
    Point out(v.dim());
    double m = 0.0;
    for (const auto& x : *sample) {
      v.eval(t, x, out);
      m = std::max(m, norm(out));
    }
    return m;
  }
};

SupSource make_source(const VectorField& v, const NormOptions& opt) {
  if (opt.box) {
    if (opt.box->dim() != v.dim()) throw PreconditionError("c_norm: box dimension mismatch");
    return {v, box_sample(*opt.box, opt.box_points)};
  }
  if (v.sup_norm()) return {v, std::nullopt};
  if (v.sampling_box()) return {v, box_sample(*v.sampling_box(), opt.box_points)};
  throw PreconditionError("c_norm: field '" + v.name() + "' has neither a sup norm nor a sampling box");
}

}  // namespace

double sup_norm_at(const VectorField& v, double t, const NormOptions& opt) {
  return make_source(v, opt).at(t);
}

NormEstimate c_norm(const VectorField& v, const NormOptions& opt) {
  const auto src = make_source(v, opt);
  const double a = opt.t0.value_or(0.0);
  const double b = opt.t1.value_or(v.horizon());
  if (b < a) throw PreconditionError("c_norm: empty time interval");
  if (b == a) return {0.0, 0.0, src.sample.has_value()};
  std::size_t n = std::max<std::size_t>(2, opt.time_intervals);
  if (n % 2) ++n;
  const auto grid = uniform_grid(a, b, n + 1);
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = src.at(grid[i]);
  const double fine = trapezoid(grid, vals);
  std::vector<double> g2, v2;
  for (std::size_t i = 0; i < grid.size(); i += 2) {
    g2.push_back(grid[i]);
    v2.push_back(vals[i]);
  }
  const double coarse = trapezoid(g2, v2);
  return {fine, std::abs(fine - coarse), src.sample.has_value()};
}

}  // namespace ctlab
