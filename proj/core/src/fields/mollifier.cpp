#include "ctlab/fields/mollifier.hpp"

#include <cmath>
#include <vector>

#include "ctlab/errors.hpp"
#include "ctlab/quadrature.hpp"

namespace ctlab {

double bump_profile(double s) {
  const double a = 1.0 - s * s;
  if (a <= 0.0) return 0.0;
  return std::exp(-1.0 / a);
}

double bump_profile_derivative(double s) {
  const double a = 1.0 - s * s;
  if (a <= 0.0) return 0.0;
  return -2.0 * s / (a * a) * std::exp(-1.0 / a);
}

double bump_integral() {
  static const double z = integrate_adaptive(bump_profile, -1.0, 1.0, 1e-12).value;
  return z;
}

MollifierKernel::MollifierKernel(std::size_t nodes_per_axis)
    : nodes_(nodes_per_axis), norm_(bump_integral()) {
  if (nodes_ < 3) throw PreconditionError("mollifier kernel: need at least 3 nodes per axis");
}

double MollifierKernel::operator()(std::span<const double> z) const {
  double g = 1.0;
  for (double c : z) g *= profile(c);
  return g;
}

double MollifierKernel::lipschitz_constant(std::size_t dim) const {
  return 1.01 * static_cast<double>(dim) * 2.0 * profile(0.0);
}

VectorField mollify(const VectorField& v, unsigned n, const MollifierKernel& g) {
  if (n < 1) throw PreconditionError("mollify: n must be at least 1");
  const std::size_t d = v.dim();
  const double nn = static_cast<double>(n);
  const double h = 2.0 / (nn * static_cast<double>(g.nodes_per_axis()));  // lattice spacing in y
  const double radius = 1.0 / nn;

  auto eval = [v, g, d, nn, h, radius](double t, std::span<const double> x, std::span<double> out) {
    // per-axis lattice indices and 1D weights of nodes inside (x - 1/n, x + 1/n)
    thread_local std::vector<std::vector<double>> ys, ws;
    ys.assign(d, {});
    ws.assign(d, {});
    for (std::size_t k = 0; k < d; ++k) {
      const long lo = static_cast<long>(std::floor((x[k] - radius) / h)) + 1;
      const long hi = static_cast<long>(std::ceil((x[k] + radius) / h)) - 1;
      for (long i = lo; i <= hi; ++i) {
        const double y = static_cast<double>(i) * h;
        const double w = g.profile(nn * (x[k] - y));
        if (w > 0.0) {
          ys[k].push_back(y);
          ws[k].push_back(w);
        }
      }
    }
    std::fill(out.begin(), out.end(), 0.0);
    thread_local Point y, val;
    y.resize(d);
    val.resize(d);
    double wsum = 0.0;
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t k = 0; k < d; ++k)
      if (ys[k].empty()) {
        // x sits where no lattice node is inside the support: cannot happen for h < 2/n
        throw QuadratureError("mollify: empty quadrature stencil", 1.0);
      }
    while (true) {
      double w = 1.0;
      for (std::size_t k = 0; k < d; ++k) {
        y[k] = ys[k][idx[k]];
        w *= ws[k][idx[k]];
      }
      v.eval(t, y, val);
      for (std::size_t k = 0; k < d; ++k) out[k] += w * val[k];
      wsum += w;
      std::size_t k = 0;
      while (k < d && ++idx[k] == ys[k].size()) idx[k++] = 0;
      if (k == d) break;
    }
    for (double& c : out) c /= wsum;
  };

  VectorField w("mollified(" + v.name() + ",n=" + std::to_string(n) + ")", d, v.horizon(), eval);
  if (v.sup_norm()) {
    auto sup = *v.sup_norm();
    w.with_sup_norm(sup);  // averaging never increases the sup norm
    const double lg = g.lipschitz_constant(d);
    w.with_certificate({[sup, nn, lg](double t) { return nn * lg * sup(t); }, Modulus::linear()});
  }
  if (v.sampling_box()) w.with_sampling_box(*v.sampling_box());
  return w;
}

}  // namespace ctlab
